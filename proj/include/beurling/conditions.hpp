#pragma once

// Gap conditions on frequency sequences lambda_n = log nu_n.
//
//   BC: lambda_{n+1} - lambda_n >= c1 exp(-c2 lambda_{n+1})
//   LC: lambda_{n+1} - lambda_n >= c exp(-exp(delta lambda_{n+1}))
//   NC: inf_{m > n} log((lambda_m + lambda_n)/(lambda_m - lambda_n)) + (m - n) profile
//
// Indices are 0-based here: lambdas()[0] is the first frequency (0 for nu = 1).

#include <iosfwd>
#include <string>
#include <vector>

#include "beurling/systems.hpp"

namespace beurling {

class FrequencyView {
 public:
  /// Validates strict increase.
  explicit FrequencyView(std::vector<CertReal> lambdas);
  static FrequencyView from_snapshot(const IntegerSnapshot& snapshot);

  std::size_t size() const { return lambdas_.size(); }
  const CertReal& operator[](std::size_t i) const { return lambdas_.at(i); }
  const std::vector<CertReal>& lambdas() const { return lambdas_; }

 private:
  std::vector<CertReal> lambdas_;
};

enum class Condition { BC, LC, NC };
std::string to_string(Condition c);

struct ConditionReport {
  Condition condition = Condition::BC;
  double first = 0.0;   // c1 (BC) or c (LC)
  double second = 0.0;  // c2 (BC) or delta (LC)
  /// margins[n] belongs to the gap between frequencies n and n + 1.
  std::vector<CertReal> margins;
  /// True iff every margin is certified >= 0.
  bool verdict = false;
  /// Margins whose sign could not be certified.
  std::size_t undecided = 0;
  std::size_t worst_index = 0;
};

ConditionReport bc_margins(const FrequencyView& view, double c1, double c2);
ConditionReport lc_margins(const FrequencyView& view, double c, double delta);

struct NcValue {
  CertReal value;
  std::size_t argmin = 0;
  /// The view ended before the early stop fired: value is only an upper bound.
  bool upper_bound_only = false;
};

NcValue nc_profile(const FrequencyView& view, std::size_t n);

/// Columns: n, lambda_n, gap, margin.
void write_margins_csv(std::ostream& out, const FrequencyView& view, const ConditionReport& r);

}  // namespace beurling
