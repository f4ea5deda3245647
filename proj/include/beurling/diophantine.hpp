#pragma once

// Approximation of a real target by ratios nu_m / nu_n of Beurling integers
// and an empirical irrationality measure mu_q(x).

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "beurling/systems.hpp"

namespace beurling {

/// Target expressions: decimal literal, "a/b", "sqrt(a)", "sqrt(a)/b", "pi", "e".
Refinable parse_target(const std::string& expr);

struct ApproxRecord {
  CertReal target;
  BeurlingInteger numerator;
  BeurlingInteger denominator;
  /// |x - nu_m / nu_n|, exactly 0 for an exact hit.
  CertReal error;
  /// Best error among the other numerators for the same denominator.
  std::optional<CertReal> runner_up;
  /// log(1/error) / log(nu_n); 0 for denominator 1, +inf for an exact hit.
  double exponent = 0.0;
  bool exact = false;
};

/// Best numerator for every denominator of the snapshot, top_k by exponent.
/// An exact hit is a ratio whose error interval still contains 0 at the
/// precision cap.
std::vector<ApproxRecord> best_approximations(const Refinable& x, const IntegerSnapshot& snapshot,
                                              std::size_t top_k);

struct MuEstimate {
  double estimate = 0.0;
  ApproxRecord argmax;
  /// (log nu_n, exponent) for every denominator nu_n > 1.
  std::vector<std::pair<double, double>> scatter;
  std::size_t large_denominators = 0;
};

/// Sup of the exponents over denominators nu_n >= sqrt(X).  Needs at least
/// `min_large` such denominators and no exact hit.
MuEstimate mu_estimate(const Refinable& x, const IntegerSnapshot& snapshot,
                       std::size_t min_large = 50);

nlohmann::json to_json(const ApproxRecord& r);
nlohmann::json to_json(const MuEstimate& m);

}  // namespace beurling
