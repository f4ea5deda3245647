#pragma once

// Beurling prime systems and their integer systems.
//
// Every prime is defined by an exact decimal literal; certified values at any
// precision are derived from that literal.  Integers are exponent vectors over
// the system, ordered by certified value.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "beurling/numerics.hpp"

namespace beurling {

enum class Provenance { Classical, Explicit, Perturbed, Sampled };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct Origin {
  Provenance kind = Provenance::Explicit;
  std::uint64_t seed = 0;
  std::string generator;  // empty unless sampled
};

class PrimeSystem {
 public:
  PrimeSystem() = default;

  /// Validates that the literals are strictly increasing and all > 1.
  static PrimeSystem from_decimals(std::vector<std::string> decimals, Origin origin = {},
                                   const PrecisionPolicy& policy = {});

  std::size_t size() const { return decimals_.size(); }
  bool empty() const { return decimals_.empty(); }
  const std::vector<std::string>& decimals() const { return decimals_; }
  const std::string& decimal(std::size_t i) const { return decimals_.at(i); }
  const Origin& origin() const { return origin_; }
  mpfr_prec_t precision() const { return precision_; }

  /// Certified value at the base precision.
  const CertReal& value(std::size_t i) const { return values_.at(i); }
  CertReal value(std::size_t i, mpfr_prec_t prec) const;
  Refinable refinable(std::size_t i) const;
  double approx(std::size_t i) const { return approx_.at(i); }
  double log_approx(std::size_t i) const { return log_approx_.at(i); }

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);
  /// Label of prime i: the stored label, or "q<i+1>".
  std::string label(std::size_t i) const;

  PrimeSystem prefix(std::size_t n) const;
  /// The system with the listed indices removed.
  PrimeSystem without(const std::vector<std::size_t>& indices) const;

  /// pi_q(x): number of primes <= x, ties inclusive.
  std::size_t count_le(const Refinable& x, const PrecisionPolicy& policy = {}) const;

 private:
  std::vector<std::string> decimals_;
  std::vector<CertReal> values_;
  std::vector<double> approx_;
  std::vector<double> log_approx_;
  std::vector<std::string> labels_;
  Origin origin_;
  mpfr_prec_t precision_ = kDefaultPrecision;
};

/// Ordinary primes <= limit.
PrimeSystem classical_primes(double limit);

/// Primes file: one decimal per line, '#' starts a comment, blank lines ignored.
PrimeSystem parse_primes_text(const std::string& text, Origin origin = {});
PrimeSystem read_primes_file(const std::string& path, Origin origin = {});

struct Factor {
  std::uint32_t prime;     // 0-based index into the system
  std::uint32_t exponent;  // >= 1
  bool operator==(const Factor&) const = default;
};

/// Sparse exponent map sorted by prime index.  Empty means 1.
using ExponentVector = std::vector<Factor>;

std::string to_string(const ExponentVector& e);
/// Componentwise sum (the exponent vector of a product).
ExponentVector multiply(const ExponentVector& a, const ExponentVector& b);
std::size_t omega(const ExponentVector& e);  // number of prime factors with multiplicity
bool is_squarefree(const ExponentVector& e);

/// Certified value of prod q_i^{a_i} at precision prec.
CertReal integer_value(const PrimeSystem& system, const ExponentVector& e, mpfr_prec_t prec);
double integer_log_approx(const PrimeSystem& system, const ExponentVector& e);

struct ExponentHash {
  std::size_t operator()(const ExponentVector& e) const;
};

struct BeurlingInteger {
  ExponentVector exponents;
  CertReal value;
  double log_approx = 0.0;
};

class IntegerSnapshot {
 public:
  IntegerSnapshot(PrimeSystem system, double bound, std::vector<BeurlingInteger> entries,
                  std::vector<CertReal> gaps, PrecisionPolicy policy);

  const PrimeSystem& system() const { return system_; }
  double bound() const { return bound_; }
  const PrecisionPolicy& policy() const { return policy_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<BeurlingInteger>& entries() const { return entries_; }
  const BeurlingInteger& entry(std::size_t i) const { return entries_.at(i); }
  /// gaps()[n] = entry(n + 1) - entry(n).
  const std::vector<CertReal>& gaps() const { return gaps_; }

  std::optional<std::size_t> find(const ExponentVector& e) const;
  Refinable refinable(std::size_t i) const;

 private:
  PrimeSystem system_;
  double bound_;
  std::vector<BeurlingInteger> entries_;
  std::vector<CertReal> gaps_;
  PrecisionPolicy policy_;
  std::unordered_map<ExponentVector, std::size_t, ExponentHash> index_;
};

/// All products <= bound in increasing certified order, starting with 1.
/// Throws OrderingUndecided when two products cannot be separated.
IntegerSnapshot enumerate_integers(const PrimeSystem& system, double bound,
                                   const PrecisionPolicy& policy = {});

struct Counts {
  std::size_t integers = 0;  // N_q(x)
  std::size_t primes = 0;    // pi_q(x)
};

/// Requires x <= snapshot bound.
Counts count_functions(const IntegerSnapshot& snapshot, const Refinable& x);
Counts count_functions(const IntegerSnapshot& snapshot, double x);

struct MinGap {
  CertReal value;
  std::size_t index = 0;  // gap between entries index and index + 1
};

/// min over n of d_n * nu_{n+1}^{c2}.
MinGap min_gap_exponent(const IntegerSnapshot& snapshot, double c2);

// Persistence.  Values are never read back: loading re-derives every
// certified value from the prime literals and re-enumerates to the bound.

nlohmann::json system_to_json(const PrimeSystem& system);
PrimeSystem system_from_json(const nlohmann::json& j);
nlohmann::json snapshot_to_json(const IntegerSnapshot& snapshot);
IntegerSnapshot snapshot_from_json(const nlohmann::json& j);

}  // namespace beurling
