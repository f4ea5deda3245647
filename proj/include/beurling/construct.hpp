#pragma once

// Deterministic perturbation of a prime system into one with certified
// power-type gaps between consecutive integers.
//
// Exceptional intervals
//   Omega_{m,n,j} = (nu_n/nu_m)^{1/j} +- x0^{1-j} (nu_n nu_m)^{-e}
// are excluded from the admissible window around each target prime, and the
// resulting system is audited by a gap certificate
//   nu_{n+1} - nu_n >= nu_{n+1}^{-6 sigma_inf}.
// All statements are scoped to integers <= cutoff.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "beurling/systems.hpp"

namespace beurling {

class WindowExhausted : public Error {
 public:
  using Error::Error;
};

struct ConstructParams {
  double A = 1.0;
  /// 0 selects (q1 - 1)/2.
  double epsilon = 0.0;
  /// 0 selects 1 + 3 epsilon / 4.
  double x0 = 0.0;
  /// Unset selects sigma_inf_select on the lowest admissible system.
  std::optional<double> sigma_inf;
  double sigma_c_bound = 1.0;
  double cutoff = 1e4;
  /// Grid used by sigma_inf_select: first grid point above max(2, A), then + step.
  double sigma_step = 1.0;
  double sigma_max = 200.0;
  std::uint64_t seed = 0;
  int max_redraws = 1000;
  PrecisionPolicy policy{};
};

struct OmegaInterval {
  CertReal center;
  CertReal halfwidth;
  std::size_t m = 0;  // snapshot index of the denominator
  std::size_t n = 0;  // snapshot index of the numerator
  unsigned j = 1;

  CertReal lo() const { return center - halfwidth; }
  CertReal hi() const { return center + halfwidth; }
};

struct GapCertificate {
  double exponent = 0.0;
  CertReal min_margin;
  std::size_t min_index = 0;
  double verified_range = 0.0;
  /// Consecutive pairs with certified negative margin (at most 20 listed).
  std::vector<std::pair<std::string, std::string>> colliding_pairs;
  bool valid = false;
};

/// Least grid value sigma > max(2, A) with (zeta(sigma) - 1) zeta(sigma/4) <= 1
/// certified, zeta taken over the (finite) system.
double sigma_inf_select(const PrimeSystem& system, const ConstructParams& params);

struct Cover {
  std::vector<OmegaInterval> intervals;
  /// Lebesgue measure of the union intersected with the window (upper bound).
  double measure = 0.0;
  /// Some centre lies within the window's reach of nu = cutoff: larger
  /// integers could contribute.
  bool incomplete = false;
};

/// Every Omega_{m,n,j} with nu_n > nu_m and halfwidth exponent `exponent`
/// meeting [lo, hi].
Cover omega_cover(double lo, double hi, const IntegerSnapshot& snapshot, double exponent,
                  double x0);

struct ExclusionCheck {
  bool ok = true;
  /// min over triples of log|q^j - nu_n/nu_m| + exponent log(nu_n nu_m).
  double min_log_margin = 0.0;
  std::size_t m = 0, n = 0;
  unsigned j = 1;
  std::size_t triples_checked = 0;
};

/// Checks |q^j - nu_n/nu_m| >= (nu_n nu_m)^{-exponent} for all nu_n, nu_m in
/// the snapshot with nu_n > nu_m and all j >= 1.
ExclusionCheck check_exclusion(const std::string& q_decimal, const IntegerSnapshot& snapshot,
                               double exponent, const PrecisionPolicy& policy = {});

struct Admissible {
  std::string decimal;
  std::string path;  // "center", "grid" or "refined"
  std::size_t cover_size = 0;
  double cover_measure = 0.0;
  double window_halfwidth = 0.0;
};

/// A point of the window around x outside every exceptional interval of
/// `current` (exponent 3 sigma_inf), center first, then an outward grid of
/// step halfwidth/8 refined by factors of 8.
Admissible find_admissible(const std::string& x_decimal, const PrimeSystem& current,
                           double sigma_inf, const ConstructParams& params);

/// Window halfwidth min(x^{-sigma_inf/2}, x^{-A}).
double window_halfwidth(double x, double sigma_inf, double A);

struct StepRecord {
  std::string target;
  std::string chosen;
  std::string path;  // center / grid / refined / redraw
  std::size_t cover_size = 0;
  double cover_measure = 0.0;
  double window_width = 0.0;
  double measure_constant = 0.0;  // measure / (x^{-sigma_inf/4} |I_x|)
  double exclusion_min_log_margin = 0.0;
  bool certificate_valid = false;
  int redraws = 0;
};

struct PerturbResult {
  PrimeSystem system;
  GapCertificate certificate;
  double sigma_inf = 0.0;
  double epsilon = 0.0;
  double x0 = 0.0;
  std::vector<StepRecord> steps;
  /// max_n |q~_n - q_n| q_n^{A} (<= 1 required).
  double budget_ratio = 0.0;
};

PerturbResult perturb_system(const PrimeSystem& target, const ConstructParams& params);

/// min over consecutive pairs of (nu_{n+1} - nu_n) - nu_{n+1}^{-exponent}.
GapCertificate verify_gap_certificate(const IntegerSnapshot& snapshot, double exponent);

nlohmann::json to_json(const GapCertificate& c);
nlohmann::json to_json(const PerturbResult& r);

}  // namespace beurling
