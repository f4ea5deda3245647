#pragma once

// Random prime systems with one prime per li-box: q_n = li_inv(n + u_n),
// so li(q_n) lies in [n, n + 1].  Event checks, exponential sum deviations,
// removal of exceptional primes and density fits on top of such samples.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "beurling/construct.hpp"
#include "beurling/systems.hpp"

namespace beurling {

/// 53-bit uniforms (g() >> 11) * 2^-53 from std::mt19937_64 seeded with the seed.
inline constexpr const char* kGeneratorName = "mt19937_64/53bit";

double uniform53(std::mt19937_64& gen);
std::vector<double> uniform_draws(std::uint64_t seed, std::size_t count);

/// Grid point x_n = li_inv(n) as a refinable quantity.
Refinable grid_point(double n);
/// x_1 < ... < x_{n_max} at the base precision.
std::vector<CertReal> sample_grid(std::size_t n_max, const PrecisionPolicy& policy = {});

/// q_n = li_inv(n + u_n) with u_n from the seeded generator, stored as
/// 40-digit decimals rounded up.  li(q_n) in [n, n + 1] is certified.
PrimeSystem sample_primes(std::uint64_t seed, std::size_t n_max,
                          const PrecisionPolicy& policy = {});
/// Same with caller-supplied draws in [0, 1).
PrimeSystem sample_primes_from(const std::vector<double>& draws, Origin origin,
                               const PrecisionPolicy& policy = {});

/// Grid index of prime i: k when the label is "q<k>", else i + 1.
std::size_t grid_index(const PrimeSystem& system, std::size_t i);

struct EventRecord {
  char kind = 'A';  // 'A': exponential sum event, 'B': Diophantine event
  std::size_t k = 0;
  /// m for A events, j for B events.
  double parameter = 0.0;
  bool triggered = false;
  CertReal statistic;
  CertReal threshold;
  bool rigorous = true;
  bool undecided = false;
  /// "", "vacuous", "width-underflow", or a witness description.
  std::string note;
  /// B events: total length of the truncated exceptional set.
  double measure = 0.0;
};

/// |sum_{n<=k} q_n^{-im} - int_{x_1}^{x_k} u^{-im} dli(u)| against
/// 8 sqrt(x_k / log x_k) (sqrt(log x_k) + sqrt(log m)).
EventRecord check_A_event(const PrimeSystem& system, std::size_t k, double m,
                          const PrecisionPolicy& policy = {});

/// Is q_k within x_k^{1-(A+1)j} nu^{-(1+A)} mu^{-A} of some (mu/nu)^{1/j},
/// nu and mu integers of q_1..q_{k-1} up to cutoff?  k is 1-based.
EventRecord check_B_event(const PrimeSystem& system, std::size_t k, unsigned j, double A,
                          double cutoff, const PrecisionPolicy& policy = {});

struct SweepConfig {
  std::size_t K = 0;  // 0 selects the system size
  unsigned J = 4;
  std::size_t M = 8;
  double A = 1.0;
  double cutoff = 1e3;
};

struct EventSweep {
  std::vector<EventRecord> events;
  std::size_t vacuous = 0;
  std::size_t underflow = 0;
  std::size_t triggered = 0;
};

EventSweep sweep_events(const PrimeSystem& system, const SweepConfig& config,
                        const PrecisionPolicy& policy = {});

struct Deviation {
  double x = 0.0;
  double t = 0.0;
  CertReal statistic;
  /// statistic / (sqrt(x / log(x+1)) (sqrt(log(x+1)) + sqrt(log(|t|+1)))), upper bound.
  double ratio = 0.0;
  bool rigorous = true;
};

/// |sum_{q_n<=x} q_n^{-it} - int_{x_1}^x u^{-it} dli(u)|.
Deviation exp_sum_deviation(const PrimeSystem& system, double x, double t,
                            const PrecisionPolicy& policy = {});

/// Upper bound on sup_{x <= q_N} |pi_q(x) - li(x)|, attained at the jumps.
double max_pnt_deviation(const PrimeSystem& system);

/// Drops the primes with a triggered B event; labels keep the grid index.
PrimeSystem remove_exceptional(const PrimeSystem& system, const std::vector<EventRecord>& events);

struct PairwiseAudit {
  double A = 0.0;
  /// min over consecutive pairs of (nu_{n+1} - nu_n)(nu_n nu_{n+1})^A.
  CertReal min_weighted;
  std::size_t min_index = 0;
  /// min_weighted >= 1 certified.
  bool valid = false;
};

PairwiseAudit pairwise_gap_audit(const IntegerSnapshot& snapshot, double A);

struct DensityFit {
  double a = 0.0;
  /// (x, N(x) - a x) over a geometric grid.
  std::vector<std::pair<double, double>> residuals;
  /// Slope of log|residual| against log x.
  double residual_exponent = 0.0;
  /// max |residual| exceeds a x / 2 somewhere on the upper half of the grid.
  bool nonlinear = false;
};

DensityFit density_fit(const IntegerSnapshot& snapshot, std::size_t points = 64);

nlohmann::json to_json(const EventRecord& e);
nlohmann::json to_json(const Deviation& d);
nlohmann::json to_json(const PairwiseAudit& a);
nlohmann::json to_json(const DensityFit& f);

}  // namespace beurling
