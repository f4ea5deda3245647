#pragma once

// The Beurling zeta function zeta_q(s) = sum nu^{-s} = prod (1 - q^{-s})^{-1}.
//
// Tail bounds come from caller-supplied envelopes.  Without an envelope the
// system is taken as finite: primes beyond the cutoff are exactly the listed
// ones and the integers beyond the snapshot bound are summed through the
// real Euler product.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "beurling/systems.hpp"

namespace beurling {

/// Upper envelope for the prime counting function of an infinite system
/// of which the given system is a prefix.
struct PrimeEnvelope {
  enum class Kind {
    Li,                // pi_q(x) <= li(x) + K
    RosserSchoenfeld,  // pi(x) <= 1.25506 x / log x, x > 1
  };
  Kind kind = Kind::Li;
  double K = 0.0;
};

/// N_q(x) <= a x + b for all x beyond the snapshot bound.
struct DensityEnvelope {
  double a = 1.0;
  double b = 0.0;
};

struct ZetaEval {
  double sigma = 0.0;
  double t = 0.0;
  CertComplex value;
  /// Prime cutoff (Euler product) or integer bound (Dirichlet sum).
  double truncation = 0.0;
  /// Terms actually used.
  std::size_t terms = 0;
  /// Bound on |true - truncated| folded into `value`; +inf when heuristic.
  double tail_bound = 0.0;
  bool rigorous = true;
};

/// prod_{q <= cutoff} (1 - q^{-s})^{-1} with the tail folded into the box.
ZetaEval zeta_euler(const PrimeSystem& system, double sigma, double t, double cutoff,
                    std::optional<PrimeEnvelope> envelope = std::nullopt,
                    mpfr_prec_t prec = kDefaultPrecision);

/// sum_{nu <= X} nu^{-s} over the snapshot, tail folded into the box when
/// a bound is available (sigma > 1 with envelope, or sigma > 0 finite system).
ZetaEval zeta_sum(const IntegerSnapshot& snapshot, double sigma, double t,
                  std::optional<DensityEnvelope> envelope = std::nullopt);

/// log zeta_q(s) = sum_{q <= cutoff} sum_k q^{-ks}/k plus tail disk.
ZetaEval log_zeta(const PrimeSystem& system, double sigma, double t, double cutoff,
                  std::optional<PrimeEnvelope> envelope = std::nullopt,
                  mpfr_prec_t prec = kDefaultPrecision);

/// Z(s) = log zeta_q(s) + log((s - 1)/s), so zeta_q = s e^Z / (s - 1).
/// Throws PreconditionError when |s - 1| or |s| is below pole_tol.
ZetaEval Z_eval(const PrimeSystem& system, double sigma, double t, double cutoff,
                std::optional<PrimeEnvelope> envelope = std::nullopt, double pole_tol = 1e-8,
                mpfr_prec_t prec = kDefaultPrecision);

/// Pi_q(x) = sum_k pi_q(x^{1/k}) / k, exactly.
mpq_class weighted_prime_count(const PrimeSystem& system, double x,
                               const PrecisionPolicy& policy = {});

/// Smallest K with Pi_q(x) - pi_q(x) <= K sqrt(x)/log x over the grid.
double fit_prime_power_excess(const PrimeSystem& system, const std::vector<double>& xs);

/// mu over the snapshot entries: 0 off squarefree, (-1)^{number of factors}.
std::vector<int> mobius_table(const IntegerSnapshot& snapshot);

/// Dirichlet convolution of integer coefficient lists indexed like the
/// snapshot, by divisor enumeration over exponent vectors.
std::vector<long> dirichlet_convolve(const IntegerSnapshot& snapshot, const std::vector<long>& a,
                                     const std::vector<long>& b);

nlohmann::json to_json(const ZetaEval& z);

}  // namespace beurling
