#pragma once

// Finite generalized Dirichlet series f(s) = sum a_nu nu^{-(s + shift)} over a
// Beurling system, with coefficients keyed by exponent vectors.  Norms use
// the lift to power series in one variable per prime, so H^2 is the l^2 norm
// of the coefficients and ||f||_4 = ||f^2||_2^{1/2}.
//
// Coefficients are double-precision complex numbers; the results of this
// module are numerical, the cross-checks against zeta_euler carry its bounds.

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"

#include "beurling/systems.hpp"

namespace beurling {

struct ExponentLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

using Coefficients = std::map<ExponentVector, std::complex<double>, ExponentLess>;

struct DirichletSeries {
  std::shared_ptr<const PrimeSystem> system;
  Coefficients coeffs;
  double shift = 0.0;

  static DirichletSeries one(std::shared_ptr<const PrimeSystem> system);
  std::complex<double> coeff(const ExponentVector& e) const;
  /// sum a_nu nu^{-(s + shift)}.
  std::complex<double> evaluate(std::complex<double> s) const;
};

/// Unimodular values chi_n, one per prime; chi(nu) = prod chi_n^{a_n}.
struct Character {
  std::vector<std::complex<double>> values;

  static Character trivial(std::size_t primes);
  /// chi_n = e^{2 pi i theta_n}, theta_n uniform from the seeded generator.
  static Character random(std::size_t primes, std::uint64_t seed);
  std::complex<double> operator()(const ExponentVector& e) const;
  Character conj() const;
};

double h2_norm(const DirichletSeries& f);

struct Product {
  DirichletSeries series;
  /// l^1 and l^2 mass of coefficients at keys nu > X (dropped).
  double discarded_l1 = 0.0;
  double discarded_l2 = 0.0;
  std::size_t discarded_terms = 0;
};

/// Dirichlet convolution keeping keys with nu <= X.
Product multiply(const DirichletSeries& f, const DirichletSeries& g, double X);

struct NormResult {
  double value = 0.0;
  bool truncated = false;
  double discarded = 0.0;
};

/// p = 2: h2_norm; p = 4: ||f * f||_2^{1/2} with keys up to X.
NormResult even_p_norm(const DirichletSeries& f, int p, double X);

DirichletSeries twist(const DirichletSeries& f, const Character& chi);

/// Coefficients nu^{-a} for every snapshot entry (truncated zeta(s + a)).
DirichletSeries zeta_series(const IntegerSnapshot& snapshot, double a);
/// Coefficients mu(nu) nu^{-a} (truncated 1/zeta(s + a)).
DirichletSeries mobius_series(const IntegerSnapshot& snapshot, double a);

struct OuterStep {
  double X = 0.0;
  /// ||1 - p_X f_X||_2.
  double e = 0.0;
  std::size_t terms = 0;
  double discarded = 0.0;
  /// Only nu = 1 is present, so e = 0 says nothing.
  bool degenerate = false;
};

/// e_X for p_X = truncated zeta(s + 1/2 + eps), f_X = truncated 1/zeta(s + 1/2 + eps).
std::vector<OuterStep> outer_approx_test(const PrimeSystem& system, double epsilon,
                                         const std::vector<double>& limits,
                                         const std::optional<Character>& chi = std::nullopt);

struct HelsonEval {
  double sigma = 0.0;
  double t = 0.0;
  double X = 0.0;
  std::complex<double> partial;
  /// 1 / zeta_q(s + 1/2 + eps) via the certified Euler product.
  CertComplex euler_inverse;
  /// Bound on |f(s) - f_X(s)| from the integer tail.
  double tail_bound = 0.0;
  bool agrees = false;
};

struct HelsonReport {
  double epsilon = 0.0;
  /// (X, sum_{nu <= X} mu(nu) / nu) = f_X(1/2 - eps).
  std::vector<std::pair<double, double>> mobius_sums;
  /// (X, prod_{q <= X} (1 - 1/q)).
  std::vector<std::pair<double, double>> euler_products;
  std::vector<OuterStep> outer;
  std::vector<HelsonEval> evaluations;
  bool products_decreasing = true;
  bool outer_trend_down = false;
};

/// `sigmas` are real parts of s, evaluated at t = 0, each with sigma > 1/2 - eps.
HelsonReport helson_demo(const PrimeSystem& system, double epsilon, const std::vector<double>& limits,
                         const std::vector<double>& sigmas);

nlohmann::json to_json(const OuterStep& s);
nlohmann::json to_json(const HelsonReport& r);

}  // namespace beurling
