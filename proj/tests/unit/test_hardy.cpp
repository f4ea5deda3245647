#include <cmath>
#include <complex>
#include <map>

#include "doctest.h"

#include "beurling/hardy.hpp"
#include "beurling/random.hpp"
#include "beurling/zeta.hpp"
#include "oracles/sieve.hpp"

using namespace beurling;

namespace {

std::shared_ptr<const PrimeSystem> shared(std::vector<std::string> d) {
  return std::make_shared<const PrimeSystem>(PrimeSystem::from_decimals(std::move(d)));
}

DirichletSeries series(std::shared_ptr<const PrimeSystem> s,
                       std::vector<std::pair<ExponentVector, std::complex<double>>> c) {
  DirichletSeries f;
  f.system = std::move(s);
  for (auto& [e, a] : c) f.coeffs[e] = a;
  return f;
}

const ExponentVector one{};
const ExponentVector q1{{0, 1}};
const ExponentVector q1sq{{0, 2}};

}  // namespace

TEST_CASE("H2 norms and twists") {
  const auto s = shared({"2", "3"});
  const DirichletSeries f = series(s, {{one, 1.0}, {q1, -0.5}});
  CHECK(h2_norm(f) == doctest::Approx(std::sqrt(5.0) / 2));
  CHECK(h2_norm(DirichletSeries{s, {}, 0}) == 0);

  const Character chi = Character::random(2, 9);
  for (const auto& v : chi.values) CHECK(std::abs(v) == doctest::Approx(1));
  const DirichletSeries g = series(s, {{one, 1.0}, {q1, 2.0}, {q1sq, {0, 1}}, {ExponentVector{{1, 1}}, 3.0}});
  CHECK(h2_norm(twist(g, chi)) == doctest::Approx(h2_norm(g)));
  CHECK(even_p_norm(twist(g, chi), 4, 1e6).value == doctest::Approx(even_p_norm(g, 4, 1e6).value));

  const DirichletSeries t = twist(g, Character::trivial(2));
  CHECK(t.coeffs == g.coeffs);
  const Character flip{{-1.0, 1.0}};
  const DirichletSeries h = twist(g, flip);
  CHECK(h.coeff(q1) == std::complex<double>(-2.0));
  CHECK(h.coeff(q1sq) == g.coeff(q1sq));
  const DirichletSeries back = twist(twist(g, chi), chi.conj());
  for (const auto& [e, a] : g.coeffs) CHECK(std::abs(back.coeff(e) - a) < 1e-14);
}

TEST_CASE("products and even norms") {
  const auto s = shared({"2"});
  const DirichletSeries f = series(s, {{one, 1.0}, {q1, 1.0}});
  const Product sq = multiply(f, f, 100);
  CHECK(sq.series.coeff(one) == 1.0);
  CHECK(sq.series.coeff(q1) == 2.0);
  CHECK(sq.series.coeff(q1sq) == 1.0);
  CHECK(sq.discarded_terms == 0);
  CHECK(std::pow(even_p_norm(f, 4, 100).value, 4) == doctest::Approx(6));
  CHECK_FALSE(even_p_norm(f, 4, 100).truncated);
  CHECK(even_p_norm(f, 4, 3).truncated);

  const DirichletSeries unit = DirichletSeries::one(s);
  CHECK(even_p_norm(unit, 2, 10).value == 1);
  CHECK(even_p_norm(unit, 4, 10).value == 1);
  CHECK(multiply(f, unit, 100).series.coeffs == f.coeffs);
  CHECK_THROWS_AS(even_p_norm(f, 3, 10), PreconditionError);

  // zeta truncation times Moebius truncation: delta_1 on nu <= X
  const auto snap = enumerate_integers(classical_primes(100), 100);
  const Product zm = multiply(zeta_series(snap, 0), mobius_series(snap, 0), 100);
  for (const auto& [e, c] : zm.series.coeffs) CHECK(std::abs(c - (e.empty() ? 1.0 : 0.0)) < 1e-12);
  CHECK(zm.discarded_terms > 0);

  // classical f = sum_{n<=10} n^{-s-1}: brute force convolution oracle for ||f||_4
  const auto ten = enumerate_integers(classical_primes(10), 10);
  const DirichletSeries g = zeta_series(ten, 1);
  std::map<int, double> conv;
  for (int a = 1; a <= 10; ++a)
    for (int b = 1; b <= 10; ++b) conv[a * b] += 1.0 / (a * b);
  double l2 = 0;
  for (const auto& [n, c] : conv) l2 += c * c;
  const NormResult n4 = even_p_norm(g, 4, 100);
  CHECK_FALSE(n4.truncated);
  CHECK(n4.value == doctest::Approx(std::pow(l2, 0.25)).epsilon(1e-12));
  // Parseval on the lift: ||f||_4^4 = ||f^2||_2^2
  CHECK(std::pow(n4.value, 4) == doctest::Approx(std::pow(h2_norm(multiply(g, g, 100).series), 2)));
}

TEST_CASE("outer approximation") {
  const PrimeSystem two_three = PrimeSystem::from_decimals({"2", "3"});
  const auto degenerate = outer_approx_test(two_three, 0.25, {1.5});
  CHECK(degenerate[0].degenerate);
  CHECK(degenerate[0].e == 0);

  const auto steps = outer_approx_test(two_three, 0.25, {10, 100});
  // symbolic oracle over exponent pairs (a, b) with 2^a 3^b <= X
  std::map<std::pair<int, int>, double> c;
  std::vector<std::pair<int, int>> keys;
  for (int a = 0; (1 << a) <= 100; ++a)
    for (int b = 0; (1 << a) * std::pow(3, b) <= 100; ++b) keys.emplace_back(a, b);
  for (auto [a1, b1] : keys)
    for (auto [a2, b2] : keys) {
      if (a2 > 1 || b2 > 1) continue;  // Moebius support
      const double mu = ((a2 + b2) % 2 ? -1.0 : 1.0);
      const double w = std::pow(std::pow(2.0, a1 + a2) * std::pow(3.0, b1 + b2), -0.75);
      c[{a1 + a2, b1 + b2}] += mu * w;
    }
  c[{0, 0}] -= 1;
  double e2 = 0;
  for (const auto& [k, v] : c) e2 += v * v;
  CHECK(steps[1].e == doctest::Approx(std::sqrt(e2)).epsilon(1e-10));
  CHECK(steps[1].e < steps[0].e);
  CHECK(steps[1].e >= 0);

  const auto twisted = outer_approx_test(two_three, 0.25, {10, 100}, Character::random(2, 3));
  for (std::size_t i = 0; i < 2; ++i) CHECK(twisted[i].e == doctest::Approx(steps[i].e).epsilon(1e-10));
  CHECK_THROWS_AS(outer_approx_test(two_three, 0.5, {10}), PreconditionError);
}

TEST_CASE("Helson demonstration") {
  const PrimeSystem s = sample_primes(42, 100);
  const HelsonReport r = helson_demo(s, 0.25, {10, 100, 1000}, {1.0, 0.5});
  CHECK(r.products_decreasing);
  for (std::size_t i = 1; i < r.euler_products.size(); ++i)
    CHECK(r.euler_products[i].second < r.euler_products[i - 1].second);
  CHECK(r.outer_trend_down);
  REQUIRE(r.evaluations.size() == 2);
  CHECK(r.evaluations[0].agrees);
  // independent Euler product oracle in long double
  long double inv = 1;
  for (std::size_t i = 0; i < s.size(); ++i) inv *= 1 - std::pow(std::stold(s.decimal(i)), -1.75L);
  CHECK(std::fabs(r.evaluations[0].partial.real() - static_cast<double>(inv)) <=
        r.evaluations[0].tail_bound + 1e-12);
  // Moebius support: coefficients vanish off squarefree integers
  const auto snap = enumerate_integers(s, 1000);
  const DirichletSeries f = mobius_series(snap, 0.75);
  for (const BeurlingInteger& b : snap.entries())
    if (!is_squarefree(b.exponents)) CHECK(f.coeff(b.exponents) == 0.0);
  CHECK_THROWS_AS(helson_demo(s, 0.25, {10}, {0.1}), PreconditionError);
}
