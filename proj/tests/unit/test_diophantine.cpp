#include <cmath>
#include <random>

#include "doctest.h"

#include "beurling/diophantine.hpp"
#include "oracles/contfrac.hpp"

using namespace beurling;

namespace {

PrimeSystem sys(std::vector<std::string> d) { return PrimeSystem::from_decimals(std::move(d)); }

const IntegerSnapshot& classical() {
  static const IntegerSnapshot s = enumerate_integers(classical_primes(10000), 10000);
  return s;
}

}  // namespace

TEST_CASE("target expressions") {
  CHECK(parse_target("3/2")(128).contains(1.5));
  CHECK(parse_target("sqrt(2)")(128).mid() == doctest::Approx(std::sqrt(2.0)));
  CHECK(parse_target("pi")(128).mid() == doctest::Approx(M_PI));
  CHECK(parse_target("e")(128).mid() == doctest::Approx(M_E));
  CHECK(parse_target("sqrt(5)/2")(128).mid() == doctest::Approx(std::sqrt(5.0) / 2));
  CHECK(parse_target("0.125")(128).is_exact());
  CHECK_THROWS_AS(parse_target("abc"), PreconditionError);
  CHECK_THROWS_AS(parse_target("1/0"), PreconditionError);
}

TEST_CASE("exact hits") {
  const auto snap = enumerate_integers(sys({"2", "3"}), 100);
  const auto r = best_approximations(parse_target("3/2"), snap, 3);
  REQUIRE(!r.empty());
  CHECK(r[0].exact);
  CHECK(r[0].error.is_exact());
  CHECK(std::isinf(r[0].exponent));
  const auto& top = best_approximations(parse_target("3/2"), snap, snap.size());
  bool found = false;
  for (const ApproxRecord& a : top)
    if (to_string(a.numerator.exponents) == "q2" && to_string(a.denominator.exponents) == "q1")
      found = a.exact;
  CHECK(found);

  // self test nu_5 / nu_3 on a sampled-looking system
  const auto s2 = enumerate_integers(sys({"2.3", "3.7", "5.1"}), 200);
  const std::string num = s2.entry(4).value.to_decimal(30), den = s2.entry(2).value.to_decimal(30);
  const Refinable x = [&](mpfr_prec_t p) {
    return integer_value(s2.system(), s2.entry(4).exponents, p) /
           integer_value(s2.system(), s2.entry(2).exponents, p);
  };
  const auto hit = best_approximations(x, s2, 1);
  CHECK(hit[0].exact);
  CHECK_THROWS_AS(mu_estimate(x, s2, 1), PreconditionError);
}

TEST_CASE("powers of two against sqrt 2") {
  const auto snap = enumerate_integers(sys({"2"}), std::ldexp(1.0, 110));
  const auto all = best_approximations(parse_target("sqrt(2)"), snap, snap.size());
  // exhaustive scan over powers: every denominator has best error sqrt 2 - 1
  for (const ApproxRecord& r : all) {
    CHECK(r.error.mid() == doctest::Approx(std::sqrt(2.0) - 1));
    if (r.runner_up) CHECK(compare(r.error, *r.runner_up) == Ordering::Less);
  }
  const MuEstimate mu = mu_estimate(parse_target("sqrt(2)"), snap);
  CHECK(mu.estimate < 0.05);
  CHECK(mu.estimate >= 0);
  CHECK(mu.large_denominators >= 50);
}

TEST_CASE("classical system against continued fractions") {
  const IntegerSnapshot& snap = classical();
  const MuEstimate pi = mu_estimate(parse_target("pi"), snap);
  const double cf = oracle::cf_exponent(3.14159265358979323846264338327950288L, 100, 10000);
  CHECK(pi.estimate == doctest::Approx(cf).epsilon(1e-6));
  CHECK(to_string(pi.argmax.denominator.exponents) == "q30");  // 113 is the 30th prime

  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unit(1.0, 10.0);
  int high = 0;
  for (int i = 0; i < 20; ++i) {
    const double x = unit(gen);
    const MuEstimate m = mu_estimate(constant(x), snap);
    CHECK(std::fabs(m.estimate - oracle::cf_exponent(x, 100, 10000)) <= 0.5);
    high += m.estimate > 2 * 1.0 + 0.5;
  }
  CHECK(high <= 4);

  // No convergent of 8.1428653318 has a denominator in [100, 10^4]; multiples of 57/7 do.
  const double gap = 8.142865331800042;
  CHECK(mu_estimate(constant(gap), snap).estimate ==
        doctest::Approx(oracle::cf_exponent(gap, 100, 10000)).epsilon(1e-9));

  // errors are certified below the runner-up for each denominator
  for (const ApproxRecord& r : best_approximations(parse_target("e"), snap, 50)) {
    REQUIRE(r.runner_up);
    CHECK(compare(r.error, *r.runner_up) == Ordering::Less);
  }
  CHECK_THROWS_AS(mu_estimate(parse_target("pi"), enumerate_integers(classical_primes(50), 50)),
                  PreconditionError);
}
