#include <cmath>
#include <complex>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

#include "beurling/random.hpp"
#include "beurling/zeta.hpp"
#include "oracles/li_oracle.hpp"
#include "oracles/sieve.hpp"

using namespace beurling;

namespace {

PrimeSystem sys(std::vector<std::string> d) { return PrimeSystem::from_decimals(std::move(d)); }

const PrimeSystem& seed42() {
  static const PrimeSystem s = sample_primes(42, 100);
  return s;
}

// Composite Simpson for int_a^b u^{-it} (1 - 1/u)/log u du.
std::complex<long double> moment_simpson(long double a, long double b, long double t, int n = 200000) {
  auto f = [&](long double u) {
    const long double w = oracle::li_integrand(u);
    return std::polar(w, -t * std::log(u));
  };
  const long double h = (b - a) / n;
  std::complex<long double> s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(a + i * h);
  return s * (h / 3.0L);
}

}  // namespace

TEST_CASE("uniform draws") {
  const auto u = uniform_draws(7, 5);
  std::mt19937_64 g(7);
  for (double v : u) {
    CHECK(v == static_cast<double>(g() >> 11) / 9007199254740992.0);
    CHECK(v >= 0);
    CHECK(v < 1);
  }
  CHECK(uniform_draws(7, 5) == u);
  CHECK(uniform_draws(8, 5) != u);
}

TEST_CASE("li-box sampling") {
  const PrimeSystem& s = seed42();
  REQUIRE(s.size() == 100);
  CHECK(s.origin().kind == Provenance::Sampled);
  CHECK(s.origin().seed == 42);
  CHECK(s.origin().generator == kGeneratorName);
  for (std::size_t i = 0; i < s.size(); i += 9) {
    const long double l = oracle::li_simpson(std::stold(s.decimal(i)));
    CHECK(l >= i + 1 - 1e-9L);
    CHECK(l <= i + 2 + 1e-9L);
  }
  CHECK(max_pnt_deviation(s) <= 2);

  // golden rerun
  std::ifstream golden(BEURLING_TEST_DATA "/sample_seed42_n100.txt");
  REQUIRE(golden);
  std::stringstream text;
  text << golden.rdbuf();
  CHECK(parse_primes_text(text.str()).decimals() == s.decimals());
  CHECK(sample_primes(42, 100).decimals() == s.decimals());

  // degenerate draws land on the grid
  const PrimeSystem g = sample_primes_from(std::vector<double>(6, 0.0), {Provenance::Sampled, 0, "zero"});
  const auto grid = sample_grid(6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::stold(g.decimal(i)) == doctest::Approx(oracle::li_inv_bisect(i + 1)).epsilon(1e-8));
    CHECK(std::fabs(std::stod(g.decimal(i)) - grid[i].mid()) < 1e-12);
  }
  CHECK(seed42().approx(0) >= grid[0].lo_double());
  CHECK(seed42().approx(0) <= grid[1].hi_double());
  CHECK_THROWS_AS(sample_primes_from({}, {}), PreconditionError);
  CHECK_THROWS_AS(sample_primes_from({1.0}, {}), PreconditionError);
}

TEST_CASE("A events") {
  const PrimeSystem& s = seed42();
  const EventRecord one = check_A_event(s, 1, 3);
  CHECK(one.statistic.contains(1.0));
  CHECK_FALSE(one.triggered);
  CHECK(one.threshold.lo_double() >= 8 * std::sqrt(sample_grid(1)[0].lo_double()) - 1e-9);

  const EventRecord e = check_A_event(s, 50, 1);
  CHECK_FALSE(e.triggered);
  CHECK(e.rigorous);
  // direct quadrature and summation oracle
  const auto grid = sample_grid(50);
  std::complex<long double> sum{};
  for (std::size_t i = 0; i < 50; ++i) sum += std::polar(1.0L, -std::log(std::stold(s.decimal(i))));
  const long double stat =
      std::abs(sum - moment_simpson(grid[0].mid(), grid[49].mid(), 1.0L));
  CHECK(e.statistic.mid() == doctest::Approx(static_cast<double>(stat)).epsilon(1e-7));
  CHECK(e.statistic.hi_double() / e.threshold.lo_double() < 1);

  double prev = 0;
  for (double m : {1.0, 2.0, 5.0, 50.0}) {
    const double thr = check_A_event(s, 10, m).threshold.mid();
    CHECK(thr >= prev);
    prev = thr;
  }
  CHECK_THROWS_AS(check_A_event(s, 0, 1), PreconditionError);
  CHECK_THROWS_AS(check_A_event(s, 101, 1), PreconditionError);
}

TEST_CASE("B events") {
  CHECK_FALSE(check_B_event(seed42(), 1, 1, 1, 100).triggered);

  const double x2 = sample_grid(2)[1].mid();
  const double half = 0.5 / (4 * x2);  // x_2^{-1} 1^{-2} 4^{-1} / 2
  std::ostringstream q2;
  q2.precision(30);
  q2 << 4 + half;
  const PrimeSystem adv = sys({"2", q2.str(), "7"});
  const EventRecord hit = check_B_event(adv, 2, 1, 1, 100);
  CHECK(hit.triggered);
  CHECK(hit.note == "nu=1 mu=q1^2");
  CHECK(hit.measure > 0);

  const EventRecord deep = check_B_event(adv, 2, 2000, 1, 100);
  CHECK(deep.note == "width-underflow");
  CHECK_FALSE(deep.triggered);

  // removal: B-triggered primes leave, labels keep grid indices
  EventSweep sw = sweep_events(adv, SweepConfig{0, 2, 1, 1.0, 100});
  CHECK(sw.triggered >= 1);
  const PrimeSystem kept = remove_exceptional(adv, sw.events);
  CHECK(kept.size() == 2);
  CHECK(kept.label(1) == "q3");
  CHECK(grid_index(kept, 1) == 3);
  for (std::size_t k = 1; k <= kept.size(); ++k)
    for (unsigned j = 1; j <= 2; ++j) CHECK_FALSE(check_B_event(kept, k, j, 1, 100).triggered);

  CHECK(remove_exceptional(adv, {}).decimals() == adv.decimals());
}

TEST_CASE("Euler factor after removal") {
  EventRecord e;
  e.kind = 'B';
  e.k = 2;
  e.triggered = true;
  const PrimeSystem full = sys({"2", "3", "5"});
  const PrimeSystem cut = remove_exceptional(full, {e});
  CHECK(cut.decimals() == std::vector<std::string>{"2", "5"});
  const ZetaEval a = zeta_euler(cut, 2, 0, 100);
  const ZetaEval b = zeta_euler(full, 2, 0, 100);
  const double expected = b.value.re.mid() * (1 - 1.0 / 9);
  CHECK(a.value.re.mid() == doctest::Approx(expected).epsilon(1e-14));
  CHECK(a.value.re.mid() == doctest::Approx(4.0 / 3 * 25.0 / 24).epsilon(1e-14));
}

TEST_CASE("exponential sum deviation") {
  const PrimeSystem& s = seed42();
  const auto grid = sample_grid(100);
  const Deviation start = exp_sum_deviation(s, grid[0].hi_double(), 3);
  CHECK(start.statistic.hi_double() < 1e-10);
  for (double x : {10.0, 57.3, 200.0, grid[99].mid()}) {
    const Deviation d = exp_sum_deviation(s, x, 0);
    int count = 0;
    for (std::size_t i = 0; i < s.size(); ++i) count += std::stod(s.decimal(i)) <= x;
    const long double direct = std::fabs(count - oracle::li_simpson(x) + 1);
    CHECK(d.statistic.mid() == doctest::Approx(static_cast<double>(direct)).epsilon(1e-7));
    CHECK(d.statistic.hi_double() <= 2);
  }
  const Deviation d = exp_sum_deviation(s, grid[99].mid(), 7.5);
  CHECK(std::isfinite(d.ratio));
  CHECK(d.rigorous);
  CHECK_THROWS_AS(exp_sum_deviation(s, 1.5, 1), PreconditionError);
}

TEST_CASE("pairwise gap audit") {
  const PairwiseAudit c = pairwise_gap_audit(enumerate_integers(classical_primes(100), 100), 1);
  CHECK(c.valid);
  CHECK(c.min_weighted.contains(2.0));
  const PairwiseAudit two = pairwise_gap_audit(enumerate_integers(sys({"2"}), 100), 2.5);
  CHECK(two.min_index == 0);
  CHECK(two.min_weighted.mid() == doctest::Approx(std::pow(2.0, 2.5)));

  const auto snap = enumerate_integers(seed42(), 500);
  const PairwiseAudit a = pairwise_gap_audit(snap, 1);
  CHECK(a.min_weighted.certainly_positive());
  // brute force over all pairs
  double brute = INFINITY;
  for (std::size_t i = 0; i < snap.size(); ++i)
    for (std::size_t j = i + 1; j < snap.size(); ++j) {
      const double x = snap.entry(i).value.mid(), y = snap.entry(j).value.mid();
      brute = std::min(brute, (y - x) * x * y);
    }
  CHECK(brute == doctest::Approx(a.min_weighted.mid()).epsilon(1e-12));
}

TEST_CASE("density fit") {
  const DensityFit cl = density_fit(enumerate_integers(classical_primes(10000), 10000));
  CHECK(cl.a == doctest::Approx(1).epsilon(1e-3));
  for (const auto& [x, r] : cl.residuals) CHECK(std::fabs(r) <= 2);
  CHECK_FALSE(cl.nonlinear);

  const DensityFit two = density_fit(enumerate_integers(sys({"2"}), std::ldexp(1.0, 120)));
  CHECK(two.nonlinear);

  const DensityFit sampled = density_fit(enumerate_integers(seed42(), 10000));
  CHECK(sampled.a > 0);
  CHECK(std::isfinite(sampled.residual_exponent));
  CHECK_THROWS_AS(density_fit(enumerate_integers(sys({"2"}), 100)), PreconditionError);
}
