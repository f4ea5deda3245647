#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"

#include "beurling/numerics.hpp"
#include "oracles/li_oracle.hpp"

using namespace beurling;

TEST_CASE("exact inputs give degenerate intervals") {
  CHECK(CertReal::exact(2.5).is_exact());
  CHECK(CertReal::from_int(7).is_exact());
  CHECK(CertReal::from_decimal("0.375").is_exact());
  CHECK_FALSE(CertReal::from_decimal("0.1").is_exact());
  CHECK(CertReal::from_decimal("0.1").contains(CertReal::from_rational(mpq_class(1, 10), 256)));
  CHECK(CertReal::from_decimal("0.1", 256).width() < 1e-70);
  CHECK_THROWS_AS(CertReal::from_decimal("abc"), PreconditionError);
  CHECK_THROWS_AS(CertReal::from_decimal("inf"), PreconditionError);
}

TEST_CASE("interval containment against exact rationals") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 40);
  for (int trial = 0; trial < 200; ++trial) {
    mpq_class a(num(gen), den(gen)), b(num(gen), den(gen)), c(num(gen), den(gen));
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    const CertReal ca = CertReal::from_rational(a, 64);
    const CertReal cb = CertReal::from_rational(b, 64);
    const CertReal cc = CertReal::from_rational(c, 64);
    const mpq_class exact = a * b - c * c + a;
    const CertReal value = ca * cb - cc * cc + ca;
    const CertReal oracle = CertReal::from_rational(exact, 512);
    CHECK(mpfr_lessequal_p(value.lo().get(), oracle.lo().get()));
    CHECK(mpfr_greaterequal_p(value.hi().get(), oracle.hi().get()));
    if (c != 0) {
      const mpq_class q = a / c;
      const CertReal qv = ca / cc;
      const CertReal qo = CertReal::from_rational(q, 512);
      CHECK(mpfr_lessequal_p(qv.lo().get(), qo.lo().get()));
      CHECK(mpfr_greaterequal_p(qv.hi().get(), qo.hi().get()));
    }
  }
}

TEST_CASE("refinement never widens") {
  double last = INFINITY;
  for (mpfr_prec_t p = 64; p <= 1024; p *= 2) {
    const CertReal v = exp(sqrt(CertReal::from_int(2, p))) / log(CertReal::from_int(3, p));
    CHECK(v.width() <= last);
    last = v.width();
  }
  CHECK(last < 1e-250);
}

TEST_CASE("transcendental enclosures") {
  const CertReal two = CertReal::from_int(2);
  CHECK(log(two).contains(std::log(2.0)) == false);  // log 2 is not a double
  CHECK(std::fabs(log(two).mid() - std::log(2.0)) < 1e-16);
  CHECK(cos(CertReal::from_int(0)).contains(1.0));
  CHECK(std::fabs(sin(CertReal::exact(0.5)).mid() - std::sin(0.5)) < 1e-16);
  CHECK(pow_int(CertReal::exact(-2), 3).contains(-8.0));
  CHECK(abs(CertReal::exact(-3)).contains(3.0));
  CHECK(sqr(CertReal::hull(CertReal::exact(-1), CertReal::exact(2))).contains(0.0));
}

TEST_CASE("certified comparison") {
  CHECK(cmp_certified(constant(2), constant(3)) == Ordering::Less);
  CHECK(cmp_certified(constant(3), constant(2)) == Ordering::Greater);
  const Refinable x = [](mpfr_prec_t p) { return log(CertReal::from_int(3, p)); };
  CHECK(cmp_certified(x, x, {128, 512}) == Ordering::Undecided);
  const Refinable r2 = [](mpfr_prec_t p) {
    const CertReal h = sqrt(CertReal::from_int(2, p));
    return h * h;
  };
  CHECK(cmp_certified(r2, constant(2), {128, 1024}) == Ordering::Undecided);
  const Refinable close = [](mpfr_prec_t p) {
    return CertReal::from_int(1, p) + pow_int(div_int(CertReal::from_int(1, p), 2), 200);
  };
  CHECK(cmp_certified(close, constant(1)) == Ordering::Greater);
}

TEST_CASE("li basic values") {
  CHECK(li(CertReal::from_int(1)).is_exact());
  CHECK(li(CertReal::from_int(1)).contains(0.0));
  const CertReal l2 = li(CertReal::from_int(2));
  const double oracle = static_cast<double>(oracle::li_simpson(2.0L));
  CHECK(std::fabs(l2.mid() - oracle) < 1e-13);
  CHECK(l2.width() < 1e-30);
  CHECK(compare(li(CertReal::from_int(3)), li(CertReal::from_int(4))) == Ordering::Less);
  for (double x : {1.5, 7.0, 100.0, 1234.5}) {
    const double o = static_cast<double>(oracle::li_simpson(x, 400000));
    CHECK(std::fabs(li(CertReal::exact(x)).mid() - o) < 1e-10 * std::max(1.0, o));
  }
  CHECK_THROWS_AS(li(CertReal::exact(0.5)), PreconditionError);
}

TEST_CASE("li with tolerance") {
  const CertReal v = li(constant_decimal("2.5"), 1e-60);
  CHECK(v.width() <= 1e-60);
  CHECK(li(constant(10), 1e-30).width() <= 1e-30);
}

TEST_CASE("li_inv") {
  CHECK(li_inv(constant(0), 1e-20).contains(1.0));
  const CertReal five = li_inv(
      [](mpfr_prec_t p) { return li(CertReal::from_int(5, p)); }, 1e-25);
  CHECK(five.contains(5.0));
  CHECK(five.width() <= 1e-25);
  const CertReal x1 = li_inv(constant(1), 1e-30);
  CHECK(std::fabs(x1.mid() - static_cast<double>(oracle::li_inv_bisect(1.0L))) < 1e-9);
}

TEST_CASE("li and li_inv roundtrips") {
  const double tol = 1e-20;
  for (double y : {0.25, 1.0, 3.5, 17.0, 100.0, 1000.0, 5000.0}) {
    const CertReal x = li_inv(constant(y), tol);
    const CertReal back = li(x);
    CHECK(back.contains(y) == (back.lo_double() <= y && y <= back.hi_double()));
    CHECK(std::fabs(back.mid() - y) <= 2 * tol * std::max(1.0, li_density(x.mid())) + 1e-30);
  }
  for (double x : {1.1, 2.0, 9.0, 250.0}) {
    const CertReal y = li(CertReal::exact(x, 256));
    const CertReal xb = li_inv([&](mpfr_prec_t p) { return li(CertReal::exact(x, p)); }, tol);
    CHECK(std::fabs(xb.mid() - x) <= 2 * tol);
    CHECK(y.width() < 1e-60);
  }
}

TEST_CASE("li_moment") {
  const Refinable a = constant(2), b = constant(10);
  const LiMoment m0 = li_moment(a, b, 0.0);
  CHECK(m0.rigorous);
  const CertReal diff = li(CertReal::from_int(10)) - li(CertReal::from_int(2));
  CHECK(overlaps(m0.value.re, diff));
  CHECK(m0.value.im.contains(0.0));

  // oracle: Simpson in u on int_2^10 u^{-it} (1-1/u)/log u du
  for (double t : {1.0, 7.5, 30.0}) {
    const int n = 400000;
    const long double h = 8.0L / n;
    std::complex<long double> s{};
    for (int i = 0; i <= n; ++i) {
      const long double u = 2.0L + i * h;
      const long double w = (i == 0 || i == n) ? 1.0L : (i % 2 ? 4.0L : 2.0L);
      s += w * std::polar(oracle::li_integrand(u), -static_cast<long double>(t) * std::log(u));
    }
    s *= h / 3.0L;
    const LiMoment m = li_moment(a, b, t);
    CHECK(m.rigorous);
    CHECK(std::fabs(m.value.re.mid() - static_cast<double>(s.real())) < 1e-9);
    CHECK(std::fabs(m.value.im.mid() - static_cast<double>(s.imag())) < 1e-9);
    CHECK(m.value.re.width() < 1e-20);
  }
  const LiMoment empty = li_moment(a, a, 5.0);
  CHECK(empty.value.contains(0.0, 0.0));
  CHECK(empty.value.re.is_exact());
}

TEST_CASE("li_moment falls back beyond the cap") {
  const LiMoment m = li_moment(constant(2), constant(1e6), 3000.0, {128, 1024});
  CHECK_FALSE(m.rigorous);
  CHECK(m.error_estimate < 1e-6);
}
