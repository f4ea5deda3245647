// Logarithmic integral li(x) = int_1^x (1 - 1/u)/log u du and its moments.
//
// With u = e^tau the integrand becomes (e^tau - 1)/tau, an entire function,
// so li(x) = sum_{k>=1} T^k / (k k!) with T = log x.  All terms are positive;
// after K terms with K + 2 >= 2T the remainder is at most twice the next term.
//
// The moment int_a^b u^{-it} dli(u) has the same shape:
//   sum_{k>=1} [(1 - it)^k - (-it)^k] T^k / (k k!)  evaluated between log a, log b.
// Its terms grow like e^{|1-it| T} before cancelling, so the working precision
// is raised by |1-it| T log2(e) bits.

#include <mpfr.h>

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "beurling/numerics.hpp"

namespace beurling {

namespace {

constexpr mpfr_prec_t kGuardBits = 16;

// li as a function of T = log x >= 0, at the precision of T.
CertReal li_from_log(const CertReal& log_x) {
  const mpfr_prec_t prec = log_x.precision();
  const mpfr_prec_t work = prec + kGuardBits;
  CertReal t = log_x.with_precision(work);
  if (mpfr_sgn(t.lo().get()) < 0) mpfr_set_zero(t.lo().get(), 1);
  if (mpfr_sgn(t.hi().get()) <= 0) return CertReal::from_int(0, prec);

  const double t_hi = t.hi_double();
  CertReal u = t;    // T^k / k!
  CertReal sum = t;  // k = 1 term
  BigFloat tail(work);
  for (long k = 2;; ++k) {
    u = div_int(u * t, k);
    sum += div_int(u, k);
    if (static_cast<double>(k + 2) < 2.0 * t_hi) continue;
    // Remainder after term k is <= 2 * T^{k+1} / ((k+1) (k+1)!).
    mpfr_mul(tail.get(), u.hi().get(), t.hi().get(), MPFR_RNDU);
    mpfr_div_si(tail.get(), tail.get(), (k + 1) * (k + 1), MPFR_RNDU);
    mpfr_mul_2ui(tail.get(), tail.get(), 1, MPFR_RNDU);
    if (mpfr_get_exp(tail.get()) < mpfr_get_exp(sum.lo().get()) - static_cast<long>(work)) {
      mpfr_add(sum.hi().get(), sum.hi().get(), tail.get(), MPFR_RNDU);
      break;
    }
  }
  return sum.with_precision(prec);
}

double li_double(double x) {
  if (x <= 1.0) return 0.0;
  const double t = std::log(x);
  double u = t, sum = t;
  for (int k = 2; k < 2000; ++k) {
    u *= t / k;
    const double term = u / k;
    sum += term;
    if (k > 2 * t && term < 1e-18 * sum) break;
  }
  return sum;
}

// Newton on the double-precision li, as the starting point for MPFR Newton.
double li_inv_double(double y) {
  if (y <= 0.0) return 1.0;
  double x = y < 2.0 ? 1.0 + y : y * std::log(y) + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double step = (li_double(x) - y) / li_density(x);
    double next = x - step;
    if (next <= 1.0) next = 0.5 * (1.0 + x);
    if (std::fabs(next - x) <= 1e-15 * x) return next;
    x = next;
  }
  return x;
}

}  // namespace

double li_density(double x) {
  if (x <= 1.0) return 1.0;
  const double l = std::log(x);
  if (l < 1e-8) return 1.0 - 0.5 * l;
  return (1.0 - 1.0 / x) / l;
}

CertReal li(const CertReal& x) {
  if (mpfr_cmp_si(x.hi().get(), 1) < 0) throw PreconditionError("li requires x >= 1");
  if (mpfr_cmp_si(x.hi().get(), 1) == 0) return CertReal::from_int(0, x.precision());
  CertReal clamped = x;
  if (mpfr_cmp_si(clamped.lo().get(), 1) < 0) mpfr_set_si(clamped.lo().get(), 1, MPFR_RNDD);
  return li_from_log(log(clamped));
}

CertReal li(const Refinable& x, double tol, const PrecisionPolicy& policy) {
  if (!(tol > 0)) throw PreconditionError("li tolerance must be positive");
  for (mpfr_prec_t prec = policy.start; prec <= policy.cap; prec *= 2) {
    CertReal v = li(x(prec));
    if (v.width() <= tol) return v;
  }
  throw PrecisionError("li: precision cap reached before tolerance");
}

CertReal li_inv(const Refinable& y, double tol, const PrecisionPolicy& policy) {
  if (!(tol > 0)) throw PreconditionError("li_inv tolerance must be positive");
  {
    const CertReal y0 = y(policy.start);
    if (y0.certainly_negative()) throw PreconditionError("li_inv requires y >= 0");
    if (y0.is_exact() && mpfr_zero_p(y0.lo().get())) return CertReal::from_int(1, policy.start);
  }
  for (mpfr_prec_t prec = policy.start; prec <= policy.cap; prec *= 2) {
    const CertReal target = y(prec);
    const mpfr_prec_t work = prec + kGuardBits;

    // Newton at round-to-nearest; certification happens afterwards.
    BigFloat x(work), step(work), dens(work), lg(work);
    mpfr_set_d(x.get(), li_inv_double(target.mid()), MPFR_RNDN);
    const CertReal ymid = target.with_precision(work);
    for (int iter = 0; iter < 100; ++iter) {
      CertReal xi(work);
      mpfr_set(xi.lo().get(), x.get(), MPFR_RNDN);
      mpfr_set(xi.hi().get(), x.get(), MPFR_RNDN);
      const CertReal f = li(xi) - ymid;
      mpfr_log(lg.get(), x.get(), MPFR_RNDN);
      if (mpfr_cmp_d(lg.get(), 1e-30) < 0) {
        mpfr_set_si(dens.get(), 1, MPFR_RNDN);
      } else {
        mpfr_ui_div(dens.get(), 1, x.get(), MPFR_RNDN);
        mpfr_ui_sub(dens.get(), 1, dens.get(), MPFR_RNDN);
        mpfr_div(dens.get(), dens.get(), lg.get(), MPFR_RNDN);
      }
      BigFloat residual(work);
      mpfr_add(residual.get(), f.lo().get(), f.hi().get(), MPFR_RNDN);
      mpfr_div_2ui(residual.get(), residual.get(), 1, MPFR_RNDN);
      mpfr_div(step.get(), residual.get(), dens.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
      if (mpfr_cmp_si(x.get(), 1) < 0) mpfr_set_si(x.get(), 1, MPFR_RNDN);
      if (mpfr_zero_p(step.get()) ||
          mpfr_get_exp(step.get()) < mpfr_get_exp(x.get()) - static_cast<long>(work) + 4)
        break;
    }

    // Certify a bracket [a, b] around x with li(a) <= y <= li(b).
    const double delta = tol / 4;
    CertReal a(work), b(work);
    mpfr_sub_d(a.lo().get(), x.get(), delta, MPFR_RNDD);
    if (mpfr_cmp_si(a.lo().get(), 1) < 0) mpfr_set_si(a.lo().get(), 1, MPFR_RNDD);
    mpfr_set(a.hi().get(), a.lo().get(), MPFR_RNDN);
    mpfr_add_d(b.lo().get(), x.get(), delta, MPFR_RNDU);
    mpfr_set(b.hi().get(), b.lo().get(), MPFR_RNDN);
    const bool a_ok = mpfr_cmp_si(a.lo().get(), 1) == 0 ||
                      mpfr_lessequal_p(li(a).hi().get(), target.lo().get());
    const bool b_ok = mpfr_greaterequal_p(li(b).lo().get(), target.hi().get());
    if (a_ok && b_ok) {
      CertReal out(work);
      mpfr_set(out.lo().get(), a.lo().get(), MPFR_RNDD);
      mpfr_set(out.hi().get(), b.lo().get(), MPFR_RNDU);
      return out.with_precision(prec);
    }
  }
  throw PrecisionError("li_inv: precision cap reached before tolerance");
}

// ---------------------------------------------------------------------------
// Moments

namespace {

// G(T) = sum_{k>=1} [(1 - it)^k - (-it)^k] T^k / (k k!), T >= 0.
CertComplex moment_series(const CertReal& T, double t, mpfr_prec_t stop_bits) {
  const mpfr_prec_t prec = T.precision();
  CertComplex sum(prec);
  if (mpfr_sgn(T.hi().get()) <= 0) return sum;

  const CertReal ct = CertReal::exact(t, prec);
  const double radius = std::hypot(1.0, t);
  const double rt = radius * T.hi_double();
  CertComplex c1pow = CertComplex::exact(1, 0, prec);
  CertReal tpow = CertReal::from_int(1, prec);
  CertReal u = CertReal::from_int(1, prec);
  for (long k = 1;; ++k) {
    // (re + i im)(1 - i t) = (re + t im) + i (im - t re)
    CertReal re = c1pow.re + ct * c1pow.im;
    CertReal im = c1pow.im - ct * c1pow.re;
    c1pow.re = std::move(re);
    c1pow.im = std::move(im);
    tpow *= ct;
    CertComplex a = c1pow;
    switch (k % 4) {
      case 0: a.re -= tpow; break;
      case 1: a.im += tpow; break;  // (-i)^1 = -i
      case 2: a.re += tpow; break;  // (-i)^2 = -1
      case 3: a.im -= tpow; break;  // (-i)^3 = i
    }
    u = div_int(u * T, k);
    sum += a * div_int(u, k);

    if (static_cast<double>(k + 2) < 2.0 * rt) continue;
    const double kk = static_cast<double>(k + 1);
    const double log_tail =
        (rt > 0 ? kk * std::log(rt) : -1e300) - std::log(kk) - std::lgamma(kk + 1) + std::log(4.0);
    const double scale = std::max(1.0, sum.abs_upper());
    if (log_tail < -static_cast<double>(stop_bits) * M_LN2 + std::log(scale)) {
      return sum.widened(std::exp(log_tail) * 1.01);
    }
  }
}

std::complex<double> moment_integrand(double tau, double t) {
  const double h = std::fabs(tau) < 1e-12 ? 1.0 + 0.5 * tau : std::expm1(tau) / tau;
  return std::polar(h, -t * tau);
}

std::complex<double> moment_quadrature(double ta, double tb, double t, int panels) {
  static constexpr std::array<double, 8> nodes = {
      -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
      0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
  static constexpr std::array<double, 8> weights = {
      0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
      0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  const double h = (tb - ta) / panels;
  std::complex<double> total{};
  for (int p = 0; p < panels; ++p) {
    const double c = ta + (p + 0.5) * h;
    std::complex<double> s{};
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * moment_integrand(c + 0.5 * h * nodes[i], t);
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace

LiMoment li_moment(const Refinable& a, const Refinable& b, double t, const PrecisionPolicy& policy) {
  const CertReal a0 = a(policy.start);
  const CertReal b0 = b(policy.start);
  if (mpfr_cmp_si(a0.hi().get(), 1) < 0) throw PreconditionError("li_moment requires a >= 1");
  if (compare(a0, b0) == Ordering::Greater) throw PreconditionError("li_moment requires a <= b");

  const double log_b = std::log(b0.hi_double());
  const double radius = std::hypot(1.0, t);
  const double extra = std::ceil(radius * log_b * M_LOG2E) + 32;
  const double needed = static_cast<double>(policy.start) + extra;

  LiMoment out;
  if (needed <= static_cast<double>(policy.cap)) {
    const auto prec = static_cast<mpfr_prec_t>(needed);
    const CertReal av = a(prec);
    const CertReal bv = b(prec);
    out.precision_used = prec;
    if (mpfr_equal_p(av.lo().get(), bv.lo().get()) && mpfr_equal_p(av.hi().get(), bv.hi().get()) &&
        av.is_exact()) {
      out.value = CertComplex(policy.start);
      return out;
    }
    auto log_clamped = [](const CertReal& x) {
      CertReal c = x;
      if (mpfr_cmp_si(c.lo().get(), 1) < 0) mpfr_set_si(c.lo().get(), 1, MPFR_RNDD);
      CertReal l = log(c);
      if (mpfr_sgn(l.lo().get()) < 0) mpfr_set_zero(l.lo().get(), 1);
      return l;
    };
    const CertComplex gb = moment_series(log_clamped(bv), t, policy.start);
    const CertComplex ga = moment_series(log_clamped(av), t, policy.start);
    CertComplex diff = gb - ga;
    out.value = CertComplex(diff.re.with_precision(policy.start), diff.im.with_precision(policy.start));
    return out;
  }

  // Heuristic path: composite Gauss-Legendre, error estimated by halving.
  const double ta = std::log(std::max(1.0, a0.mid()));
  const double tb = std::log(b0.mid());
  const int panels = std::max(1, static_cast<int>(std::ceil((std::fabs(t) + 1.0) * (tb - ta) * 2)));
  const std::complex<double> coarse = moment_quadrature(ta, tb, t, panels);
  const std::complex<double> fine = moment_quadrature(ta, tb, t, 2 * panels);
  out.rigorous = false;
  out.error_estimate = std::abs(fine - coarse);
  out.value = CertComplex::exact(fine.real(), fine.imag(), policy.start);
  out.precision_used = 53;
  return out;
}

}  // namespace beurling
