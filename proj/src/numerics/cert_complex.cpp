#include <mpfr.h>

#include "beurling/numerics.hpp"

namespace beurling {

CertComplex CertComplex::exact(double r, double i, mpfr_prec_t prec) {
  return {CertReal::exact(r, prec), CertReal::exact(i, prec)};
}

double CertComplex::abs_upper() const {
  return sqrt(sqr(re) + sqr(im)).hi_double();
}

double CertComplex::abs_lower() const {
  const double a = re.mig();
  const double b = im.mig();
  CertReal s = sqr(CertReal::exact(a, 64)) + sqr(CertReal::exact(b, 64));
  return sqrt(s).lo_double();
}

CertComplex CertComplex::widened(double radius) const {
  return {re.widened(radius), im.widened(radius)};
}

CertComplex& CertComplex::operator+=(const CertComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

CertComplex& CertComplex::operator-=(const CertComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

CertComplex& CertComplex::operator*=(const CertComplex& o) { return *this = *this * o; }

CertComplex operator+(const CertComplex& a, const CertComplex& b) {
  return {a.re + b.re, a.im + b.im};
}

CertComplex operator-(const CertComplex& a, const CertComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

CertComplex operator*(const CertComplex& a, const CertComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CertComplex operator*(const CertComplex& a, const CertReal& b) { return {a.re * b, a.im * b}; }

CertComplex operator/(const CertComplex& a, const CertComplex& b) {
  const CertReal denom = sqr(b.re) + sqr(b.im);
  const CertComplex num = a * conj(b);
  return {num.re / denom, num.im / denom};
}

CertComplex conj(const CertComplex& a) { return {a.re, -a.im}; }

CertComplex exp(const CertComplex& a) {
  const CertReal modulus = exp(a.re);
  return {modulus * cos(a.im), modulus * sin(a.im)};
}

CertComplex log_exact_point(double x, double y, mpfr_prec_t prec) {
  if (x == 0.0 && y == 0.0) throw Error("log of zero");
  const CertReal cx = CertReal::exact(x, prec);
  const CertReal cy = CertReal::exact(y, prec);
  CertReal re = div_int(log(sqr(cx) + sqr(cy)), 2);
  CertReal im(prec);
  mpfr_atan2(im.lo().get(), cy.lo().get(), cx.lo().get(), MPFR_RNDD);
  mpfr_atan2(im.hi().get(), cy.lo().get(), cx.lo().get(), MPFR_RNDU);
  return {std::move(re), std::move(im)};
}

CertComplex pow_neg(const CertReal& base, double sigma, double t) {
  const CertReal l = log(base);
  const mpfr_prec_t prec = base.precision();
  CertComplex e{l * CertReal::exact(-sigma, prec), l * CertReal::exact(-t, prec)};
  return exp(e);
}

bool overlaps(const CertComplex& a, const CertComplex& b) {
  return overlaps(a.re, b.re) && overlaps(a.im, b.im);
}

}  // namespace beurling
