#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "beurling/numerics.hpp"

namespace beurling {

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits, mpfr_rnd_t rnd) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*g", digits, rnd, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

// ---------------------------------------------------------------------------
// CertReal construction

namespace {

bool valid_decimal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

mpfr_prec_t joint(const CertReal& a, const CertReal& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

CertReal::CertReal(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

CertReal CertReal::exact(double v, mpfr_prec_t prec) {
  if (!std::isfinite(v)) throw PreconditionError("non-finite real input");
  CertReal r(std::max<mpfr_prec_t>(prec, 53));
  mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

CertReal CertReal::from_int(long v, mpfr_prec_t prec) {
  CertReal r(prec);
  mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

CertReal CertReal::from_rational(const mpq_class& q, mpfr_prec_t prec) {
  CertReal r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

CertReal CertReal::from_decimal(std::string_view text, mpfr_prec_t prec) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (!valid_decimal(s)) throw PreconditionError("malformed decimal literal: '" + std::string(text) + "'");
  CertReal r(prec);
  mpfr_strtofr(r.lo_.get(), s.c_str(), nullptr, 10, MPFR_RNDD);
  mpfr_strtofr(r.hi_.get(), s.c_str(), nullptr, 10, MPFR_RNDU);
  if (!mpfr_number_p(r.lo_.get()) || !mpfr_number_p(r.hi_.get()))
    throw PreconditionError("non-finite decimal literal: '" + std::string(text) + "'");
  return r;
}

CertReal CertReal::hull(const CertReal& a, const CertReal& b) {
  CertReal r(joint(a, b));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

CertReal CertReal::from_bounds(const BigFloat& lo, const BigFloat& hi) {
  CertReal r(std::max(lo.precision(), hi.precision()));
  mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
  if (mpfr_greater_p(r.lo_.get(), r.hi_.get())) throw Error("interval bounds out of order");
  return r;
}

CertReal CertReal::pi(mpfr_prec_t prec) {
  CertReal r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

// ---------------------------------------------------------------------------
// Queries

double CertReal::mid() const {
  BigFloat m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double(MPFR_RNDN);
}

double CertReal::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

double CertReal::mag() const {
  const double a = std::fabs(lo_.to_double(MPFR_RNDD));
  const double b = std::fabs(hi_.to_double(MPFR_RNDU));
  return std::max(a, b);
}

double CertReal::mig() const {
  if (contains_zero()) return 0.0;
  if (certainly_positive()) return lo_.to_double(MPFR_RNDD);
  return -hi_.to_double(MPFR_RNDU);
}

bool CertReal::contains(double v) const {
  return mpfr_cmp_d(lo_.get(), v) <= 0 && mpfr_cmp_d(hi_.get(), v) >= 0;
}

bool CertReal::contains(const CertReal& other) const {
  return mpfr_lessequal_p(lo_.get(), other.lo_.get()) &&
         mpfr_greaterequal_p(hi_.get(), other.hi_.get());
}

bool CertReal::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

std::string CertReal::to_decimal(int digits) const {
  BigFloat m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_string(digits);
}

CertReal CertReal::widened(double radius) const {
  CertReal r(*this);
  if (radius > 0) {
    mpfr_sub_d(r.lo_.get(), r.lo_.get(), radius, MPFR_RNDD);
    mpfr_add_d(r.hi_.get(), r.hi_.get(), radius, MPFR_RNDU);
  }
  return r;
}

CertReal CertReal::with_precision(mpfr_prec_t prec) const {
  CertReal r(prec);
  mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

// ---------------------------------------------------------------------------
// Arithmetic

CertReal operator+(const CertReal& a, const CertReal& b) {
  CertReal r(joint(a, b));
  mpfr_add(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

CertReal operator-(const CertReal& a, const CertReal& b) {
  CertReal r(joint(a, b));
  mpfr_sub(r.lo().get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(r.hi().get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return r;
}

CertReal operator-(const CertReal& a) {
  CertReal r(a.precision());
  mpfr_neg(r.lo().get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(r.hi().get(), a.lo().get(), MPFR_RNDU);
  return r;
}

CertReal operator*(const CertReal& a, const CertReal& b) {
  const mpfr_prec_t prec = joint(a, b);
  CertReal r(prec);
  const int sa_lo = mpfr_sgn(a.lo().get()), sa_hi = mpfr_sgn(a.hi().get());
  const int sb_lo = mpfr_sgn(b.lo().get()), sb_hi = mpfr_sgn(b.hi().get());
  // Both nonnegative: the common case for magnitudes and Beurling values.
  if (sa_lo >= 0 && sb_lo >= 0) {
    mpfr_mul(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_mul(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return r;
  }
  if (sa_hi <= 0 && sb_hi <= 0) {
    mpfr_mul(r.lo().get(), a.hi().get(), b.hi().get(), MPFR_RNDD);
    mpfr_mul(r.hi().get(), a.lo().get(), b.lo().get(), MPFR_RNDU);
    return r;
  }
  BigFloat t(prec);
  mpfr_srcptr al = a.lo().get(), ah = a.hi().get(), bl = b.lo().get(), bh = b.hi().get();
  mpfr_mul(r.lo().get(), al, bl, MPFR_RNDD);
  mpfr_mul(t.get(), al, bh, MPFR_RNDD);
  mpfr_min(r.lo().get(), r.lo().get(), t.get(), MPFR_RNDD);
  mpfr_mul(t.get(), ah, bl, MPFR_RNDD);
  mpfr_min(r.lo().get(), r.lo().get(), t.get(), MPFR_RNDD);
  mpfr_mul(t.get(), ah, bh, MPFR_RNDD);
  mpfr_min(r.lo().get(), r.lo().get(), t.get(), MPFR_RNDD);
  mpfr_mul(r.hi().get(), al, bl, MPFR_RNDU);
  mpfr_mul(t.get(), al, bh, MPFR_RNDU);
  mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), ah, bl, MPFR_RNDU);
  mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), ah, bh, MPFR_RNDU);
  mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
  return r;
}

CertReal operator/(const CertReal& a, const CertReal& b) {
  if (b.contains_zero()) throw Error("division by an interval containing zero");
  const mpfr_prec_t prec = joint(a, b);
  CertReal r(prec);
  BigFloat t(prec);
  mpfr_srcptr al = a.lo().get(), ah = a.hi().get(), bl = b.lo().get(), bh = b.hi().get();
  mpfr_div(r.lo().get(), al, bl, MPFR_RNDD);
  mpfr_div(t.get(), al, bh, MPFR_RNDD);
  mpfr_min(r.lo().get(), r.lo().get(), t.get(), MPFR_RNDD);
  mpfr_div(t.get(), ah, bl, MPFR_RNDD);
  mpfr_min(r.lo().get(), r.lo().get(), t.get(), MPFR_RNDD);
  mpfr_div(t.get(), ah, bh, MPFR_RNDD);
  mpfr_min(r.lo().get(), r.lo().get(), t.get(), MPFR_RNDD);
  mpfr_div(r.hi().get(), al, bl, MPFR_RNDU);
  mpfr_div(t.get(), al, bh, MPFR_RNDU);
  mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
  mpfr_div(t.get(), ah, bl, MPFR_RNDU);
  mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
  mpfr_div(t.get(), ah, bh, MPFR_RNDU);
  mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
  return r;
}

CertReal& CertReal::operator+=(const CertReal& o) { return *this = *this + o; }
CertReal& CertReal::operator-=(const CertReal& o) { return *this = *this - o; }
CertReal& CertReal::operator*=(const CertReal& o) { return *this = *this * o; }
CertReal& CertReal::operator/=(const CertReal& o) { return *this = *this / o; }

CertReal mul_int(const CertReal& a, long n) {
  CertReal r(a.precision());
  if (n >= 0) {
    mpfr_mul_si(r.lo().get(), a.lo().get(), n, MPFR_RNDD);
    mpfr_mul_si(r.hi().get(), a.hi().get(), n, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo().get(), a.hi().get(), n, MPFR_RNDD);
    mpfr_mul_si(r.hi().get(), a.lo().get(), n, MPFR_RNDU);
  }
  return r;
}

CertReal div_int(const CertReal& a, long n) {
  if (n == 0) throw Error("division by zero");
  CertReal r(a.precision());
  if (n > 0) {
    mpfr_div_si(r.lo().get(), a.lo().get(), n, MPFR_RNDD);
    mpfr_div_si(r.hi().get(), a.hi().get(), n, MPFR_RNDU);
  } else {
    mpfr_div_si(r.lo().get(), a.hi().get(), n, MPFR_RNDD);
    mpfr_div_si(r.hi().get(), a.lo().get(), n, MPFR_RNDU);
  }
  return r;
}

CertReal abs(const CertReal& a) {
  if (a.certainly_nonnegative()) return a;
  if (mpfr_sgn(a.hi().get()) <= 0) return -a;
  CertReal r(a.precision());
  mpfr_set_zero(r.lo().get(), 1);
  BigFloat t(a.precision());
  mpfr_neg(t.get(), a.lo().get(), MPFR_RNDU);
  mpfr_max(r.hi().get(), t.get(), a.hi().get(), MPFR_RNDU);
  return r;
}

CertReal sqr(const CertReal& a) {
  CertReal m = abs(a);
  CertReal r(a.precision());
  mpfr_sqr(r.lo().get(), m.lo().get(), MPFR_RNDD);
  mpfr_sqr(r.hi().get(), m.hi().get(), MPFR_RNDU);
  return r;
}

CertReal sqrt(const CertReal& a) {
  if (a.certainly_negative()) throw Error("sqrt of a negative interval");
  CertReal r(a.precision());
  if (mpfr_sgn(a.lo().get()) < 0)
    mpfr_set_zero(r.lo().get(), 1);
  else
    mpfr_sqrt(r.lo().get(), a.lo().get(), MPFR_RNDD);
  mpfr_sqrt(r.hi().get(), a.hi().get(), MPFR_RNDU);
  return r;
}

CertReal exp(const CertReal& a) {
  CertReal r(a.precision());
  mpfr_exp(r.lo().get(), a.lo().get(), MPFR_RNDD);
  mpfr_exp(r.hi().get(), a.hi().get(), MPFR_RNDU);
  return r;
}

CertReal log(const CertReal& a) {
  if (!a.certainly_positive()) throw Error("log of an interval not certainly positive");
  CertReal r(a.precision());
  mpfr_log(r.lo().get(), a.lo().get(), MPFR_RNDD);
  mpfr_log(r.hi().get(), a.hi().get(), MPFR_RNDU);
  return r;
}

CertReal pow(const CertReal& base, const CertReal& exponent) {
  return exp(exponent * log(base));
}

CertReal pow_int(const CertReal& base, long n) {
  if (n < 0) return CertReal::from_int(1, base.precision()) / pow_int(base, -n);
  CertReal result = CertReal::from_int(1, base.precision());
  CertReal b = base;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1UL) result = result * b;
    e >>= 1;
    if (e) b = sqr(b);
  }
  return result;
}

namespace {

// f is 1-Lipschitz: f([m - r, m + r]) is inside [f(m) - r, f(m) + r].
template <typename Fn>
CertReal lipschitz_unit(const CertReal& a, Fn fn) {
  const mpfr_prec_t prec = a.precision();
  BigFloat m(prec + 1), r(prec), t(prec);
  mpfr_add(m.get(), a.lo().get(), a.hi().get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  mpfr_sub(r.get(), a.hi().get(), m.get(), MPFR_RNDU);
  mpfr_sub(t.get(), m.get(), a.lo().get(), MPFR_RNDU);
  mpfr_max(r.get(), r.get(), t.get(), MPFR_RNDU);
  CertReal out(prec);
  fn(out.lo().get(), m.get(), MPFR_RNDD);
  fn(out.hi().get(), m.get(), MPFR_RNDU);
  mpfr_sub(out.lo().get(), out.lo().get(), r.get(), MPFR_RNDD);
  mpfr_add(out.hi().get(), out.hi().get(), r.get(), MPFR_RNDU);
  if (mpfr_cmp_si(out.lo().get(), -1) < 0) mpfr_set_si(out.lo().get(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(out.hi().get(), 1) > 0) mpfr_set_si(out.hi().get(), 1, MPFR_RNDU);
  return out;
}

}  // namespace

CertReal cos(const CertReal& a) {
  return lipschitz_unit(a, [](mpfr_ptr o, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_cos(o, x, rnd); });
}

CertReal sin(const CertReal& a) {
  return lipschitz_unit(a, [](mpfr_ptr o, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_sin(o, x, rnd); });
}

CertReal min(const CertReal& a, const CertReal& b) {
  CertReal r(joint(a, b));
  mpfr_min(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_min(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

CertReal max(const CertReal& a, const CertReal& b) {
  CertReal r(joint(a, b));
  mpfr_max(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_max(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

// ---------------------------------------------------------------------------
// Comparison and refinement

Ordering compare(const CertReal& a, const CertReal& b) {
  if (mpfr_less_p(a.hi().get(), b.lo().get())) return Ordering::Less;
  if (mpfr_greater_p(a.lo().get(), b.hi().get())) return Ordering::Greater;
  return Ordering::Undecided;
}

bool overlaps(const CertReal& a, const CertReal& b) {
  return compare(a, b) == Ordering::Undecided;
}

Refinable constant(double v) {
  return [v](mpfr_prec_t prec) { return CertReal::exact(v, prec); };
}

Refinable constant_decimal(std::string decimal) {
  CertReal::from_decimal(decimal);  // validate eagerly
  return [d = std::move(decimal)](mpfr_prec_t prec) { return CertReal::from_decimal(d, prec); };
}

Ordering cmp_certified(const Refinable& a, const Refinable& b, const PrecisionPolicy& policy) {
  for (mpfr_prec_t prec = policy.start; prec <= policy.cap; prec *= 2) {
    const Ordering o = compare(a(prec), b(prec));
    if (o != Ordering::Undecided) return o;
  }
  return Ordering::Undecided;
}

CertReal refine_to(const Refinable& x, double tol, const PrecisionPolicy& policy) {
  for (mpfr_prec_t prec = policy.start; prec <= policy.cap; prec *= 2) {
    CertReal v = x(prec);
    if (v.width() <= tol) return v;
  }
  throw PrecisionError("precision cap reached before tolerance " + std::to_string(tol));
}

}  // namespace beurling
