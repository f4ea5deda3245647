#pragma once

// Certified real arithmetic on top of MPFR.
//
// CertReal is a closed interval [lo, hi] whose endpoints are computed with
// directed rounding, so the exact real value of every composed expression
// stays inside.  Exact inputs (integers, doubles, dyadic decimals that fit the
// precision) give degenerate intervals.

#include <mpfr.h>

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "beurling/error.hpp"

namespace beurling {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;
inline constexpr mpfr_prec_t kDefaultPrecisionCap = 4096;

/// Start at `start` bits and double on Undecided outcomes up to `cap`.
struct PrecisionPolicy {
  mpfr_prec_t start = kDefaultPrecision;
  mpfr_prec_t cap = kDefaultPrecisionCap;
};

/// Owning wrapper around mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  /// Decimal rendering with `digits` significant digits.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t value_;
};

class CertReal {
 public:
  explicit CertReal(mpfr_prec_t prec = kDefaultPrecision);

  static CertReal exact(double v, mpfr_prec_t prec = kDefaultPrecision);
  static CertReal from_int(long v, mpfr_prec_t prec = kDefaultPrecision);
  static CertReal from_rational(const mpq_class& q, mpfr_prec_t prec = kDefaultPrecision);
  /// Encloses a decimal literal such as "2.5", "-1e-3" or "7".
  /// Throws PreconditionError on malformed or non-finite input.
  static CertReal from_decimal(std::string_view text, mpfr_prec_t prec = kDefaultPrecision);
  static CertReal hull(const CertReal& a, const CertReal& b);
  static CertReal from_bounds(const BigFloat& lo, const BigFloat& hi);
  static CertReal pi(mpfr_prec_t prec = kDefaultPrecision);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  BigFloat& lo() { return lo_; }
  BigFloat& hi() { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  /// Round-to-nearest midpoint.
  double mid() const;
  double lo_double() const { return lo_.to_double(MPFR_RNDD); }
  double hi_double() const { return hi_.to_double(MPFR_RNDU); }
  /// Upper bound on hi - lo.
  double width() const;
  /// Upper bound on max(|lo|, |hi|).
  double mag() const;
  /// Lower bound on min |x| over the interval (0 if it straddles zero).
  double mig() const;

  bool is_exact() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
  bool contains(double v) const;
  bool contains(const CertReal& other) const;
  bool contains_zero() const;
  bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
  bool certainly_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }

  /// Midpoint as a decimal string with `digits` significant digits.
  std::string to_decimal(int digits = 40) const;

  /// Widen by `radius` (>= 0) on both sides.
  CertReal widened(double radius) const;
  /// Copy at a different precision, rounding outward.
  CertReal with_precision(mpfr_prec_t prec) const;

  CertReal& operator+=(const CertReal& o);
  CertReal& operator-=(const CertReal& o);
  CertReal& operator*=(const CertReal& o);
  CertReal& operator/=(const CertReal& o);

 private:
  BigFloat lo_;
  BigFloat hi_;
};

CertReal operator+(const CertReal& a, const CertReal& b);
CertReal operator-(const CertReal& a, const CertReal& b);
CertReal operator*(const CertReal& a, const CertReal& b);
CertReal operator/(const CertReal& a, const CertReal& b);
CertReal operator-(const CertReal& a);

CertReal abs(const CertReal& a);
CertReal sqr(const CertReal& a);
CertReal sqrt(const CertReal& a);
CertReal exp(const CertReal& a);
CertReal log(const CertReal& a);
CertReal pow(const CertReal& base, const CertReal& exponent);
CertReal pow_int(const CertReal& base, long n);
CertReal cos(const CertReal& a);
CertReal sin(const CertReal& a);
CertReal min(const CertReal& a, const CertReal& b);
CertReal max(const CertReal& a, const CertReal& b);
CertReal mul_int(const CertReal& a, long n);
CertReal div_int(const CertReal& a, long n);

enum class Ordering { Less, Greater, Undecided };

/// Less/Greater only when the intervals are disjoint.
Ordering compare(const CertReal& a, const CertReal& b);
bool overlaps(const CertReal& a, const CertReal& b);

/// A real quantity that can be re-evaluated at any precision.
using Refinable = std::function<CertReal(mpfr_prec_t)>;

Refinable constant(double v);
Refinable constant_decimal(std::string decimal);

/// Certified comparison with precision doubling.  Undecided only when the
/// cap is reached; identical quantities therefore always end Undecided.
Ordering cmp_certified(const Refinable& a, const Refinable& b,
                       const PrecisionPolicy& policy = {});

/// Evaluate `x` at increasing precision until the interval width is <= tol.
/// Throws PrecisionError at the cap.
CertReal refine_to(const Refinable& x, double tol, const PrecisionPolicy& policy = {});

// ---------------------------------------------------------------------------
// Complex intervals (rectangular boxes).

struct CertComplex {
  CertReal re;
  CertReal im;

  explicit CertComplex(mpfr_prec_t prec = kDefaultPrecision) : re(prec), im(prec) {}
  CertComplex(CertReal r, CertReal i) : re(std::move(r)), im(std::move(i)) {}

  static CertComplex exact(double r, double i, mpfr_prec_t prec = kDefaultPrecision);

  mpfr_prec_t precision() const { return re.precision(); }
  /// Upper bound on the modulus.
  double abs_upper() const;
  /// Lower bound on the modulus.
  double abs_lower() const;
  /// Box containing the disk of `radius` around every point of this box.
  CertComplex widened(double radius) const;
  bool contains(double r, double i) const { return re.contains(r) && im.contains(i); }

  CertComplex& operator+=(const CertComplex& o);
  CertComplex& operator-=(const CertComplex& o);
  CertComplex& operator*=(const CertComplex& o);
};

CertComplex operator+(const CertComplex& a, const CertComplex& b);
CertComplex operator-(const CertComplex& a, const CertComplex& b);
CertComplex operator*(const CertComplex& a, const CertComplex& b);
CertComplex operator*(const CertComplex& a, const CertReal& b);
CertComplex operator/(const CertComplex& a, const CertComplex& b);
CertComplex conj(const CertComplex& a);
CertComplex exp(const CertComplex& a);
/// Principal logarithm of an exact nonzero point (x, y).
CertComplex log_exact_point(double x, double y, mpfr_prec_t prec);
/// base^{-s} for a positive real base and exact s = sigma + i t.
CertComplex pow_neg(const CertReal& base, double sigma, double t);
bool overlaps(const CertComplex& a, const CertComplex& b);

// ---------------------------------------------------------------------------
// Logarithmic integral li(x) = int_1^x (1 - 1/u) / log u du.

/// li at the precision of `x`; requires x >= 1 (lo >= 1).
CertReal li(const CertReal& x);
/// li with width <= tol, refining x as needed.
CertReal li(const Refinable& x, double tol, const PrecisionPolicy& policy = {});
/// The x >= 1 with li(x) = y.  The returned interval contains the exact
/// inverse and has width <= tol.
CertReal li_inv(const Refinable& y, double tol, const PrecisionPolicy& policy = {});
/// Derivative of li: (1 - 1/x) / log x, extended by 1 at x = 1.
double li_density(double x);

/// int_a^b u^{-it} dli(u) as a certified box (rigorous == true), or a
/// double-precision quadrature estimate when the rigorous path would need
/// more than the precision cap (rigorous == false, error_estimate set).
struct LiMoment {
  CertComplex value;
  bool rigorous = true;
  double error_estimate = 0.0;
  mpfr_prec_t precision_used = 0;
};

LiMoment li_moment(const Refinable& a, const Refinable& b, double t,
                   const PrecisionPolicy& policy = {});

}  // namespace beurling
