#include <cmath>
#include <limits>

#include "beurling/json_io.hpp"
#include "beurling/zeta.hpp"

namespace beurling {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper bound for e^T - 1.
double expm1_up(double T) { return T == 0 ? 0.0 : std::expm1(T) * (1 + 1e-12) + 1e-300; }

// Indices of primes <= cutoff (ties inclusive).
std::size_t primes_upto(const PrimeSystem& system, double cutoff) {
  return system.count_le(constant(cutoff));
}

// sum over the listed primes of q^{-sigma}/(1 - q^{-sigma}), upper bound.
double known_tail(const PrimeSystem& system, std::size_t from, double sigma, mpfr_prec_t prec) {
  CertReal total(prec);
  const CertReal s = CertReal::exact(sigma, prec);
  const CertReal one = CertReal::from_int(1, prec);
  for (std::size_t i = from; i < system.size(); ++i) {
    const CertReal z = exp(-(s * log(system.value(i, prec))));
    total += z / (one - z);
  }
  return total.hi_double();
}

// Bound on sum_{q > Y} q^{-sigma}/(1 - q^{-sigma}) from the envelope, where
// exactly `count` primes are <= Y:
//   [Y^{-sigma} (U(Y) - count)_+ + c Y^{1-sigma} / ((sigma - 1) log Y)] / (1 - Y^{-sigma}),
// with U' <= c / log x.
double envelope_tail(const PrimeEnvelope& env, const CertReal& Y, std::size_t count,
                     double sigma) {
  const mpfr_prec_t prec = Y.precision();
  const CertReal one = CertReal::from_int(1, prec);
  const CertReal s = CertReal::exact(sigma, prec);
  const CertReal logY = log(Y);
  CertReal U(prec);
  double c = 1.0;
  if (env.kind == PrimeEnvelope::Kind::Li) {
    U = li(Y) + CertReal::exact(env.K, prec);
  } else {
    c = 1.25506;
    U = CertReal::exact(c, prec) * Y / logY;
  }
  const CertReal ys = exp(-(s * logY));
  CertReal excess = U - CertReal::from_int(static_cast<long>(count), prec);
  if (mpfr_sgn(excess.lo().get()) < 0) mpfr_set_zero(excess.lo().get(), 1);
  if (mpfr_sgn(excess.hi().get()) < 0) mpfr_set_zero(excess.hi().get(), 1);
  const CertReal tail = (ys * excess + CertReal::exact(c, prec) * Y * ys /
                                           ((s - one) * logY)) /
                        (one - ys);
  return tail.hi_double();
}

struct Cut {
  std::size_t used = 0;
  double tail = 0.0;  // bound on the missing sum of q^{-sigma}/(1 - q^{-sigma})
  bool rigorous = true;
};

Cut cut_primes(const PrimeSystem& system, double sigma, double cutoff,
               const std::optional<PrimeEnvelope>& envelope, mpfr_prec_t prec) {
  Cut c;
  c.used = primes_upto(system, cutoff);
  if (!envelope) {
    c.tail = known_tail(system, c.used, sigma, prec);
    return c;
  }
  if (sigma <= 1) {
    c.tail = kInf;
    c.rigorous = false;
    return c;
  }
  const CertReal Y = c.used < system.size() || system.empty()
                         ? CertReal::exact(cutoff, prec)
                         : system.value(system.size() - 1, prec);
  if (!Y.certainly_positive() || mpfr_cmp_si(Y.lo().get(), 1) <= 0)
    throw PreconditionError("envelope tail needs a cutoff > 1");
  c.tail = envelope_tail(*envelope, Y, c.used, sigma);
  return c;
}

void check_sigma(double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw PreconditionError("requires 0 < sigma < inf");
}

}  // namespace

ZetaEval zeta_euler(const PrimeSystem& system, double sigma, double t, double cutoff,
                    std::optional<PrimeEnvelope> envelope, mpfr_prec_t prec) {
  check_sigma(sigma);
  const Cut cut = cut_primes(system, sigma, cutoff, envelope, prec);
  CertComplex denom = CertComplex::exact(1, 0, prec);
  const CertComplex one = CertComplex::exact(1, 0, prec);
  for (std::size_t i = 0; i < cut.used; ++i) {
    const CertComplex factor = one - pow_neg(system.value(i, prec), sigma, t);
    if (factor.re.contains_zero() && factor.im.contains_zero())
      throw PrecisionError("Euler factor vanishes within certification at " + system.decimal(i));
    denom *= factor;
  }
  ZetaEval z;
  z.sigma = sigma;
  z.t = t;
  z.truncation = cutoff;
  z.terms = cut.used;
  z.value = one / denom;
  z.rigorous = cut.rigorous;
  z.tail_bound = cut.rigorous ? z.value.abs_upper() * expm1_up(cut.tail) : kInf;
  if (cut.rigorous && z.tail_bound > 0) z.value = z.value.widened(z.tail_bound);
  return z;
}

ZetaEval zeta_sum(const IntegerSnapshot& snapshot, double sigma, double t,
                  std::optional<DensityEnvelope> envelope) {
  const mpfr_prec_t prec = snapshot.policy().start;
  ZetaEval z;
  z.sigma = sigma;
  z.t = t;
  z.truncation = snapshot.bound();
  z.terms = snapshot.size();
  z.value = CertComplex(prec);
  for (const BeurlingInteger& b : snapshot.entries()) {
    if (sigma == 0 && t == 0) {
      z.value.re += CertReal::from_int(1, prec);
    } else {
      z.value += pow_neg(b.value, sigma, t);
    }
  }

  const CertReal s = CertReal::exact(sigma, prec);
  const CertReal one = CertReal::from_int(1, prec);
  if (envelope) {
    if (sigma <= 1) {
      z.rigorous = false;
      z.tail_bound = kInf;
      return z;
    }
    // int_X^inf x^{-sigma} dN <= -X^{-sigma} N(X) + a sigma X^{1-sigma}/(sigma-1) + b X^{-sigma}
    const CertReal X = CertReal::exact(snapshot.bound(), prec);
    const CertReal xs = exp(-(s * log(X)));
    const CertReal n = CertReal::from_int(static_cast<long>(snapshot.size()), prec);
    const CertReal a = CertReal::exact(envelope->a, prec);
    const CertReal bb = CertReal::exact(envelope->b, prec);
    const CertReal tail = a * s * X * xs / (s - one) + (bb - n) * xs;
    z.tail_bound = std::max(0.0, tail.hi_double());
  } else {
    if (sigma <= 0) {
      z.rigorous = false;
      z.tail_bound = kInf;
      return z;
    }
    // Finite system: the real tail is the full Euler product minus the partial sum.
    const PrimeSystem& sys = snapshot.system();
    CertReal product = one;
    for (std::size_t i = 0; i < sys.size(); ++i)
      product *= one - exp(-(s * log(sys.value(i, prec))));
    CertReal partial(prec);
    for (const BeurlingInteger& b : snapshot.entries()) partial += exp(-(s * log(b.value)));
    z.tail_bound = std::max(0.0, (one / product - partial).hi_double());
  }
  if (z.tail_bound > 0) z.value = z.value.widened(z.tail_bound);
  return z;
}

ZetaEval log_zeta(const PrimeSystem& system, double sigma, double t, double cutoff,
                  std::optional<PrimeEnvelope> envelope, mpfr_prec_t prec) {
  check_sigma(sigma);
  const Cut cut = cut_primes(system, sigma, cutoff, envelope, prec);
  ZetaEval z;
  z.sigma = sigma;
  z.t = t;
  z.truncation = cutoff;
  z.terms = cut.used;
  z.value = CertComplex(prec);
  for (std::size_t i = 0; i < cut.used; ++i) {
    const CertComplex w = pow_neg(system.value(i, prec), sigma, t);
    const double r = w.abs_upper();
    if (!(r < 1)) throw PrecisionError("prime power of modulus 1 in log zeta");
    CertComplex power = w;
    CertComplex sum = w;
    long k = 1;
    // Remainder after k terms is <= r^{k+1} / ((k + 1)(1 - r)).
    double rk = r;
    while (true) {
      rk *= r;
      const double rem = rk / ((k + 1) * (1 - r));
      if (rem < std::ldexp(1.0, -static_cast<int>(prec) - 8) || rk == 0) {
        sum = sum.widened(rem * (1 + 1e-12) + 1e-300);
        break;
      }
      ++k;
      power *= w;
      sum += CertComplex(div_int(power.re, k), div_int(power.im, k));
    }
    z.value += sum;
  }
  z.rigorous = cut.rigorous;
  z.tail_bound = cut.rigorous ? cut.tail * (1 + 1e-12) : kInf;
  if (cut.rigorous && z.tail_bound > 0) z.value = z.value.widened(z.tail_bound);
  return z;
}

ZetaEval Z_eval(const PrimeSystem& system, double sigma, double t, double cutoff,
                std::optional<PrimeEnvelope> envelope, double pole_tol, mpfr_prec_t prec) {
  if (std::hypot(sigma - 1, t) < pole_tol) throw PreconditionError("s too close to the pole at 1");
  if (std::hypot(sigma, t) < pole_tol) throw PreconditionError("s too close to 0");
  ZetaEval z = log_zeta(system, sigma, t, cutoff, envelope, prec);
  z.value += log_exact_point(sigma - 1, t, prec) - log_exact_point(sigma, t, prec);
  return z;
}

mpq_class weighted_prime_count(const PrimeSystem& system, double x,
                               const PrecisionPolicy& policy) {
  mpq_class total = 0;
  if (system.empty() || !(x >= 1)) return total;
  const Refinable xr = constant(x);
  for (long k = 1;; ++k) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < system.size(); ++i) {
      const Refinable qk = [&, i, k](mpfr_prec_t p) { return pow_int(system.value(i, p), k); };
      Ordering o = compare(qk(policy.start), CertReal::exact(x, policy.start));
      if (o == Ordering::Undecided) o = cmp_certified(qk, xr, policy);
      if (o == Ordering::Greater) break;
      ++count;
    }
    if (count == 0) break;
    total += mpq_class(static_cast<long>(count), k);
  }
  total.canonicalize();
  return total;
}

double fit_prime_power_excess(const PrimeSystem& system, const std::vector<double>& xs) {
  double K = 0.0;
  for (double x : xs) {
    if (x <= std::exp(1.0)) continue;
    const mpq_class excess =
        weighted_prime_count(system, x) - static_cast<long>(system.count_le(constant(x)));
    K = std::max(K, excess.get_d() * std::log(x) / std::sqrt(x));
  }
  return K;
}

std::vector<int> mobius_table(const IntegerSnapshot& snapshot) {
  std::vector<int> mu;
  mu.reserve(snapshot.size());
  for (const BeurlingInteger& b : snapshot.entries())
    mu.push_back(is_squarefree(b.exponents) ? (b.exponents.size() % 2 ? -1 : 1) : 0);
  return mu;
}

std::vector<long> dirichlet_convolve(const IntegerSnapshot& snapshot, const std::vector<long>& a,
                                     const std::vector<long>& b) {
  if (a.size() != snapshot.size() || b.size() != snapshot.size())
    throw PreconditionError("coefficient lists must match the snapshot");
  std::vector<long> c(snapshot.size(), 0);
  ExponentVector d, rest;
  for (std::size_t k = 0; k < snapshot.size(); ++k) {
    const ExponentVector& e = snapshot.entry(k).exponents;
    std::vector<std::uint32_t> choice(e.size(), 0);
    while (true) {
      d.clear();
      rest.clear();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (choice[i]) d.push_back({e[i].prime, choice[i]});
        if (choice[i] < e[i].exponent) rest.push_back({e[i].prime, e[i].exponent - choice[i]});
      }
      c[k] += a[*snapshot.find(d)] * b[*snapshot.find(rest)];
      std::size_t i = 0;
      while (i < e.size() && choice[i] == e[i].exponent) choice[i++] = 0;
      if (i == e.size()) break;
      ++choice[i];
    }
  }
  return c;
}

nlohmann::json to_json(const ZetaEval& z) {
  nlohmann::json j;
  j["s"] = {{"sigma", z.sigma}, {"t", z.t}};
  j["value"] = interval_json(z.value);
  j["cutoff"] = z.truncation;
  j["terms"] = z.terms;
  if (z.rigorous) j["tail"] = z.tail_bound;
  else j["tail"] = "heuristic";
  j["rigorous"] = z.rigorous;
  return j;
}

}  // namespace beurling
