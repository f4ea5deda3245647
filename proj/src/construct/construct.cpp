#include <algorithm>
#include <cmath>
#include <random>

#include "beurling/construct.hpp"
#include "beurling/json_io.hpp"

namespace beurling {

namespace {

// (zeta(sigma) - 1) zeta(sigma/4) over a finite list of primes.
CertReal bddquant(const std::vector<CertReal>& primes, double sigma) {
  const mpfr_prec_t prec = primes.empty() ? kDefaultPrecision : primes.front().precision();
  const CertReal one = CertReal::from_int(1, prec);
  auto zeta = [&](double s) {
    CertReal denom = one;
    const CertReal cs = CertReal::exact(s, prec);
    for (const CertReal& q : primes) denom *= one - exp(-(cs * log(q)));
    return one / denom;
  };
  return (zeta(sigma) - one) * zeta(sigma / 4);
}

double sigma_select(const std::vector<CertReal>& primes, const ConstructParams& params) {
  if (!(params.sigma_step > 0)) throw PreconditionError("sigma grid step must be positive");
  const double floor = std::max(2.0, params.A);
  double k = std::floor(floor / params.sigma_step) + 1;
  for (double sigma = k * params.sigma_step; sigma <= params.sigma_max;
       sigma = ++k * params.sigma_step) {
    if (mpfr_cmp_si(bddquant(primes, sigma).hi().get(), 1) <= 0) return sigma;
  }
  throw PreconditionError("no sigma_inf <= " + std::to_string(params.sigma_max) +
                          " satisfies (zeta(s)-1) zeta(s/4) <= 1");
}

std::vector<double> approx_values(const IntegerSnapshot& s) {
  std::vector<double> v;
  v.reserve(s.size());
  for (const BeurlingInteger& b : s.entries()) v.push_back(b.value.mid());
  return v;
}

// Enclosure of x^{-e} for positive x.
CertReal neg_pow(const CertReal& x, double e) {
  return exp(-(CertReal::exact(e, x.precision()) * log(x)));
}

bool certainly_outside(const CertReal& c, const OmegaInterval& w) {
  return compare(c, w.lo()) == Ordering::Less || compare(c, w.hi()) == Ordering::Greater;
}

std::string add_offset(const CertReal& x, double offset) {
  BigFloat c(x.precision() + 64);
  mpfr_set(c.get(), x.lo().get(), MPFR_RNDN);
  mpfr_add_d(c.get(), c.get(), offset, MPFR_RNDN);
  return c.to_string(40);
}

}  // namespace

double sigma_inf_select(const PrimeSystem& system, const ConstructParams& params) {
  std::vector<CertReal> primes;
  for (std::size_t i = 0; i < system.size(); ++i) primes.push_back(system.value(i));
  return sigma_select(primes, params);
}

double window_halfwidth(double x, double sigma_inf, double A) {
  return std::min(std::pow(x, -sigma_inf / 2), std::pow(x, -A));
}

Cover omega_cover(double lo, double hi, const IntegerSnapshot& snapshot, double exponent,
                  double x0) {
  if (!(x0 > 1) || !(lo > x0) || !(hi > lo)) throw PreconditionError("omega_cover needs x0 < lo < hi");
  const std::vector<double> v = approx_values(snapshot);
  const double vmax = v.back();
  const mpfr_prec_t prec = snapshot.policy().start;
  const CertReal cx0 = CertReal::exact(x0, prec);
  const CertReal wlo = CertReal::exact(lo, prec), whi = CertReal::exact(hi, prec);
  Cover cover;
  for (std::size_t m = 0; m < v.size(); ++m) {
    const CertReal& num_m = snapshot.entry(m).value;
    for (unsigned j = 1;; ++j) {
      if (v[m] * std::pow(lo, j) > vmax * (1 + 1e-9) + 1) break;
      // Largest possible halfwidth for this (m, j): nu_n >= 1.
      const double w = std::pow(x0, 1.0 - j) * std::pow(v[m], -exponent);
      const double from = v[m] * std::pow(std::max(lo - w, 1.0), j) * (1 - 1e-9);
      const double to = v[m] * std::pow(hi + w, j) * (1 + 1e-9);
      auto first = std::lower_bound(v.begin() + static_cast<long>(m) + 1, v.end(), from);
      auto last = std::upper_bound(v.begin(), v.end(), to);
      for (auto it = first; it != last; ++it) {
        const auto n = static_cast<std::size_t>(it - v.begin());
        const CertReal& num_n = snapshot.entry(n).value;
        OmegaInterval iv{exp(log(num_n / num_m) / CertReal::from_int(j, prec)),
                         pow_int(cx0, 1 - static_cast<long>(j)) * neg_pow(num_n * num_m, exponent),
                         m, n, j};
        if (compare(iv.hi(), wlo) == Ordering::Less || compare(iv.lo(), whi) == Ordering::Greater)
          continue;
        cover.intervals.push_back(std::move(iv));
      }
    }
  }

  // Measure of the union inside the window.
  std::vector<std::pair<double, double>> segs;
  for (const OmegaInterval& iv : cover.intervals)
    segs.emplace_back(std::max(lo, iv.lo().lo_double()), std::min(hi, iv.hi().hi_double()));
  std::sort(segs.begin(), segs.end());
  double reach = lo;
  for (const auto& [a, b] : segs) {
    const double start = std::max(a, reach);
    if (b > start) {
      cover.measure += b - start;
      reach = b;
    }
  }

  // Intervals with nu_n beyond the snapshot: total length at most
  // 2 x0/(x0 - 1) zeta(e) sum_{nu > X} nu^{-e}, zeta over the finite system.
  const PrimeSystem& sys = snapshot.system();
  const CertReal one = CertReal::from_int(1, prec);
  const CertReal e = CertReal::exact(exponent, prec);
  CertReal zeta = one;
  for (std::size_t i = 0; i < sys.size(); ++i) zeta /= one - exp(-(e * log(sys.value(i, prec))));
  CertReal partial(prec);
  for (const BeurlingInteger& b : snapshot.entries()) partial += exp(-(e * log(b.value)));
  const CertReal missed = CertReal::from_int(2, prec) * cx0 / (cx0 - one) * zeta * (zeta - partial);
  cover.incomplete = cover.measure + missed.hi_double() >= hi - lo;
  return cover;
}

ExclusionCheck check_exclusion(const std::string& q_decimal, const IntegerSnapshot& snapshot,
                               double exponent, const PrecisionPolicy& policy) {
  const std::vector<double> v = approx_values(snapshot);
  const double vmax = v.back();
  const mpfr_prec_t prec = snapshot.policy().start;
  const CertReal q = CertReal::from_decimal(q_decimal, prec);
  ExclusionCheck out;
  out.min_log_margin = INFINITY;
  std::vector<CertReal> qpow{CertReal::from_int(1, prec)};

  auto certify = [&](std::size_t m, std::size_t n, unsigned j) {
    // |q^j - nu_n/nu_m| >= (nu_n nu_m)^{-e}, refining if needed.
    for (mpfr_prec_t p = prec; p <= policy.cap; p *= 2) {
      const CertReal qj = p == prec ? qpow[j] : pow_int(CertReal::from_decimal(q_decimal, p), j);
      const CertReal nm = p == prec ? snapshot.entry(m).value : integer_value(snapshot.system(), snapshot.entry(m).exponents, p);
      const CertReal nn = p == prec ? snapshot.entry(n).value : integer_value(snapshot.system(), snapshot.entry(n).exponents, p);
      const CertReal d = abs(qj - nn / nm);
      const CertReal thr = neg_pow(nn * nm, exponent);
      const double lm = std::log(d.mid()) + exponent * (std::log(nn.mid()) + std::log(nm.mid()));
      if (lm < out.min_log_margin) {
        out.min_log_margin = lm;
        out.m = m;
        out.n = n;
        out.j = j;
      }
      const Ordering o = compare(d, thr);
      if (o == Ordering::Greater) return true;
      if (o == Ordering::Less) return false;
    }
    return false;
  };

  // Only nu_n > nu_m matter since q^j > 1.  For fixed (m, j) the log margin
  // log|q^j nu_m - nu_n| + e log(nu_n nu_m) is increasing in nu_n above
  // q^j nu_m and concave below it, so its minimum is attained at the least
  // nu_n > nu_m or at a neighbour of q^j nu_m.
  for (std::size_t m = 0; m < v.size(); ++m) {
    for (unsigned j = 1;; ++j) {
      while (qpow.size() <= j) qpow.push_back(qpow.back() * q);
      const double y = qpow[j].mid() * v[m];
      const auto idx = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), y) - v.begin());
      std::vector<std::size_t> cand;
      if (m + 1 < v.size()) cand.push_back(m + 1);
      for (long d = -2; d <= 1; ++d) {
        const long n = static_cast<long>(idx) + d;
        if (n > static_cast<long>(m) + 1 && n < static_cast<long>(v.size()))
          cand.push_back(static_cast<std::size_t>(n));
      }
      for (std::size_t n : cand) {
        ++out.triples_checked;
        if (!certify(m, n, j)) out.ok = false;
      }
      if (y > vmax * (1 + 1e-9)) break;
    }
  }
  return out;
}

Admissible find_admissible(const std::string& x_decimal, const PrimeSystem& current,
                           double sigma_inf, const ConstructParams& params) {
  const mpfr_prec_t prec = params.policy.start;
  const CertReal x = CertReal::from_decimal(x_decimal, prec);
  const double xd = x.mid();
  // Shrunk slightly so that rounding the candidate to 40 digits stays inside.
  const double h = window_halfwidth(xd, sigma_inf, params.A) * (1 - 1e-6);
  const double x0 = params.x0;
  if (!(xd - h > x0)) throw PreconditionError("window around " + x_decimal + " reaches below x0");

  const IntegerSnapshot snap = enumerate_integers(current, params.cutoff, params.policy);
  const Cover cover = omega_cover(xd - h, xd + h, snap, 3 * sigma_inf, x0);
  Admissible out;
  out.cover_size = cover.intervals.size();
  out.cover_measure = cover.measure;
  out.window_halfwidth = h;

  auto admissible = [&](const std::string& dec) {
    const CertReal c = CertReal::from_decimal(dec, prec);
    if (!current.empty() && compare(c, current.value(current.size() - 1, prec)) != Ordering::Greater)
      return false;
    return std::all_of(cover.intervals.begin(), cover.intervals.end(),
                       [&](const OmegaInterval& iv) { return certainly_outside(c, iv); });
  };

  if (admissible(x_decimal)) {
    out.decimal = x_decimal;
    out.path = "center";
    return out;
  }
  for (int level = 0, steps = 8; level < 4; ++level, steps *= 8) {
    for (int i = 1; i <= steps; ++i) {
      for (int sign : {1, -1}) {
        const std::string dec = add_offset(x, sign * h * i / steps);
        if (admissible(dec)) {
          out.decimal = dec;
          out.path = level == 0 ? "grid" : "refined";
          return out;
        }
      }
    }
  }
  throw WindowExhausted("no admissible point in the window around " + x_decimal);
}

GapCertificate verify_gap_certificate(const IntegerSnapshot& snapshot, double exponent) {
  if (snapshot.size() < 2) throw PreconditionError("gap certificate needs two entries");
  GapCertificate c;
  c.exponent = exponent;
  c.verified_range = snapshot.bound();
  c.valid = true;
  const PrecisionPolicy& policy = snapshot.policy();
  std::optional<CertReal> best;
  for (std::size_t n = 0; n + 1 < snapshot.size(); ++n) {
    CertReal margin = snapshot.gaps()[n] - neg_pow(snapshot.entry(n + 1).value, exponent);
    for (mpfr_prec_t p = policy.start * 2; margin.contains_zero() && p <= policy.cap; p *= 2) {
      const CertReal a = integer_value(snapshot.system(), snapshot.entry(n).exponents, p);
      const CertReal b = integer_value(snapshot.system(), snapshot.entry(n + 1).exponents, p);
      margin = (b - a - neg_pow(b, exponent)).with_precision(policy.start);
    }
    if (!margin.certainly_nonnegative()) {
      c.valid = false;
      if (c.colliding_pairs.size() < 20)
        c.colliding_pairs.emplace_back(to_string(snapshot.entry(n).exponents),
                                       to_string(snapshot.entry(n + 1).exponents));
    }
    if (!best || mpfr_less_p(margin.lo().get(), best->lo().get())) {
      best = margin;
      c.min_index = n;
    }
  }
  c.min_margin = *best;
  return c;
}

PerturbResult perturb_system(const PrimeSystem& target, const ConstructParams& params_in) {
  if (target.empty()) throw PreconditionError("perturb_system needs a nonempty target");
  ConstructParams params = params_in;
  if (!(params.A > 0)) throw PreconditionError("A must be positive");
  if (!(params.cutoff >= 1)) throw PreconditionError("cutoff must be >= 1");
  if (!std::isfinite(params.sigma_c_bound)) throw PreconditionError("sigma_c_bound must be finite");
  const double q1 = target.approx(0);
  if (params.epsilon == 0) params.epsilon = (q1 - 1) / 2;
  if (!(params.epsilon > 0 && params.epsilon < q1 - 1))
    throw PreconditionError("epsilon must lie in (0, q1 - 1)");
  if (params.x0 == 0) params.x0 = 1 + 0.75 * params.epsilon;
  if (!(params.x0 > 1 + params.epsilon / 2 && params.x0 < 1 + params.epsilon))
    throw PreconditionError("x0 must lie in (1 + epsilon/2, 1 + epsilon)");

  PerturbResult result;
  result.epsilon = params.epsilon;
  result.x0 = params.x0;
  if (params.sigma_inf) {
    if (!(*params.sigma_inf > std::max(2.0, params.A)))
      throw PreconditionError("sigma_inf must exceed max(2, A)");
    result.sigma_inf = *params.sigma_inf;
  } else {
    // Every perturbed prime is >= max(q - q^{-A}, x0), so this system dominates zeta.
    std::vector<CertReal> lowest;
    for (std::size_t i = 0; i < target.size(); ++i) {
      const CertReal q = target.value(i);
      CertReal low = q - neg_pow(q, params.A);
      if (mpfr_cmp_d(low.lo().get(), params.x0) < 0) low = CertReal::exact(params.x0);
      lowest.push_back(std::move(low));
    }
    result.sigma_inf = sigma_select(lowest, params);
  }
  const double sigma = result.sigma_inf;
  const double e3 = 3 * sigma, e6 = 6 * sigma;

  std::mt19937_64 gen(params.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::string> chosen;
  PrimeSystem current = PrimeSystem::from_decimals({}, {Provenance::Perturbed, params.seed, ""});
  for (std::size_t k = 0; k < target.size(); ++k) {
    StepRecord step;
    step.target = target.decimal(k);
    const double xd = target.approx(k);
    const IntegerSnapshot before = enumerate_integers(current, params.cutoff, params.policy);

    Admissible adm;
    bool redraw = false;
    try {
      adm = find_admissible(step.target, current, sigma, params);
    } catch (const WindowExhausted&) {
      redraw = true;
    }
    const double h = window_halfwidth(xd, sigma, params.A) * (1 - 1e-6);
    step.window_width = 2 * h;
    const Cover cover = omega_cover(xd - h, xd + h, before, e3, params.x0);
    step.cover_size = cover.intervals.size();
    step.cover_measure = cover.measure;
    step.measure_constant = cover.measure / (std::pow(xd, -sigma / 4) * 2 * h);
    if (cover.incomplete) redraw = true;

    auto attempt = [&](const std::string& dec) -> std::optional<IntegerSnapshot> {
      const ExclusionCheck ex = check_exclusion(dec, before, e3, params.policy);
      if (!ex.ok) return std::nullopt;
      std::vector<std::string> next = chosen;
      next.push_back(dec);
      PrimeSystem sys;
      try {
        sys = PrimeSystem::from_decimals(next, {Provenance::Perturbed, params.seed, ""},
                                         params.policy);
      } catch (const PreconditionError&) {
        return std::nullopt;
      }
      step.exclusion_min_log_margin = ex.min_log_margin;
      return enumerate_integers(sys, params.cutoff, params.policy);
    };

    std::optional<IntegerSnapshot> after;
    std::string pick;
    if (!redraw) {
      pick = adm.decimal;
      step.path = adm.path;
      after = attempt(pick);
      if (after) {
        result.certificate = verify_gap_certificate(*after, e6);
        if (!result.certificate.valid) after.reset();
      }
      if (!after) redraw = true;
    }
    if (redraw) {
      // Below the effectiveness threshold: random shifts until the finite checks pass.
      step.path = "redraw";
      const CertReal x = target.value(k);
      for (step.redraws = 1; step.redraws <= params.max_redraws; ++step.redraws) {
        pick = add_offset(x, unit(gen) * h);
        if (mpfr_cmp_d(CertReal::from_decimal(pick).lo().get(), params.x0) <= 0) continue;
        after = attempt(pick);
        if (!after) continue;
        result.certificate = verify_gap_certificate(*after, e6);
        if (result.certificate.valid) break;
        after.reset();
      }
      if (!after) throw WindowExhausted("no admissible shift for " + step.target + " after " +
                                        std::to_string(params.max_redraws) + " draws");
    }
    chosen.push_back(pick);
    current = after->system();
    step.chosen = pick;
    step.certificate_valid = result.certificate.valid;
    result.steps.push_back(std::move(step));
  }
  result.system = current;

  CertReal worst(params.policy.start);
  for (std::size_t i = 0; i < target.size(); ++i) {
    const CertReal r = abs(current.value(i) - target.value(i)) *
                       pow(target.value(i), CertReal::exact(params.A));
    worst = max(worst, r);
  }
  result.budget_ratio = worst.hi_double();
  return result;
}

nlohmann::json to_json(const GapCertificate& c) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : c.colliding_pairs) pairs.push_back({a, b});
  return {{"exponent", c.exponent},
          {"min_margin", interval_json(c.min_margin)},
          {"min_index", c.min_index},
          {"verified_range", c.verified_range},
          {"colliding_pairs", pairs},
          {"valid", c.valid}};
}

nlohmann::json to_json(const PerturbResult& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const StepRecord& s : r.steps) {
    steps.push_back({{"target", s.target},
                     {"chosen", s.chosen},
                     {"path", s.path},
                     {"cover_size", s.cover_size},
                     {"cover_measure", s.cover_measure},
                     {"window_width", s.window_width},
                     {"measure_constant", s.measure_constant},
                     {"exclusion_min_log_margin", s.exclusion_min_log_margin},
                     {"certificate_valid", s.certificate_valid},
                     {"redraws", s.redraws}});
  }
  return {{"sigma_inf", r.sigma_inf},
          {"epsilon", r.epsilon},
          {"x0", r.x0},
          {"primes", r.system.decimals()},
          {"budget_ratio", r.budget_ratio},
          {"certificate", to_json(r.certificate)},
          {"steps", steps}};
}

}  // namespace beurling
