#include <algorithm>
#include <cmath>
#include <limits>

#include "beurling/json_io.hpp"
#include "beurling/random.hpp"

namespace beurling {

namespace {

constexpr int kDigits = 40;

// li_inv to roughly 45 significant digits of the result.
CertReal li_inv_at(double y, const PrecisionPolicy& policy) {
  const double tol = 1e-45 * std::max(1.0, y * std::log(y + 2));
  return li_inv(constant(y), tol, policy);
}

CertReal threshold_A(const CertReal& xk, double m) {
  const mpfr_prec_t p = xk.precision();
  const CertReal lx = log(xk);
  CertReal shape = sqrt(lx);
  if (m > 1) shape += sqrt(log(CertReal::exact(m, p)));
  return CertReal::from_int(8, p) * sqrt(xk / lx) * shape;
}

CertComplex power_sum(const PrimeSystem& system, std::size_t count, double t) {
  CertComplex sum(system.precision());
  for (std::size_t i = 0; i < count; ++i) sum += pow_neg(system.value(i), 0, t);
  return sum;
}

CertReal modulus(const CertComplex& z) { return sqrt(sqr(z.re) + sqr(z.im)); }

}  // namespace

double uniform53(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::vector<double> uniform_draws(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 gen(seed);
  std::vector<double> u(count);
  for (double& v : u) v = uniform53(gen);
  return u;
}

Refinable grid_point(double n) {
  return [n](mpfr_prec_t prec) {
    return li_inv(constant(n), std::ldexp(1.0, -static_cast<int>(prec) + 8),
                  PrecisionPolicy{prec, std::max<mpfr_prec_t>(prec * 4, kDefaultPrecisionCap)})
        .with_precision(prec);
  };
}

std::vector<CertReal> sample_grid(std::size_t n_max, const PrecisionPolicy& policy) {
  std::vector<CertReal> x;
  x.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n)
    x.push_back(li_inv_at(static_cast<double>(n), policy).with_precision(policy.start));
  return x;
}

PrimeSystem sample_primes(std::uint64_t seed, std::size_t n_max, const PrecisionPolicy& policy) {
  return sample_primes_from(uniform_draws(seed, n_max), {Provenance::Sampled, seed, kGeneratorName},
                            policy);
}

PrimeSystem sample_primes_from(const std::vector<double>& draws, Origin origin,
                               const PrecisionPolicy& policy) {
  if (draws.empty()) throw PreconditionError("sample needs n_max >= 1");
  std::vector<std::string> decimals;
  decimals.reserve(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double u = draws[i];
    if (!(u >= 0 && u < 1)) throw PreconditionError("uniform draws must lie in [0, 1)");
    const double n = static_cast<double>(i + 1);
    const CertReal q = li_inv_at(n + u, policy);
    std::string dec = q.hi().to_string(kDigits, MPFR_RNDU);
    const Refinable lq = [&dec](mpfr_prec_t p) { return li(CertReal::from_decimal(dec, p)); };
    if (cmp_certified(lq, constant(n), policy) != Ordering::Greater ||
        cmp_certified(lq, constant(n + 1), policy) != Ordering::Less)
      throw PrecisionError("sampled prime " + dec + " not certified inside its li-box");
    decimals.push_back(std::move(dec));
  }
  return PrimeSystem::from_decimals(std::move(decimals), std::move(origin), policy);
}

std::size_t grid_index(const PrimeSystem& system, std::size_t i) {
  const std::string l = system.label(i);
  if (l.size() > 1 && l[0] == 'q' && std::all_of(l.begin() + 1, l.end(), ::isdigit))
    return std::stoul(l.substr(1));
  return i + 1;
}

EventRecord check_A_event(const PrimeSystem& system, std::size_t k, double m,
                          const PrecisionPolicy& policy) {
  if (k < 1 || k > system.size()) throw PreconditionError("A event needs 1 <= k <= size");
  if (!(m >= 1)) throw PreconditionError("A event needs m >= 1");
  EventRecord e;
  e.kind = 'A';
  e.k = k;
  e.parameter = m;
  const Refinable x1 = grid_point(static_cast<double>(grid_index(system, 0)));
  const Refinable xk = grid_point(static_cast<double>(grid_index(system, k - 1)));
  const LiMoment mom = li_moment(x1, xk, m, policy);
  e.rigorous = mom.rigorous;
  e.statistic = modulus(power_sum(system, k, m) - mom.value);
  if (!mom.rigorous) e.statistic = e.statistic.widened(mom.error_estimate);
  e.threshold = threshold_A(xk(policy.start), m);
  const Ordering o = compare(e.statistic, e.threshold);
  e.triggered = o != Ordering::Less;
  e.undecided = o == Ordering::Undecided;
  return e;
}

EventRecord check_B_event(const PrimeSystem& system, std::size_t k, unsigned j, double A,
                          double cutoff, const PrecisionPolicy& policy) {
  if (k < 1 || k > system.size()) throw PreconditionError("B event needs 1 <= k <= size");
  if (j < 1 || !(A > 0)) throw PreconditionError("B event needs j >= 1 and A > 0");
  EventRecord e;
  e.kind = 'B';
  e.k = k;
  e.parameter = j;
  const mpfr_prec_t prec = policy.start;
  const CertReal xk = grid_point(static_cast<double>(grid_index(system, k - 1)))(prec);
  // scale = x_k^{1-(A+1)j}
  const double log_scale = (1 - (A + 1) * j) * std::log(xk.mid());
  const CertReal scale = exp(CertReal::exact(1 - (A + 1) * j, prec) * log(xk));
  e.threshold = scale;
  if (log_scale * M_LOG2E < -static_cast<double>(policy.cap)) {
    e.note = "width-underflow";
    e.statistic = CertReal::from_int(0, prec);
    return e;
  }

  const IntegerSnapshot snap = enumerate_integers(system.prefix(k - 1), cutoff, policy);
  std::vector<double> v;
  for (const BeurlingInteger& b : snap.entries()) v.push_back(b.value.mid());
  double s1 = 0, s0 = 0;
  for (double x : v) {
    s1 += std::pow(x, -(1 + A));
    s0 += std::pow(x, -A);
  }
  e.measure = 2 * std::exp(log_scale) * s1 * s0;

  const CertReal q = system.value(k - 1);
  const double qd = q.mid();
  const CertReal cj = CertReal::from_int(j, prec);
  const CertReal ca = CertReal::exact(A, prec);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < v.size(); ++a) {
    const double w = std::exp(log_scale) * std::pow(v[a], -(1 + A));
    const double lo = v[a] * std::pow(std::max(qd - w, 0.0), j) * (1 - 1e-9);
    const double hi = v[a] * std::pow(qd + w, j) * (1 + 1e-9);
    auto first = std::lower_bound(v.begin(), v.end(), lo);
    auto last = std::upper_bound(v.begin(), v.end(), hi);
    // nearest neighbours always, for the reported statistic
    const auto near = std::lower_bound(v.begin(), v.end(), v[a] * std::pow(qd, j));
    if (near != v.begin() && near - 1 < first) first = near - 1;
    if (near != v.end() && near + 1 > last) last = near + 1;
    for (auto it = first; it != last; ++it) {
      const auto b = static_cast<std::size_t>(it - v.begin());
      const CertReal& nu = snap.entry(a).value;
      const CertReal& mu = snap.entry(b).value;
      const CertReal centre = exp(log(mu / nu) / cj);
      const CertReal dist = abs(q - centre);
      const CertReal hw = scale * exp(-(CertReal::exact(1 + A, prec) * log(nu))) *
                          exp(-(ca * log(mu)));
      const Ordering o = compare(dist, hw);
      const double ratio = dist.mid() / hw.mid();
      if (ratio < best) {
        best = ratio;
        e.statistic = dist;
        e.threshold = hw;
        e.note = "nu=" + to_string(snap.entry(a).exponents) + " mu=" + to_string(snap.entry(b).exponents);
      }
      if (o == Ordering::Less) {
        e.triggered = true;
        e.statistic = dist;
        e.threshold = hw;
        e.note = "nu=" + to_string(snap.entry(a).exponents) + " mu=" + to_string(snap.entry(b).exponents);
        return e;
      }
      if (o == Ordering::Undecided) {
        e.undecided = true;
        e.note = "undecided at nu=" + to_string(snap.entry(a).exponents) +
                 " mu=" + to_string(snap.entry(b).exponents);
      }
    }
  }
  return e;
}

EventSweep sweep_events(const PrimeSystem& system, const SweepConfig& config,
                        const PrecisionPolicy& policy) {
  EventSweep out;
  const std::size_t K = config.K == 0 ? system.size() : std::min(config.K, system.size());
  for (std::size_t k = 1; k <= K; ++k) {
    const CertReal xk = grid_point(static_cast<double>(grid_index(system, k - 1)))(policy.start);
    for (std::size_t m = 1; m <= config.M; ++m) {
      const CertReal thr = threshold_A(xk, static_cast<double>(m));
      // |statistic| <= k + (li(x_k) - li(x_1)) = 2k - 1 whenever the grid is intact
      if (grid_index(system, k - 1) == k && mpfr_cmp_ui(thr.lo().get(), 2 * k) > 0) {
        EventRecord e;
        e.kind = 'A';
        e.k = k;
        e.parameter = static_cast<double>(m);
        e.statistic = CertReal::hull(CertReal::from_int(0), CertReal::from_int(2 * static_cast<long>(k) - 1));
        e.threshold = thr;
        e.note = "vacuous";
        ++out.vacuous;
        out.events.push_back(std::move(e));
        continue;
      }
      out.events.push_back(check_A_event(system, k, static_cast<double>(m), policy));
    }
    for (unsigned j = 1; j <= config.J; ++j) {
      EventRecord e = check_B_event(system, k, j, config.A, config.cutoff, policy);
      if (e.note == "width-underflow") ++out.underflow;
      out.events.push_back(std::move(e));
    }
  }
  for (const EventRecord& e : out.events) out.triggered += e.triggered;
  return out;
}

Deviation exp_sum_deviation(const PrimeSystem& system, double x, double t,
                            const PrecisionPolicy& policy) {
  if (system.empty()) throw PreconditionError("deviation needs a nonempty system");
  const Refinable x1 = grid_point(static_cast<double>(grid_index(system, 0)));
  const CertReal x1v = x1(policy.start);
  if (mpfr_cmp_d(x1v.hi().get(), x) > 0) throw PreconditionError("deviation needs x >= x_1");
  Deviation d;
  d.x = x;
  d.t = t;
  const std::size_t count = system.count_le(constant(x), policy);
  const LiMoment mom = li_moment(x1, constant(x), t, policy);
  d.rigorous = mom.rigorous;
  d.statistic = modulus(power_sum(system, count, t) - mom.value);
  if (!mom.rigorous) d.statistic = d.statistic.widened(mom.error_estimate);
  const double lx = std::log(x + 1);
  d.ratio = d.statistic.hi_double() / (std::sqrt(x / lx) * (std::sqrt(lx) + std::sqrt(std::log(std::fabs(t) + 1))));
  return d;
}

double max_pnt_deviation(const PrimeSystem& system) {
  double worst = 0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const CertReal l = li(system.value(i));
    const auto n = static_cast<long>(i + 1);
    worst = std::max(worst, abs(l - CertReal::from_int(n)).hi_double());
    worst = std::max(worst, abs(l - CertReal::from_int(n - 1)).hi_double());
  }
  return worst;
}

PrimeSystem remove_exceptional(const PrimeSystem& system, const std::vector<EventRecord>& events) {
  std::vector<std::size_t> drop;
  for (const EventRecord& e : events)
    if (e.kind == 'B' && e.triggered) drop.push_back(e.k - 1);
  PrimeSystem labelled = system;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < system.size(); ++i) labels.push_back(system.label(i));
  labelled.set_labels(std::move(labels));
  return labelled.without(drop);
}

PairwiseAudit pairwise_gap_audit(const IntegerSnapshot& snapshot, double A) {
  if (snapshot.size() < 2) throw PreconditionError("pairwise audit needs two entries");
  PairwiseAudit r;
  r.A = A;
  std::optional<CertReal> best;
  const CertReal ca = CertReal::exact(A, snapshot.policy().start);
  for (std::size_t n = 0; n + 1 < snapshot.size(); ++n) {
    const CertReal w = snapshot.gaps()[n] *
                       exp(ca * log(snapshot.entry(n).value * snapshot.entry(n + 1).value));
    if (!best || mpfr_less_p(w.lo().get(), best->lo().get())) {
      best = w;
      r.min_index = n;
    }
  }
  r.min_weighted = *best;
  r.valid = mpfr_cmp_si(best->lo().get(), 1) >= 0;
  return r;
}

DensityFit density_fit(const IntegerSnapshot& snapshot, std::size_t points) {
  if (snapshot.size() < 100) throw PreconditionError("density fit needs >= 100 integers");
  if (points < 4) throw PreconditionError("density fit needs >= 4 grid points");
  DensityFit f;
  const double top = snapshot.bound();
  const double bottom = std::max(2.0, top / 1e6);
  std::vector<std::pair<double, double>> xn;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = bottom * std::pow(top / bottom, static_cast<double>(i) / (points - 1));
    xn.emplace_back(x, static_cast<double>(count_functions(snapshot, std::min(x, top)).integers));
  }
  double sxn = 0, sxx = 0;
  for (const auto& [x, n] : xn) {
    sxn += x * n;
    sxx += x * x;
  }
  f.a = sxn / sxx;
  double sl = 0, sr = 0, sll = 0, slr = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < xn.size(); ++i) {
    const auto [x, n] = xn[i];
    const double r = n - f.a * x;
    f.residuals.emplace_back(x, r);
    if (i >= xn.size() / 2 && std::fabs(r) > f.a * x / 2) f.nonlinear = true;
    if (std::fabs(r) > 0) {
      const double lx = std::log(x), lr = std::log(std::fabs(r));
      sl += lx;
      sr += lr;
      sll += lx * lx;
      slr += lx * lr;
      ++used;
    }
  }
  if (used >= 2) {
    const double u = static_cast<double>(used);
    const double den = u * sll - sl * sl;
    if (den > 0) f.residual_exponent = (u * slr - sl * sr) / den;
  }
  return f;
}

nlohmann::json to_json(const EventRecord& e) {
  return {{"kind", std::string(1, e.kind)},
          {"k", e.k},
          {"parameter", e.parameter},
          {"triggered", e.triggered},
          {"statistic", interval_json(e.statistic, 20)},
          {"threshold", interval_json(e.threshold, 20)},
          {"rigorous", e.rigorous},
          {"undecided", e.undecided},
          {"note", e.note},
          {"measure", e.measure}};
}

nlohmann::json to_json(const Deviation& d) {
  return {{"x", d.x},
          {"t", d.t},
          {"statistic", interval_json(d.statistic, 20)},
          {"ratio", d.ratio},
          {"rigorous", d.rigorous}};
}

nlohmann::json to_json(const PairwiseAudit& a) {
  return {{"A", a.A},
          {"min_weighted", interval_json(a.min_weighted, 20)},
          {"min_index", a.min_index},
          {"valid", a.valid}};
}

nlohmann::json to_json(const DensityFit& f) {
  nlohmann::json res = nlohmann::json::array();
  for (const auto& [x, r] : f.residuals) res.push_back({x, r});
  return {{"a", f.a},
          {"residual_exponent", f.residual_exponent},
          {"nonlinear", f.nonlinear},
          {"residuals", res}};
}

}  // namespace beurling
