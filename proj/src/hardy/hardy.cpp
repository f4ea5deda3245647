#include <algorithm>
#include <cmath>
#include <random>

#include "beurling/hardy.hpp"
#include "beurling/json_io.hpp"
#include "beurling/random.hpp"
#include "beurling/zeta.hpp"

namespace beurling {

namespace {

// nu <= X, certified near the boundary.
bool at_most(const PrimeSystem& system, const ExponentVector& e, double log_nu, double X) {
  const double lx = std::log(X);
  if (log_nu < lx - 1e-9) return true;
  if (log_nu > lx + 1e-9) return false;
  const Ordering o = cmp_certified([&](mpfr_prec_t p) { return integer_value(system, e, p); },
                                   constant(X));
  if (o == Ordering::Undecided) return true;  // equal to X
  return o == Ordering::Less;
}

void require_same(const DirichletSeries& f, const DirichletSeries& g) {
  if (f.system != g.system && (!f.system || !g.system || f.system->decimals() != g.system->decimals()))
    throw PreconditionError("series over different prime systems");
}

DirichletSeries weighted_series(const IntegerSnapshot& snapshot, double a,
                                const std::vector<int>* mu) {
  DirichletSeries f;
  f.system = std::make_shared<const PrimeSystem>(snapshot.system());
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    const int m = mu ? (*mu)[i] : 1;
    if (m == 0) continue;
    const BeurlingInteger& b = snapshot.entry(i);
    f.coeffs.emplace(b.exponents, static_cast<double>(m) * std::exp(-a * b.log_approx));
  }
  return f;
}

}  // namespace

bool ExponentLess::operator()(const ExponentVector& a, const ExponentVector& b) const {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(), [](const Factor& x, const Factor& y) {
        return x.prime != y.prime ? x.prime < y.prime : x.exponent < y.exponent;
      });
}

DirichletSeries DirichletSeries::one(std::shared_ptr<const PrimeSystem> system) {
  DirichletSeries f;
  f.system = std::move(system);
  f.coeffs.emplace(ExponentVector{}, 1.0);
  return f;
}

std::complex<double> DirichletSeries::coeff(const ExponentVector& e) const {
  const auto it = coeffs.find(e);
  return it == coeffs.end() ? std::complex<double>{} : it->second;
}

std::complex<double> DirichletSeries::evaluate(std::complex<double> s) const {
  std::complex<double> sum{};
  for (const auto& [e, a] : coeffs)
    sum += a * std::exp(-(s + shift) * integer_log_approx(*system, e));
  return sum;
}

Character Character::trivial(std::size_t primes) {
  return Character{std::vector<std::complex<double>>(primes, 1.0)};
}

Character Character::random(std::size_t primes, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Character chi;
  for (std::size_t i = 0; i < primes; ++i) chi.values.push_back(std::polar(1.0, 2 * M_PI * uniform53(gen)));
  return chi;
}

std::complex<double> Character::operator()(const ExponentVector& e) const {
  std::complex<double> v = 1.0;
  for (const Factor& f : e) {
    if (f.prime >= values.size()) throw PreconditionError("character shorter than the system");
    v *= std::pow(values[f.prime], static_cast<int>(f.exponent));
  }
  return v;
}

Character Character::conj() const {
  Character c = *this;
  for (auto& v : c.values) v = std::conj(v);
  return c;
}

double h2_norm(const DirichletSeries& f) {
  double s = 0;
  for (const auto& [e, a] : f.coeffs) s += std::norm(a);
  return std::sqrt(s);
}

Product multiply(const DirichletSeries& f, const DirichletSeries& g, double X) {
  require_same(f, g);
  Product out;
  out.series.system = f.system;
  out.series.shift = f.shift;
  Coefficients dropped;
  std::vector<double> lg;
  for (const auto& [e, b] : g.coeffs) lg.push_back(integer_log_approx(*g.system, e));
  for (const auto& [ea, a] : f.coeffs) {
    const double la = integer_log_approx(*f.system, ea);
    std::size_t i = 0;
    for (const auto& [eb, b] : g.coeffs) {
      const double l = la + lg[i++];
      ExponentVector e = beurling::multiply(ea, eb);
      if (at_most(*f.system, e, l, X))
        out.series.coeffs[std::move(e)] += a * b;
      else
        dropped[std::move(e)] += a * b;
    }
  }
  for (auto it = out.series.coeffs.begin(); it != out.series.coeffs.end();)
    it = it->second == 0.0 ? out.series.coeffs.erase(it) : std::next(it);
  for (const auto& [e, c] : dropped) {
    if (c == 0.0) continue;
    ++out.discarded_terms;
    out.discarded_l1 += std::abs(c);
    out.discarded_l2 += std::norm(c);
  }
  out.discarded_l2 = std::sqrt(out.discarded_l2);
  return out;
}

NormResult even_p_norm(const DirichletSeries& f, int p, double X) {
  if (p == 2) return {h2_norm(f), false, 0.0};
  if (p != 4) throw PreconditionError("even_p_norm supports p = 2 and p = 4");
  const Product sq = multiply(f, f, X);
  return {std::sqrt(h2_norm(sq.series)), sq.discarded_terms > 0, sq.discarded_l2};
}

DirichletSeries twist(const DirichletSeries& f, const Character& chi) {
  DirichletSeries out = f;
  for (auto& [e, a] : out.coeffs) a *= chi(e);
  return out;
}

DirichletSeries zeta_series(const IntegerSnapshot& snapshot, double a) {
  return weighted_series(snapshot, a, nullptr);
}

DirichletSeries mobius_series(const IntegerSnapshot& snapshot, double a) {
  const std::vector<int> mu = mobius_table(snapshot);
  return weighted_series(snapshot, a, &mu);
}

std::vector<OuterStep> outer_approx_test(const PrimeSystem& system, double epsilon,
                                         const std::vector<double>& limits,
                                         const std::optional<Character>& chi) {
  if (!(epsilon > 0 && epsilon < 0.5)) throw PreconditionError("epsilon must lie in (0, 1/2)");
  if (limits.empty()) throw PreconditionError("outer test needs at least one limit");
  const double top = *std::max_element(limits.begin(), limits.end());
  const IntegerSnapshot full = enumerate_integers(system, top);
  const std::vector<int> mu = mobius_table(full);
  const double a = 0.5 + epsilon;
  std::vector<OuterStep> out;
  for (double X : limits) {
    const std::size_t n = count_functions(full, X).integers;
    DirichletSeries p, f;
    p.system = f.system = std::make_shared<const PrimeSystem>(system);
    for (std::size_t i = 0; i < n; ++i) {
      const BeurlingInteger& b = full.entry(i);
      const double w = std::exp(-a * b.log_approx);
      p.coeffs.emplace(b.exponents, w);
      if (mu[i] != 0) f.coeffs.emplace(b.exponents, mu[i] * w);
    }
    if (chi) {
      p = twist(p, *chi);
      f = twist(f, *chi);
    }
    const Product pf = multiply(p, f, X * X);
    DirichletSeries diff = pf.series;
    for (auto& [e, c] : diff.coeffs) c = -c;
    diff.coeffs[ExponentVector{}] += 1.0;
    OuterStep s;
    s.X = X;
    s.e = h2_norm(diff);
    s.terms = n;
    s.discarded = pf.discarded_l2;
    s.degenerate = n <= 1;
    out.push_back(s);
  }
  return out;
}

HelsonReport helson_demo(const PrimeSystem& system, double epsilon, const std::vector<double>& limits,
                         const std::vector<double>& sigmas) {
  HelsonReport r;
  r.epsilon = epsilon;
  r.outer = outer_approx_test(system, epsilon, limits);
  const double top = *std::max_element(limits.begin(), limits.end());
  const IntegerSnapshot full = enumerate_integers(system, top);
  const std::vector<int> mu = mobius_table(full);

  std::vector<double> sorted = limits;
  std::sort(sorted.begin(), sorted.end());
  double prev = 1;
  std::size_t prev_primes = 0;
  for (double X : sorted) {
    const std::size_t n = count_functions(full, X).integers;
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += mu[i] * std::exp(-full.entry(i).log_approx);
    r.mobius_sums.emplace_back(X, s);
    double prod = 1;
    std::size_t primes = 0;
    for (; primes < system.size() && system.approx(primes) <= X; ++primes)
      prod *= 1 - 1 / system.approx(primes);
    r.euler_products.emplace_back(X, prod);
    if (primes > prev_primes && !(prod < prev)) r.products_decreasing = false;
    prev = prod;
    prev_primes = primes;
  }
  std::vector<const OuterStep*> live;
  for (const OuterStep& s : r.outer)
    if (!s.degenerate) live.push_back(&s);
  std::sort(live.begin(), live.end(), [](auto a, auto b) { return a->X < b->X; });
  r.outer_trend_down = live.size() >= 2 && live.back()->e < live.front()->e;

  const double a = 0.5 + epsilon;
  DirichletSeries f = mobius_series(full, a);
  for (double sigma : sigmas) {
    if (!(sigma > 0.5 - epsilon)) throw PreconditionError("evaluation needs Re s > 1/2 - epsilon");
    HelsonEval ev;
    ev.sigma = sigma;
    ev.X = top;
    ev.partial = f.evaluate(sigma);
    const double shifted = sigma + a;
    const ZetaEval z = zeta_euler(system, shifted, 0, system.approx(system.size() - 1) + 1);
    ev.euler_inverse = CertComplex::exact(1, 0) / z.value;
    ev.tail_bound = zeta_sum(full, shifted, 0).tail_bound;
    const double dist = std::hypot(ev.partial.real() - ev.euler_inverse.re.mid(),
                                   ev.partial.imag() - ev.euler_inverse.im.mid());
    const double radius = std::hypot(ev.euler_inverse.re.width(), ev.euler_inverse.im.width());
    ev.agrees = std::isfinite(ev.tail_bound) &&
                dist <= ev.tail_bound + radius + 1e-12 * (1 + std::abs(ev.partial));
    r.evaluations.push_back(ev);
  }
  return r;
}

nlohmann::json to_json(const OuterStep& s) {
  return {{"X", s.X}, {"e", s.e}, {"terms", s.terms}, {"discarded", s.discarded},
          {"degenerate", s.degenerate}};
}

nlohmann::json to_json(const HelsonReport& r) {
  nlohmann::json outer = nlohmann::json::array(), evals = nlohmann::json::array();
  for (const OuterStep& s : r.outer) outer.push_back(to_json(s));
  for (const HelsonEval& e : r.evaluations) {
    evals.push_back({{"sigma", e.sigma},
                     {"t", e.t},
                     {"X", e.X},
                     {"partial", {e.partial.real(), e.partial.imag()}},
                     {"euler_inverse", interval_json(e.euler_inverse)},
                     {"tail_bound", e.tail_bound},
                     {"agrees", e.agrees}});
  }
  nlohmann::json sums = nlohmann::json::array(), prods = nlohmann::json::array();
  for (const auto& [x, v] : r.mobius_sums) sums.push_back({x, v});
  for (const auto& [x, v] : r.euler_products) prods.push_back({x, v});
  return {{"epsilon", r.epsilon},
          {"mobius_sums", sums},
          {"euler_products", prods},
          {"products_decreasing", r.products_decreasing},
          {"outer", outer},
          {"outer_trend_down", r.outer_trend_down},
          {"evaluations", evals}};
}

}  // namespace beurling
