#include <algorithm>
#include <cmath>

#include "beurling/systems.hpp"

namespace beurling {

std::string to_string(const ExponentVector& e) {
  if (e.empty()) return "1";
  std::string out;
  for (const Factor& f : e) {
    if (!out.empty()) out += '*';
    out += 'q' + std::to_string(f.prime + 1);
    if (f.exponent != 1) out += '^' + std::to_string(f.exponent);
  }
  return out;
}

ExponentVector multiply(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].prime < b[j].prime)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].prime < a[i].prime) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].prime, a[i].exponent + b[j].exponent});
      ++i;
      ++j;
    }
  }
  return out;
}

std::size_t omega(const ExponentVector& e) {
  std::size_t n = 0;
  for (const Factor& f : e) n += f.exponent;
  return n;
}

bool is_squarefree(const ExponentVector& e) {
  return std::all_of(e.begin(), e.end(), [](const Factor& f) { return f.exponent == 1; });
}

CertReal integer_value(const PrimeSystem& system, const ExponentVector& e, mpfr_prec_t prec) {
  CertReal v = CertReal::from_int(1, prec);
  for (const Factor& f : e) v *= pow_int(system.value(f.prime, prec), f.exponent);
  return v;
}

double integer_log_approx(const PrimeSystem& system, const ExponentVector& e) {
  double s = 0.0;
  for (const Factor& f : e) s += f.exponent * system.log_approx(f.prime);
  return s;
}

std::size_t ExponentHash::operator()(const ExponentVector& e) const {
  std::size_t h = 1469598103934665603ULL;
  for (const Factor& f : e) {
    h ^= (static_cast<std::size_t>(f.prime) << 32) | f.exponent;
    h *= 1099511628211ULL;
  }
  return h;
}

IntegerSnapshot::IntegerSnapshot(PrimeSystem system, double bound,
                                 std::vector<BeurlingInteger> entries, std::vector<CertReal> gaps,
                                 PrecisionPolicy policy)
    : system_(std::move(system)),
      bound_(bound),
      entries_(std::move(entries)),
      gaps_(std::move(gaps)),
      policy_(policy) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].exponents, i);
}

std::optional<std::size_t> IntegerSnapshot::find(const ExponentVector& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Refinable IntegerSnapshot::refinable(std::size_t i) const {
  return [sys = system_, e = entries_.at(i).exponents](mpfr_prec_t prec) {
    return integer_value(sys, e, prec);
  };
}

namespace {

constexpr double kLogSlack = 1e-9;

struct Enumerator {
  const PrimeSystem& system;
  double log_bound;
  std::vector<ExponentVector> out;
  ExponentVector current;

  // Products with largest prime index >= start; current has log value `lv`.
  void expand(std::size_t start, double lv) {
    for (std::size_t i = start; i < system.size(); ++i) {
      const double lq = system.log_approx(i);
      if (lv + lq > log_bound + kLogSlack) break;
      double l = lv;
      std::uint32_t a = 0;
      while (l + lq <= log_bound + kLogSlack) {
        l += lq;
        ++a;
        current.push_back({static_cast<std::uint32_t>(i), a});
        out.push_back(current);
        expand(i + 1, l);
        current.pop_back();
      }
    }
  }
};

Ordering certified_order(const PrimeSystem& system, const ExponentVector& a,
                         const ExponentVector& b, const PrecisionPolicy& policy) {
  const Ordering o = cmp_certified(
      [&](mpfr_prec_t p) { return integer_value(system, a, p); },
      [&](mpfr_prec_t p) { return integer_value(system, b, p); }, policy);
  if (o == Ordering::Undecided)
    throw OrderingUndecided("cannot separate Beurling integers " + to_string(a) + " and " +
                                to_string(b) + " at the precision cap",
                            to_string(a), to_string(b));
  return o;
}

}  // namespace

IntegerSnapshot enumerate_integers(const PrimeSystem& system, double bound,
                                   const PrecisionPolicy& policy) {
  if (!(bound >= 1) || !std::isfinite(bound))
    throw PreconditionError("enumerate_integers requires a finite bound >= 1");
  Enumerator en{system, std::log(bound), {}, {}};
  en.out.emplace_back();
  en.expand(0, 0.0);

  const mpfr_prec_t prec = policy.start;
  const Refinable x = constant(bound);
  std::vector<BeurlingInteger> entries;
  entries.reserve(en.out.size());
  for (ExponentVector& e : en.out) {
    BeurlingInteger b{std::move(e), CertReal(prec), 0.0};
    b.log_approx = integer_log_approx(system, b.exponents);
    b.value = integer_value(system, b.exponents, prec);
    if (b.log_approx > std::log(bound) - kLogSlack) {
      Ordering o = compare(b.value, CertReal::exact(bound, prec));
      if (o == Ordering::Undecided) {
        o = cmp_certified([&](mpfr_prec_t p) { return integer_value(system, b.exponents, p); }, x,
                          policy);
        if (o == Ordering::Undecided) {
          // Certified equality cannot be shown; only exact values can tie.
          const CertReal hi = integer_value(system, b.exponents, policy.cap);
          if (!(hi.is_exact() && hi.contains(bound)))
            throw PrecisionError("cannot decide whether " + to_string(b.exponents) +
                                 " lies below the bound");
        }
      }
      if (o == Ordering::Greater) continue;
    }
    entries.push_back(std::move(b));
  }

  std::sort(entries.begin(), entries.end(), [&](const BeurlingInteger& a, const BeurlingInteger& b) {
    const double d = a.log_approx - b.log_approx;
    if (std::fabs(d) > 1e-12 * std::max(1.0, std::fabs(a.log_approx))) return d < 0;
    const Ordering o = compare(a.value, b.value);
    if (o != Ordering::Undecided) return o == Ordering::Less;
    if (a.exponents == b.exponents) return false;
    return certified_order(system, a.exponents, b.exponents, policy) == Ordering::Less;
  });

  std::vector<CertReal> gaps;
  gaps.reserve(entries.size());
  for (std::size_t n = 0; n + 1 < entries.size(); ++n) {
    CertReal g = entries[n + 1].value - entries[n].value;
    for (mpfr_prec_t p = prec * 2; !g.certainly_positive(); p *= 2) {
      if (p > policy.cap) {
        certified_order(system, entries[n].exponents, entries[n + 1].exponents, policy);
        throw OrderingUndecided("gap not certified positive", to_string(entries[n].exponents),
                                to_string(entries[n + 1].exponents));
      }
      g = (integer_value(system, entries[n + 1].exponents, p) -
           integer_value(system, entries[n].exponents, p))
              .with_precision(prec);
    }
    gaps.push_back(std::move(g));
  }
  return IntegerSnapshot(system, bound, std::move(entries), std::move(gaps), policy);
}

Counts count_functions(const IntegerSnapshot& snapshot, const Refinable& x) {
  const PrecisionPolicy& policy = snapshot.policy();
  const CertReal xv = x(policy.start);
  if (compare(xv, CertReal::exact(snapshot.bound(), policy.start)) == Ordering::Greater)
    throw PreconditionError("count_functions: x exceeds the snapshot bound");
  Counts c;
  // Entries are increasing: binary search on certified comparison, ties inclusive.
  auto le = [&](std::size_t i) {
    Ordering o = compare(snapshot.entry(i).value, xv);
    if (o == Ordering::Undecided) o = cmp_certified(snapshot.refinable(i), x, policy);
    return o != Ordering::Greater;
  };
  std::size_t lo = 0, hi = snapshot.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (le(mid)) lo = mid + 1;
    else hi = mid;
  }
  c.integers = lo;
  c.primes = snapshot.system().count_le(x, policy);
  return c;
}

Counts count_functions(const IntegerSnapshot& snapshot, double x) {
  return count_functions(snapshot, constant(x));
}

MinGap min_gap_exponent(const IntegerSnapshot& snapshot, double c2) {
  if (snapshot.size() < 2) throw PreconditionError("min_gap_exponent needs two entries");
  if (!(c2 >= 0)) throw PreconditionError("min_gap_exponent requires c2 >= 0");
  const mpfr_prec_t prec = snapshot.policy().start;
  const CertReal e = CertReal::exact(c2, prec);
  std::optional<MinGap> best;
  for (std::size_t n = 0; n + 1 < snapshot.size(); ++n) {
    CertReal v = snapshot.gaps()[n];
    if (c2 != 0) v *= pow(snapshot.entry(n + 1).value, e);
    if (!best || mpfr_less_p(v.lo().get(), best->value.lo().get()))
      best = MinGap{std::move(v), n};
  }
  return *best;
}

}  // namespace beurling
