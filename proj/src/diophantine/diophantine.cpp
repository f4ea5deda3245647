#include <algorithm>
#include <cmath>
#include <limits>

#include "beurling/diophantine.hpp"
#include "beurling/json_io.hpp"

namespace beurling {

namespace {

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  return s;
}

Refinable parse_atom(const std::string& expr) {
  const std::string s = trim(expr);
  if (s == "pi") return [](mpfr_prec_t p) { return CertReal::pi(p); };
  if (s == "e") return [](mpfr_prec_t p) { return exp(CertReal::from_int(1, p)); };
  if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
    const Refinable inner = parse_atom(s.substr(5, s.size() - 6));
    return [inner](mpfr_prec_t p) { return sqrt(inner(p)); };
  }
  return constant_decimal(s);
}

CertReal log_abs(const CertReal& x) { return log(abs(x)); }

}  // namespace

Refinable parse_target(const std::string& expr) {
  const auto slash = expr.rfind('/');
  if (slash == std::string::npos) return parse_atom(expr);
  const Refinable num = parse_target(expr.substr(0, slash));
  const Refinable den = parse_atom(expr.substr(slash + 1));
  if (den(kDefaultPrecision).contains_zero()) throw PreconditionError("target divides by zero");
  return [num, den](mpfr_prec_t p) { return num(p) / den(p); };
}

std::vector<ApproxRecord> best_approximations(const Refinable& x, const IntegerSnapshot& snapshot,
                                              std::size_t top_k) {
  const PrecisionPolicy& policy = snapshot.policy();
  const CertReal xv = x(policy.start);
  if (!xv.certainly_positive()) throw PreconditionError("approximation target must be > 0");
  std::vector<double> v;
  for (const BeurlingInteger& b : snapshot.entries()) v.push_back(b.value.mid());
  const double xd = xv.mid();

  std::vector<ApproxRecord> out;
  for (std::size_t n = 0; n < v.size(); ++n) {
    const auto idx = static_cast<long>(std::lower_bound(v.begin(), v.end(), xd * v[n]) - v.begin());
    std::vector<std::pair<std::size_t, CertReal>> cand;
    for (long m = idx - 1; m <= idx + 1; ++m) {
      if (m < 0 || m >= static_cast<long>(v.size())) continue;
      const auto mm = static_cast<std::size_t>(m);
      cand.emplace_back(mm, abs(xv - snapshot.entry(mm).value / snapshot.entry(n).value));
    }
    if (cand.empty()) continue;
    std::sort(cand.begin(), cand.end(),
              [](const auto& a, const auto& b) { return a.second.mid() < b.second.mid(); });

    ApproxRecord r;
    r.target = xv;
    r.numerator = snapshot.entry(cand[0].first);
    r.denominator = snapshot.entry(n);
    r.error = cand[0].second;
    if (cand.size() > 1) r.runner_up = cand[1].second;
    if (r.error.contains_zero()) {
      // Refine: either it separates from 0 or it is an exact hit.
      const ExponentVector& em = r.numerator.exponents;
      const ExponentVector& en = r.denominator.exponents;
      const Refinable ratio = [&](mpfr_prec_t p) {
        return integer_value(snapshot.system(), em, p) / integer_value(snapshot.system(), en, p);
      };
      r.exact = cmp_certified(x, ratio, policy) == Ordering::Undecided;
      if (r.exact) {
        r.error = CertReal::from_int(0, policy.start);
      } else {
        for (mpfr_prec_t p = policy.start * 2; r.error.contains_zero() && p <= policy.cap; p *= 2)
          r.error = abs(x(p) - ratio(p)).with_precision(policy.start);
      }
    }
    const double lnu = r.denominator.value.mid() > 1 ? std::log(r.denominator.value.mid()) : 0.0;
    if (r.exact) {
      r.exponent = std::numeric_limits<double>::infinity();
    } else if (lnu > 0) {
      r.exponent = -log_abs(r.error).mid() / lnu;
    }
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ApproxRecord& a, const ApproxRecord& b) { return a.exponent > b.exponent; });
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

MuEstimate mu_estimate(const Refinable& x, const IntegerSnapshot& snapshot, std::size_t min_large) {
  const std::vector<ApproxRecord> all = best_approximations(x, snapshot, snapshot.size());
  const double floor = std::sqrt(snapshot.bound());
  MuEstimate m;
  m.estimate = -std::numeric_limits<double>::infinity();
  for (const ApproxRecord& r : all) {
    if (r.exact) throw PreconditionError("target is an exact ratio of integers in the snapshot");
    const double nu = r.denominator.value.mid();
    if (nu > 1) m.scatter.emplace_back(std::log(nu), r.exponent);
    if (nu < floor) continue;
    ++m.large_denominators;
    if (r.exponent > m.estimate) {
      m.estimate = r.exponent;
      m.argmax = r;
    }
  }
  if (m.large_denominators < min_large)
    throw PreconditionError("only " + std::to_string(m.large_denominators) +
                            " denominators >= sqrt(X); need " + std::to_string(min_large));
  std::sort(m.scatter.begin(), m.scatter.end());
  return m;
}

nlohmann::json to_json(const ApproxRecord& r) {
  nlohmann::json j{{"numerator", to_string(r.numerator.exponents)},
                   {"denominator", to_string(r.denominator.exponents)},
                   {"numerator_value", r.numerator.value.to_decimal(20)},
                   {"denominator_value", r.denominator.value.to_decimal(20)},
                   {"error", interval_json(r.error, 20)},
                   {"exact", r.exact}};
  j["exponent"] = std::isfinite(r.exponent) ? nlohmann::json(r.exponent) : nlohmann::json("inf");
  return j;
}

nlohmann::json to_json(const MuEstimate& m) {
  return {{"estimate", m.estimate},
          {"argmax", to_json(m.argmax)},
          {"large_denominators", m.large_denominators}};
}

}  // namespace beurling
