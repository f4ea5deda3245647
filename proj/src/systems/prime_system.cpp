#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "beurling/systems.hpp"

namespace beurling {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Classical: return "classical";
    case Provenance::Explicit: return "explicit";
    case Provenance::Perturbed: return "perturbed";
    case Provenance::Sampled: return "sampled";
  }
  return "explicit";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "classical") return Provenance::Classical;
  if (s == "explicit") return Provenance::Explicit;
  if (s == "perturbed") return Provenance::Perturbed;
  if (s == "sampled") return Provenance::Sampled;
  throw PreconditionError("unknown provenance: " + s);
}

PrimeSystem PrimeSystem::from_decimals(std::vector<std::string> decimals, Origin origin,
                                       const PrecisionPolicy& policy) {
  PrimeSystem out;
  out.origin_ = std::move(origin);
  out.precision_ = policy.start;
  out.values_.reserve(decimals.size());
  for (const std::string& d : decimals) {
    CertReal v = CertReal::from_decimal(d, policy.start);
    if (cmp_certified(constant_decimal(d), constant(1), policy) != Ordering::Greater)
      throw PreconditionError("prime " + d + " is not > 1");
    out.approx_.push_back(v.mid());
    out.log_approx_.push_back(std::log(v.mid()));
    out.values_.push_back(std::move(v));
  }
  for (std::size_t i = 1; i < decimals.size(); ++i) {
    const Ordering o = compare(out.values_[i - 1], out.values_[i]);
    if (o == Ordering::Less) continue;
    if (o == Ordering::Greater ||
        cmp_certified(constant_decimal(decimals[i - 1]), constant_decimal(decimals[i]), policy) !=
            Ordering::Less)
      throw PreconditionError("primes not strictly increasing at " + decimals[i - 1] + ", " +
                              decimals[i]);
  }
  out.decimals_ = std::move(decimals);
  return out;
}

CertReal PrimeSystem::value(std::size_t i, mpfr_prec_t prec) const {
  if (prec == precision_) return values_.at(i);
  return CertReal::from_decimal(decimals_.at(i), prec);
}

Refinable PrimeSystem::refinable(std::size_t i) const { return constant_decimal(decimals_.at(i)); }

void PrimeSystem::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != decimals_.size())
    throw PreconditionError("label count does not match prime count");
  labels_ = std::move(labels);
}

std::string PrimeSystem::label(std::size_t i) const {
  if (i < labels_.size()) return labels_[i];
  return "q" + std::to_string(i + 1);
}

PrimeSystem PrimeSystem::prefix(std::size_t n) const {
  PrimeSystem out = *this;
  n = std::min(n, size());
  out.decimals_.resize(n);
  out.values_.resize(n, CertReal(precision_));
  out.approx_.resize(n);
  out.log_approx_.resize(n);
  if (!out.labels_.empty()) out.labels_.resize(n);
  return out;
}

PrimeSystem PrimeSystem::without(const std::vector<std::size_t>& indices) const {
  PrimeSystem out;
  out.origin_ = origin_;
  out.precision_ = precision_;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::find(indices.begin(), indices.end(), i) != indices.end()) continue;
    out.decimals_.push_back(decimals_[i]);
    out.values_.push_back(values_[i]);
    out.approx_.push_back(approx_[i]);
    out.log_approx_.push_back(log_approx_[i]);
    if (!labels_.empty()) out.labels_.push_back(labels_[i]);
  }
  return out;
}

std::size_t PrimeSystem::count_le(const Refinable& x, const PrecisionPolicy& policy) const {
  const CertReal xv = x(precision_);
  std::size_t n = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    Ordering o = compare(values_[i], xv);
    if (o == Ordering::Undecided) o = cmp_certified(refinable(i), x, policy);
    if (o == Ordering::Greater) break;
    ++n;
  }
  return n;
}

PrimeSystem classical_primes(double limit) {
  if (!(limit >= 2)) throw PreconditionError("classical_primes requires limit >= 2");
  if (limit > 1e8) throw PreconditionError("classical_primes limit too large");
  const auto n = static_cast<std::size_t>(std::floor(limit));
  std::vector<bool> composite(n + 1, false);
  std::vector<std::string> decimals;
  for (std::size_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    decimals.push_back(std::to_string(p));
    for (std::size_t m = p * p; m <= n; m += p) composite[m] = true;
  }
  return PrimeSystem::from_decimals(std::move(decimals), {Provenance::Classical, 0, ""});
}

PrimeSystem parse_primes_text(const std::string& text, Origin origin) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> decimals;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string token = line.substr(first, last - first + 1);
    if (token.find_first_of(" \t") != std::string::npos)
      throw PreconditionError("line " + std::to_string(lineno) + ": expected one decimal");
    try {
      CertReal::from_decimal(token);
    } catch (const PreconditionError&) {
      throw PreconditionError("line " + std::to_string(lineno) + ": malformed decimal '" + token +
                              "'");
    }
    decimals.push_back(std::move(token));
  }
  return PrimeSystem::from_decimals(std::move(decimals), std::move(origin));
}

PrimeSystem read_primes_file(const std::string& path, Origin origin) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open primes file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_primes_text(buf.str(), std::move(origin));
}

}  // namespace beurling
