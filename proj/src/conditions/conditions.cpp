#include <optional>
#include <ostream>

#include "beurling/conditions.hpp"

namespace beurling {

FrequencyView::FrequencyView(std::vector<CertReal> lambdas) : lambdas_(std::move(lambdas)) {
  for (std::size_t i = 1; i < lambdas_.size(); ++i) {
    if (compare(lambdas_[i - 1], lambdas_[i]) != Ordering::Less)
      throw PreconditionError("frequencies not certified strictly increasing at index " +
                              std::to_string(i));
  }
}

FrequencyView FrequencyView::from_snapshot(const IntegerSnapshot& snapshot) {
  std::vector<CertReal> l;
  l.reserve(snapshot.size());
  for (const BeurlingInteger& b : snapshot.entries()) l.push_back(log(b.value));
  return FrequencyView(std::move(l));
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::BC: return "BC";
    case Condition::LC: return "LC";
    case Condition::NC: return "NC";
  }
  return "BC";
}

namespace {

template <class Weight>
ConditionReport margins(const FrequencyView& view, Condition cond, double a, double b,
                        Weight weight) {
  if (view.size() < 2) throw PreconditionError("condition margins need two frequencies");
  ConditionReport r{cond, a, b, {}, true, 0, 0};
  r.margins.reserve(view.size() - 1);
  for (std::size_t n = 0; n + 1 < view.size(); ++n) {
    CertReal m = (view[n + 1] - view[n]) - weight(view[n + 1]);
    if (!m.certainly_nonnegative()) {
      r.verdict = false;
      if (!m.certainly_negative()) ++r.undecided;
    }
    if (r.margins.empty() || mpfr_less_p(m.lo().get(), r.margins[r.worst_index].lo().get()))
      r.worst_index = n;
    r.margins.push_back(std::move(m));
  }
  return r;
}

}  // namespace

ConditionReport bc_margins(const FrequencyView& view, double c1, double c2) {
  if (!(c1 > 0) || !(c2 >= 0)) throw PreconditionError("BC requires c1 > 0 and c2 >= 0");
  return margins(view, Condition::BC, c1, c2, [&](const CertReal& l) {
    const mpfr_prec_t p = l.precision();
    return CertReal::exact(c1, p) * exp(-(CertReal::exact(c2, p) * l));
  });
}

ConditionReport lc_margins(const FrequencyView& view, double c, double delta) {
  if (!(c > 0) || !(delta > 0)) throw PreconditionError("LC requires c > 0 and delta > 0");
  return margins(view, Condition::LC, c, delta, [&](const CertReal& l) {
    const mpfr_prec_t p = l.precision();
    return CertReal::exact(c, p) * exp(-exp(CertReal::exact(delta, p) * l));
  });
}

NcValue nc_profile(const FrequencyView& view, std::size_t n) {
  if (n + 1 >= view.size()) throw PreconditionError("nc_profile needs some m > n in the view");
  if (view[n].certainly_negative()) throw PreconditionError("nc_profile needs lambda_n >= 0");
  const bool zero = view[n].is_exact() && view[n].contains(0.0);
  std::optional<NcValue> best;
  std::size_t m = n + 1;
  for (; m < view.size(); ++m) {
    const auto d = static_cast<long>(m - n);
    // The log term is positive, so m - n >= best ends the search.
    if (best && mpfr_cmp_si(best->value.hi().get(), d) <= 0) break;
    CertReal v = CertReal::from_int(d, view[m].precision());
    if (!zero) v += log((view[m] + view[n]) / (view[m] - view[n]));
    if (!best) {
      best = NcValue{std::move(v), m, false};
    } else {
      if (v.mid() < best->value.mid()) best->argmin = m;
      best->value = min(best->value, v);
    }
  }
  best->upper_bound_only = m == view.size() &&
                           mpfr_cmp_si(best->value.hi().get(), static_cast<long>(m - n)) > 0;
  return *best;
}

void write_margins_csv(std::ostream& out, const FrequencyView& view, const ConditionReport& r) {
  out << "n,lambda,gap,margin\n";
  for (std::size_t n = 0; n < r.margins.size(); ++n) {
    out << n << ',' << view[n].to_decimal(20) << ',' << (view[n + 1] - view[n]).to_decimal(20)
        << ',' << r.margins[n].to_decimal(20) << '\n';
  }
}

}  // namespace beurling
