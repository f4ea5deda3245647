#pragma once

#include <cmath>
#include <vector>

namespace oracle {

struct Convergent {
  long double p, q;
};

// Convergents p/q of x with q <= qmax, long double recurrence.
inline std::vector<Convergent> convergents(long double x, long double qmax) {
  std::vector<Convergent> out;
  long double p0 = 1, q0 = 0, p1 = std::floor(x), q1 = 1, r = x - std::floor(x);
  out.push_back({p1, q1});
  while (r > 1e-18L) {
    const long double inv = 1 / r;
    const long double a = std::floor(inv);
    r = inv - a;
    const long double p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > qmax) break;
    out.push_back({p2, q2});
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return out;
}

// Convergents and semiconvergents p/q of x with q <= qmax.
inline std::vector<Convergent> best_candidates(long double x, long double qmax) {
  std::vector<Convergent> out;
  long double p0 = 1, q0 = 0, p1 = std::floor(x), q1 = 1, r = x - std::floor(x);
  out.push_back({p1, q1});
  while (r > 1e-18L) {
    const long double inv = 1 / r;
    const long double a = std::floor(inv);
    r = inv - a;
    for (long double b = 1; b <= a; ++b) {
      const long double p = b * p1 + p0, q = b * q1 + q0;
      if (q > qmax) return out;
      out.push_back({p, q});
    }
    const long double p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return out;
}

// max over q in [qmin, qmax] of log(1/|x - p/q|) / log q, taking each
// convergent or semiconvergent at its least multiple c q >= qmin.
inline double cf_exponent(long double x, long double qmin, long double qmax) {
  double best = 0;
  for (const Convergent& c : best_candidates(x, qmax)) {
    const long double q = c.q * std::max(1.0L, std::ceil(qmin / c.q));
    if (q > qmax) continue;
    const long double err = std::fabs(x - c.p / c.q);
    best = std::max(best, static_cast<double>(-std::log(err) / std::log(q)));
  }
  return best;
}

}  // namespace oracle
