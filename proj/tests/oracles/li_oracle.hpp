#pragma once

#include <cmath>

namespace oracle {

inline long double li_integrand(long double u) {
  if (u == 1.0L) return 1.0L;
  return (1.0L - 1.0L / u) / std::log(u);
}

// Composite Simpson rule on [1, x] with n (even) panels.
inline long double li_simpson(long double x, int n = 200000) {
  if (x <= 1.0L) return 0.0L;
  const long double h = (x - 1.0L) / n;
  long double s = li_integrand(1.0L) + li_integrand(x);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * li_integrand(1.0L + i * h);
  return s * h / 3.0L;
}

// Bisection on the Simpson oracle.
inline long double li_inv_bisect(long double y) {
  long double lo = 1.0L, hi = 2.0L;
  while (li_simpson(hi, 20000) < y) hi *= 2.0L;
  for (int i = 0; i < 64; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (li_simpson(mid, 20000) < y ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

}  // namespace oracle
