#pragma once

#include <vector>

namespace oracle {

inline std::vector<int> sieve(int n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<int> out;
  for (int p = 2; p <= n; ++p) {
    if (comp[p]) continue;
    out.push_back(p);
    for (long m = static_cast<long>(p) * p; m <= n; m += p) comp[m] = true;
  }
  return out;
}

// Ordinary Moebius function by trial division.
inline int mobius(long n) {
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

}  // namespace oracle
