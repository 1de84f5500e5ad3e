#pragma once

#include <cmath>
#include <cstdlib>

namespace cascade::detail {

// base^n by repeated squaring; exact for small integer bases.
inline double pow_int(double base, int n) {
  double result = 1.0;
  double b = base;
  unsigned k = static_cast<unsigned>(std::abs(n));
  while (k != 0) {
    if (k & 1u) result *= b;
    b *= b;
    k >>= 1u;
  }
  return n < 0 ? 1.0 / result : result;
}

// base^(n + x): integer part by multiplication, fractional part via one pow call.
inline double pow_mixed(double base, int n, double x) {
  return x == 0.0 ? pow_int(base, n) : pow_int(base, n) * std::pow(base, x);
}

}  // namespace cascade::detail
