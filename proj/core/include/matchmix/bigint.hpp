#ifndef MATCHMIX_BIGINT_HPP
#define MATCHMIX_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace matchmix {

// Matching counts grow like 6^{3k} and Fibonacci numbers, so every count
// oracle and identity check works in arbitrary precision.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(Int base, unsigned exp) {
  Int r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

/// Fibonacci with F(1) = F(2) = 1.
inline Int fibonacci(unsigned n) {
  if (n == 0) return 0;
  Int a = 0, b = 1;
  for (unsigned i = 1; i < n; ++i) {
    Int c = a + b;
    a = b;
    b = c;
  }
  return b;
}

}  // namespace matchmix

#endif
