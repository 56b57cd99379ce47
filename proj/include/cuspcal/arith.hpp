#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace cuspcal {

using Int = std::int64_t;
using Rational = boost::rational<Int>;

/// A root of unity exp(2*pi*i*phase), phase kept in [0, 1).
using Phase = boost::rational<Int>;

inline Phase normalize_phase(Phase x) {
  Int num = x.numerator() % x.denominator();
  if (num < 0) num += x.denominator();
  return Phase(num, x.denominator());
}

// Compare via the numerator: comparing boost::rational against a plain
// integer recurses under C++20 rewritten operators on this Boost version.
inline bool is_zero(const Rational& r) { return r.numerator() == 0; }

std::string to_string(const Rational& r);

inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int mulmod(Int a, Int b, Int m) {
  return static_cast<Int>((static_cast<__int128>(a) * b) % m);
}

inline Int powmod(Int base, Int exp, Int m) {
  Int result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline Int ipow(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Inverse of a modulo m; a must be coprime to m.
Int invmod(Int a, Int m);

bool is_prime(Int n);

/// p-adic valuation of a nonzero integer.
int vp(Int n, Int p);

/// Prime factorisation as (prime, exponent) pairs in increasing order.
std::vector<std::pair<Int, int>> factorize(Int n);

std::vector<Int> divisors(Int n);

Int euler_phi(Int n);

/// Multiplicative order of a modulo m (gcd(a, m) = 1).
Int multiplicative_order(Int a, Int m);

}  // namespace cuspcal
