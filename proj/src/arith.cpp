#include "cuspcal/arith.hpp"

#include <algorithm>

#include "cuspcal/error.hpp"

namespace cuspcal {

Int invmod(Int a, Int m) {
  Int old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  require(old_r == 1, "invmod: argument is not invertible");
  return mod(old_s, m);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int vp(Int n, Int p) {
  require(n != 0, "vp: zero has infinite valuation");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  for (Int d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Int> divisors(Int n) {
  std::vector<Int> out;
  for (Int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

Int euler_phi(Int n) {
  Int r = n;
  for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
  return r;
}

Int multiplicative_order(Int a, Int m) {
  if (m == 1) return 1;
  require(std::gcd(mod(a, m), m) == 1, "multiplicative_order: not a unit");
  Int ord = euler_phi(m);
  for (auto [q, e] : factorize(ord)) {
    for (int i = 0; i < e && ord % q == 0 && powmod(a, ord / q, m) == 1; ++i) ord /= q;
  }
  return ord;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace cuspcal
