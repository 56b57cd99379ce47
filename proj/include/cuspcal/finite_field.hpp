#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cuspcal/arith.hpp"

namespace cuspcal::gf {

/// Polynomials over F_p as coefficient vectors, lowest degree first.
using Poly = std::vector<int>;

bool is_irreducible(const Poly& f, int p);

/// Lexicographically smallest monic irreducible polynomial of the given degree.
Poly smallest_irreducible(int p, int degree);

/// The finite field F_p[x]/(poly). Elements are encoded as integers in
/// [0, q): the base-p digits are the coefficients of 1, x, x^2, ...
///
/// Multiplication goes through discrete-log tables relative to a fixed
/// primitive element, the first element in encoding order whose order is q - 1.
class Field {
 public:
  Field(int p, Poly poly);
  static std::shared_ptr<const Field> make(int p, int degree);

  int characteristic() const { return p_; }
  int degree() const { return degree_; }
  int size() const { return q_; }
  const Poly& poly() const { return poly_; }

  int zero() const { return 0; }
  int one() const { return 1; }
  int add(int a, int b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    Int z = zech_[mod(log_[b] - log_[a], q_ - 1)];
    return z < 0 ? 0 : exp_[(log_[a] + z) % (q_ - 1)];
  }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  int inv(int a) const;
  int pow(int a, Int e) const;
  int from_int(Int c) const { return static_cast<int>(mod(c, p_)); }

  /// Discrete log relative to the primitive element; a must be nonzero.
  Int log(int a) const;
  int exp(Int k) const { return exp_[mod(k, q_ - 1)]; }
  int primitive() const { return exp_[1 % (q_ - 1)]; }

  /// Frobenius x -> x^(p^k).
  int frob(int a, int k = 1) const;
  bool in_subfield(int a, int sub_degree) const { return frob(a, sub_degree) == a; }
  /// Elements of the subfield of the given degree, in encoding order.
  std::vector<int> subfield_elements(int sub_degree) const;

  /// Coefficient digits of an element.
  std::vector<int> digits(int a) const;
  int from_digits(const std::vector<int>& d) const;

 private:
  int p_, degree_, q_;
  Poly poly_;
  std::vector<int> neg_, exp_;
  std::vector<Int> log_, zech_;  // zech_[k] = log(1 + g^k), or -1 when 1 + g^k = 0
};

}  // namespace cuspcal::gf
