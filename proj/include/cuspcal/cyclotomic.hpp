#pragma once

#include <map>
#include <string>
#include <vector>

#include "cuspcal/arith.hpp"

namespace cuspcal {

/// Exact element of the cyclotomic field Q(zeta_order), stored as the
/// reduced remainder modulo the order-th cyclotomic polynomial.
class CyclotomicValue {
 public:
  CyclotomicValue() : order_(1), coeffs_{Rational(0)} {}
  CyclotomicValue(Rational r) : order_(1), coeffs_{r} {}  // NOLINT: implicit from rationals
  CyclotomicValue(Int n) : CyclotomicValue(Rational(n)) {}  // NOLINT

  /// exp(2 pi i phase).
  static CyclotomicValue root(Phase phase);
  /// Sum of c * exp(2 pi i phase) over the map entries.
  static CyclotomicValue from_terms(const std::map<Phase, Rational>& terms);
  /// Element of Q(zeta_order) from canonical coefficients (length phi(order)).
  static CyclotomicValue from_coeffs(Int order, std::vector<Rational> coeffs);

  Int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  CyclotomicValue operator+(const CyclotomicValue& o) const;
  CyclotomicValue operator-(const CyclotomicValue& o) const;
  CyclotomicValue operator-() const;
  CyclotomicValue operator*(const CyclotomicValue& o) const;
  CyclotomicValue& operator+=(const CyclotomicValue& o) { return *this = *this + o; }
  CyclotomicValue& operator*=(const CyclotomicValue& o) { return *this = *this * o; }
  bool operator==(const CyclotomicValue& o) const;

  CyclotomicValue conj() const;
  /// The same value re-expressed in the smallest cyclotomic field containing it.
  CyclotomicValue normalized() const;
  /// Re-expressed in Q(zeta_n), n a multiple of order().
  CyclotomicValue lifted(Int n) const;

  bool is_rational() const;
  Rational to_rational() const;
  bool is_zero() const;
  std::string to_string() const;

 private:
  Int order_;
  std::vector<Rational> coeffs_;
};

/// Integer coefficients of the n-th cyclotomic polynomial, lowest first.
const std::vector<Int>& cyclotomic_polynomial(Int n);

/// Accumulates sums of roots of unity with rational weights.
class PhaseSum {
 public:
  void add(Phase phase, Rational weight = Rational(1));
  CyclotomicValue value() const { return CyclotomicValue::from_terms(terms_); }
  const std::map<Phase, Rational>& terms() const { return terms_; }

 private:
  std::map<Phase, Rational> terms_;
};

}  // namespace cuspcal
