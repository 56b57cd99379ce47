#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cuspcal/arith.hpp"
#include "cuspcal/finite_field.hpp"

namespace cuspcal::padic {

constexpr int kMaxDegree = 8;

class FieldContext;
class Subfield;

/// Element of O_E / p^N, stored as coordinates in the basis 1, a, ..., a^(f-1)
/// where a is the fixed root of the lifted defining polynomial.
class Elem {
 public:
  Elem() = default;
  static Elem zero(const FieldContext& ctx);
  static Elem one(const FieldContext& ctx);
  static Elem from_int(const FieldContext& ctx, Int c);
  static Elem from_coords(const FieldContext& ctx, std::span<const Int> coords);

  const FieldContext& context() const { return *ctx_; }
  Int coord(int i) const { return c_[i]; }
  std::vector<Int> coords() const;

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator-() const;
  Elem operator*(const Elem& o) const;
  Elem& operator+=(const Elem& o) { return *this = *this + o; }
  Elem& operator*=(const Elem& o) { return *this = *this * o; }
  bool operator==(const Elem& o) const { return c_ == o.c_; }

  Elem scaled(Int k) const;
  Elem pow(Int e) const;
  /// Inverse of a unit, exact at the context precision.
  Elem inverse() const;

  bool is_zero() const;
  bool is_unit() const;
  /// min over coordinates of v_p; the precision N for zero.
  int valuation() const;
  /// Congruence modulo p^level.
  bool congruent(const Elem& o, int level) const;
  /// Exact division by p^k; every coordinate must be divisible.
  Elem divided_by_p(int k) const;

  /// Residue class, encoded as an element of the residue field.
  int residue() const;
  /// Arithmetic Frobenius applied k times.
  Elem frobenius(int k = 1) const;

 private:
  const FieldContext* ctx_ = nullptr;
  std::array<Int, kMaxDegree> c_{};
  friend class FieldContext;
};

/// Unramified extension E of Q_p of degree f, truncated at precision p^N.
class FieldContext {
 public:
  /// p odd prime, f >= 1, N >= 1. If poly is given (monic, degree f,
  /// coefficients c0..cf) it must be irreducible modulo p.
  static std::shared_ptr<const FieldContext> make(int p, int f, int N,
                                                  std::optional<std::vector<Int>> poly = std::nullopt);

  FieldContext(int p, int f, int N, std::vector<Int> poly);
  FieldContext(const FieldContext&) = delete;
  FieldContext& operator=(const FieldContext&) = delete;

  int p() const { return p_; }
  int degree() const { return f_; }
  int precision() const { return N_; }
  Int modulus() const { return pN_; }
  Int residue_size() const { return Q_; }
  const std::vector<Int>& poly() const { return poly_; }
  const gf::Field& residue_field() const { return *residue_; }
  std::shared_ptr<const gf::Field> residue_field_ptr() const { return residue_; }

  /// Teichmüller generator: the (Q-1)-th root of unity lifting the primitive
  /// element of the residue field.
  const Elem& zeta() const { return zeta_; }
  Elem lift(int residue) const;
  /// Teichmüller lift of a residue (0 lifts to 0).
  Elem teich_lift(int residue) const;

  const Subfield& subfield(int d) const;

  /// Same field at a different precision.
  std::shared_ptr<const FieldContext> with_precision(int N) const;
  /// Reduce or zero-extend an element of a same-field context.
  Elem transfer(const Elem& x) const;

 private:
  int p_, f_, N_;
  Int pN_, Q_;
  std::vector<Int> poly_;
  std::shared_ptr<const gf::Field> residue_;
  std::vector<Elem> frob_powers_;  // sigma(a)^i
  Elem zeta_;
  std::vector<std::unique_ptr<Subfield>> subfields_;  // indexed by divisor

  Elem mul(const Elem& a, const Elem& b) const;
  friend class Elem;
};

/// Teichmüller representative: the root of unity of order dividing Q-1
/// congruent to x modulo p, by iterating x -> x^Q to its fixed point.
Elem teichmuller(const Elem& x);

/// Product of the Galois conjugates of x over the degree-d subfield E_d.
Elem norm_to_subfield(const Elem& x, int d);

/// Relative norm E_from -> E_to for x in E_from (to | from | f).
Elem relative_norm(const Elem& x, int from, int to);

/// The subfield E_d of E (d | f), with a Z_p-basis of its integers: the
/// standard basis when d = f, otherwise powers of the Teichmüller generator
/// zeta_d of order Q_d - 1.
class Subfield {
 public:
  Subfield(const FieldContext& ctx, int d);

  const FieldContext& context() const { return *ctx_; }
  int degree() const { return d_; }
  Int residue_size() const { return Qd_; }
  const std::vector<Elem>& basis() const { return basis_; }
  const Elem& zeta() const { return zeta_; }
  int zeta_residue() const { return zeta_residue_; }

  bool contains(const Elem& x) const;
  /// Coordinates of x in the basis; throws if x is not in E_d.
  std::vector<Int> coordinates(const Elem& x) const;
  Elem from_coordinates(std::span<const Int> c) const;
  /// F_p-coordinates of a residue lying in the residue field of E_d.
  std::vector<Int> residue_coordinates(int residue) const;
  /// Exponent j with teich(x) = zeta_d^j, for a unit x of E_d.
  Int teich_log(const Elem& x) const;

 private:
  const FieldContext* ctx_;
  int d_;
  Int Qd_;
  std::vector<Elem> basis_;
  Elem zeta_;
  int zeta_residue_;
  std::vector<int> pivots_;
  std::vector<std::vector<Int>> minor_inv_;  // inverse of the pivot minor mod p^N
};

/// An element p^val * unit of E^x (or of O_E when val >= 0).
struct FieldElement {
  int val = 0;
  Elem coeff;
};

/// (1 + p O_{E_d}) / (1 + p^(m+1) O_{E_d}) as (Z/p^m)^d, with basis
/// 1 + p*omega_j, discrete logarithms, and norm matrices to all subfields.
class UnitFiltrationQuotient {
 public:
  UnitFiltrationQuotient(const Subfield& field, int level);

  const Subfield& field() const { return *field_; }
  int level() const { return m_; }
  int rank() const { return field_->degree(); }
  Int exponent_modulus() const { return pm_; }
  Int order() const;
  const std::vector<Elem>& basis() const { return basis_; }

  /// Exponent vector of w (w must be a principal unit of E_d).
  std::vector<Int> log(const Elem& w) const;
  Elem element(std::span<const Int> e) const;
  /// Largest i with the element in 1 + p^i (m + 1 for the identity).
  int filtration_level(std::span<const Int> e) const;
  /// Norm matrix to E_sub, sub | d: rows sub, columns d, entries mod p^m.
  const std::vector<std::vector<Int>>& norm_matrix(int sub) const;
  std::vector<Int> apply_norm(int sub, std::span<const Int> e) const;
  /// Quotient of the same level for E_sub.
  const UnitFiltrationQuotient& sub_quotient(int sub) const;

  /// Calls fn(e) for every exponent vector.
  template <class Fn>
  void for_each(Fn&& fn) const {
    std::vector<Int> e(rank(), 0);
    for (;;) {
      fn(std::span<const Int>(e));
      int i = 0;
      while (i < rank() && ++e[i] == pm_) e[i++] = 0;
      if (i == rank()) return;
    }
  }

 private:
  const Subfield* field_;
  int m_;
  Int pm_;
  std::vector<Elem> basis_;
  std::vector<std::vector<Elem>> inv_layers_;  // (b_i^(p^(j-1)))^-1
  std::vector<std::shared_ptr<UnitFiltrationQuotient>> subs_;  // indexed by divisor
  std::vector<std::vector<std::vector<Int>>> norm_;
};

/// Materialise the level-m quotient of E's principal units.
std::shared_ptr<const UnitFiltrationQuotient> unit_group_quotient(const FieldContext& ctx, int m);

}  // namespace cuspcal::padic
