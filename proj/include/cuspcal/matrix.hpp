#pragma once

#include <vector>

#include "cuspcal/finite_field.hpp"
#include "cuspcal/padic.hpp"

namespace cuspcal::gf {

/// Square matrix over a finite field. The field must outlive the matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& k, int n) : k_(&k), n_(n), a_(static_cast<size_t>(n) * n, 0) {}
  Matrix(const Field& k, int n, std::vector<int> entries);
  static Matrix identity(const Field& k, int n);
  static Matrix scalar(const Field& k, int n, int c);

  const Field& field() const { return *k_; }
  int size() const { return n_; }
  int operator()(int i, int j) const { return a_[i * n_ + j]; }
  int& operator()(int i, int j) { return a_[i * n_ + j]; }
  const std::vector<int>& entries() const { return a_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const { return a_ == o.a_; }
  bool operator<(const Matrix& o) const { return a_ < o.a_; }

  Matrix pow(Int e) const;
  int det() const;
  int trace() const;
  bool invertible() const { return det() != 0; }
  Matrix inverse() const;
  /// Entry-wise Frobenius x -> x^(p^k).
  Matrix frobenius(int k) const;
  bool is_identity() const;
  bool is_scalar() const;
  bool is_unipotent() const;
  bool commutes_with(const Matrix& o) const { return (*this) * o == o * (*this); }
  /// Multiplicative order (by repeated multiplication).
  Int order() const;

 private:
  const Field* k_ = nullptr;
  int n_ = 0;
  std::vector<int> a_;
};

/// All invertible n x n matrices with entries in the degree-sub subfield.
std::vector<Matrix> general_linear_group(const Field& k, int n, int sub_degree);

}  // namespace cuspcal::gf

namespace cuspcal::padic {

/// Square matrix over O_E / p^N.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldContext& ctx, int n);
  static Matrix identity(const FieldContext& ctx, int n);
  static Matrix scalar(const Elem& c, int n);

  const FieldContext& context() const { return *ctx_; }
  int size() const { return n_; }
  const Elem& operator()(int i, int j) const { return a_[i * n_ + j]; }
  Elem& operator()(int i, int j) { return a_[i * n_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const { return a_ == o.a_; }

  Matrix scaled(const Elem& c) const;
  Matrix pow(Int e) const;
  /// Determinant by permutation expansion (no division needed).
  Elem det() const;
  /// Inverse when the residue is invertible.
  Matrix inverse() const;
  bool residue_invertible() const;
  int valuation() const;
  Matrix divided_by_p(int k) const;
  bool is_scalar() const;
  bool is_identity() const;
  /// Entry-wise residue.
  gf::Matrix residue() const;
  Matrix frobenius(int k) const;

 private:
  const FieldContext* ctx_ = nullptr;
  int n_ = 0;
  std::vector<Elem> a_;
};

/// Solve A x = b for invertible-residue A.
std::vector<Elem> solve(const Matrix& a, const std::vector<Elem>& b);

/// Entry-wise Teichmüller lift of a residue matrix.
Matrix teich_lift(const FieldContext& ctx, const gf::Matrix& m);

}  // namespace cuspcal::padic
