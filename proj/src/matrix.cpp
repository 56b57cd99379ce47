#include "cuspcal/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "cuspcal/error.hpp"

namespace cuspcal::gf {

Matrix::Matrix(const Field& k, int n, std::vector<int> entries) : k_(&k), n_(n), a_(std::move(entries)) {
  require(a_.size() == static_cast<size_t>(n) * n, "matrix entry count mismatch");
}

Matrix Matrix::identity(const Field& k, int n) { return scalar(k, n, 1); }

Matrix Matrix::scalar(const Field& k, int n, int c) {
  Matrix m(k, n);
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r(*k_, n_);
  for (int i = 0; i < n_; ++i)
    for (int l = 0; l < n_; ++l) {
      int x = (*this)(i, l);
      if (x == 0) continue;
      for (int j = 0; j < n_; ++j) r(i, j) = k_->add(r(i, j), k_->mul(x, o(l, j)));
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r(*k_, n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = k_->add(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r(*k_, n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = k_->sub(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::pow(Int e) const {
  require(e >= 0, "negative matrix power");
  Matrix result = identity(*k_, n_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

int Matrix::det() const {
  std::vector<int> a = a_;
  int d = 1;
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    while (piv < n_ && a[piv * n_ + c] == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != c) {
      for (int j = 0; j < n_; ++j) std::swap(a[piv * n_ + j], a[c * n_ + j]);
      d = k_->neg(d);
    }
    int pv = a[c * n_ + c];
    d = k_->mul(d, pv);
    int pinv = k_->inv(pv);
    for (int r = c + 1; r < n_; ++r) {
      int f = k_->mul(a[r * n_ + c], pinv);
      if (f == 0) continue;
      for (int j = c; j < n_; ++j) a[r * n_ + j] = k_->sub(a[r * n_ + j], k_->mul(f, a[c * n_ + j]));
    }
  }
  return d;
}

int Matrix::trace() const {
  int t = 0;
  for (int i = 0; i < n_; ++i) t = k_->add(t, (*this)(i, i));
  return t;
}

Matrix Matrix::inverse() const {
  Matrix a = *this, inv = identity(*k_, n_);
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    while (piv < n_ && a(piv, c) == 0) ++piv;
    require(piv < n_, "matrix is not invertible");
    for (int j = 0; j < n_; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    int s = k_->inv(a(c, c));
    for (int j = 0; j < n_; ++j) {
      a(c, j) = k_->mul(a(c, j), s);
      inv(c, j) = k_->mul(inv(c, j), s);
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || a(r, c) == 0) continue;
      int f = a(r, c);
      for (int j = 0; j < n_; ++j) {
        a(r, j) = k_->sub(a(r, j), k_->mul(f, a(c, j)));
        inv(r, j) = k_->sub(inv(r, j), k_->mul(f, inv(c, j)));
      }
    }
  }
  return inv;
}

Matrix Matrix::frobenius(int k) const {
  Matrix r(*k_, n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = k_->frob(a_[i], k);
  return r;
}

bool Matrix::is_identity() const { return is_scalar() && (n_ == 0 || a_[0] == 1); }

bool Matrix::is_scalar() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i != j && (*this)(i, j) != 0) return false;
      if (i == j && (*this)(i, i) != a_[0]) return false;
    }
  return true;
}

bool Matrix::is_unipotent() const {
  Matrix nil = *this - identity(*k_, n_);
  return nil.pow(n_).is_scalar() && nil.pow(n_)(0, 0) == 0;
}

Int Matrix::order() const {
  require(invertible(), "order of a singular matrix");
  Matrix x = *this;
  Int k = 1;
  while (!x.is_identity()) {
    x = x * (*this);
    ++k;
  }
  return k;
}

std::vector<Matrix> general_linear_group(const Field& k, int n, int sub_degree) {
  const std::vector<int> elems = k.subfield_elements(sub_degree);
  const size_t q = elems.size();
  size_t total = 1;
  for (int i = 0; i < n * n; ++i) total *= q;
  std::vector<Matrix> out;
  std::vector<int> entries(n * n);
  for (size_t c = 0; c < total; ++c) {
    size_t v = c;
    for (int i = n * n; i-- > 0;) {
      entries[i] = elems[v % q];
      v /= q;
    }
    Matrix m(k, n, entries);
    if (m.invertible()) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace cuspcal::gf

namespace cuspcal::padic {

Matrix::Matrix(const FieldContext& ctx, int n)
    : ctx_(&ctx), n_(n), a_(static_cast<size_t>(n) * n, Elem::zero(ctx)) {}

Matrix Matrix::identity(const FieldContext& ctx, int n) { return scalar(Elem::one(ctx), n); }

Matrix Matrix::scalar(const Elem& c, int n) {
  Matrix m(c.context(), n);
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r(*ctx_, n_);
  for (int i = 0; i < n_; ++i)
    for (int l = 0; l < n_; ++l) {
      const Elem& x = (*this)(i, l);
      if (x.is_zero()) continue;
      for (int j = 0; j < n_; ++j) r(i, j) += x * o(l, j);
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
  return r;
}

Matrix Matrix::scaled(const Elem& c) const {
  Matrix r = *this;
  for (auto& x : r.a_) x = x * c;
  return r;
}

Matrix Matrix::pow(Int e) const {
  require(e >= 0, "negative matrix power");
  Matrix result = identity(*ctx_, n_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Elem Matrix::det() const {
  require(n_ <= 6, "determinant expansion limited to n <= 6");
  std::vector<int> perm(n_);
  std::iota(perm.begin(), perm.end(), 0);
  Elem total = Elem::zero(*ctx_);
  do {
    int inversions = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Elem term = Elem::one(*ctx_);
    for (int i = 0; i < n_ && !term.is_zero(); ++i) term = term * (*this)(i, perm[i]);
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

bool Matrix::residue_invertible() const { return residue().invertible(); }

Matrix Matrix::inverse() const {
  Matrix a = *this, inv = identity(*ctx_, n_);
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    while (piv < n_ && !a(piv, c).is_unit()) ++piv;
    require(piv < n_, "matrix is not invertible modulo p");
    for (int j = 0; j < n_; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    Elem s = a(c, c).inverse();
    for (int j = 0; j < n_; ++j) {
      a(c, j) = a(c, j) * s;
      inv(c, j) = inv(c, j) * s;
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      Elem f = a(r, c);
      for (int j = 0; j < n_; ++j) {
        a(r, j) = a(r, j) - f * a(c, j);
        inv(r, j) = inv(r, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

int Matrix::valuation() const {
  int v = ctx_->precision();
  for (const auto& x : a_) v = std::min(v, x.valuation());
  return v;
}

Matrix Matrix::divided_by_p(int k) const {
  Matrix r = *this;
  for (auto& x : r.a_) x = x.divided_by_p(k);
  return r;
}

bool Matrix::is_scalar() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
      if (i == j && !((*this)(i, i) == a_[0])) return false;
    }
  return true;
}

bool Matrix::is_identity() const { return *this == identity(*ctx_, n_); }

gf::Matrix Matrix::residue() const {
  gf::Matrix r(ctx_->residue_field(), n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = (*this)(i, j).residue();
  return r;
}

Matrix Matrix::frobenius(int k) const {
  Matrix r = *this;
  for (auto& x : r.a_) x = x.frobenius(k);
  return r;
}

std::vector<Elem> solve(const Matrix& a, const std::vector<Elem>& b) {
  const int n = a.size();
  Matrix inv = a.inverse();
  std::vector<Elem> x(n, Elem::zero(a.context()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x[i] += inv(i, j) * b[j];
  return x;
}

Matrix teich_lift(const FieldContext& ctx, const gf::Matrix& m) {
  Matrix r(ctx, m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) r(i, j) = ctx.teich_lift(m(i, j));
  return r;
}

}  // namespace cuspcal::padic
