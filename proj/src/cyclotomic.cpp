#include "cuspcal/cyclotomic.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>

#include "cuspcal/error.hpp"

namespace cuspcal {

namespace {

std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
  // den is monic.
  const size_t dn = den.size() - 1;
  std::vector<Int> q(num.size() - dn, 0);
  for (size_t k = num.size(); k-- > dn;) {
    Int c = num[k];
    q[k - dn] = c;
    for (size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return q;
}

// Reduce a power-basis vector (any length) modulo Phi_n.
std::vector<Rational> reduce(std::vector<Rational> v, Int n) {
  const auto& phi = cyclotomic_polynomial(n);
  const size_t deg = phi.size() - 1;
  // First fold modulo x^n - 1.
  if (v.size() > static_cast<size_t>(n)) {
    for (size_t i = n; i < v.size(); ++i) v[i % n] += v[i];
    v.resize(n);
  }
  for (size_t k = v.size(); k-- > deg;) {
    Rational c = v[k];
    if (c.numerator() == 0) continue;
    for (size_t i = 0; i <= deg; ++i) v[k - deg + i] -= c * Rational(phi[i]);
  }
  v.resize(deg, Rational(0));
  return v;
}

// Solve A x = b over Q (A given by columns); returns false if inconsistent.
bool solve_rational(std::vector<std::vector<Rational>> cols, std::vector<Rational> b, std::vector<Rational>& x) {
  const size_t rows = b.size(), ncols = cols.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(ncols + 1));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < ncols; ++c) a[r][c] = cols[c][r];
    a[r][ncols] = b[r];
  }
  std::vector<int> pivot_col_of_row;
  size_t prow = 0;
  for (size_t c = 0; c < ncols && prow < rows; ++c) {
    size_t piv = prow;
    while (piv < rows && a[piv][c].numerator() == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[prow]);
    Rational s = a[prow][c];
    for (auto& v : a[prow]) v /= s;
    for (size_t r = 0; r < rows; ++r) {
      if (r == prow || a[r][c].numerator() == 0) continue;
      Rational f = a[r][c];
      for (size_t j = 0; j <= ncols; ++j) a[r][j] -= f * a[prow][j];
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    ++prow;
  }
  for (size_t r = prow; r < rows; ++r)
    if (a[r][ncols].numerator() != 0) return false;
  x.assign(ncols, Rational(0));
  for (size_t r = 0; r < prow; ++r) x[pivot_col_of_row[r]] = a[r][ncols];
  return true;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(Int n) {
  static std::recursive_mutex mu;
  static std::unordered_map<Int, std::vector<Int>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  require(n >= 1, "cyclotomic order must be positive");
  std::vector<Int> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (Int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly_divide_exact(num, cyclotomic_polynomial(d));
  }
  return cache.emplace(n, std::move(num)).first->second;
}

CyclotomicValue CyclotomicValue::root(Phase phase) {
  phase = normalize_phase(phase);
  Int n = phase.denominator();
  std::vector<Rational> v(n, Rational(0));
  v[phase.numerator()] = 1;
  return from_coeffs(n, reduce(std::move(v), n));
}

CyclotomicValue CyclotomicValue::from_terms(const std::map<Phase, Rational>& terms) {
  Int n = 1;
  for (const auto& [ph, w] : terms)
    if (w.numerator() != 0) n = std::lcm(n, normalize_phase(ph).denominator());
  std::vector<Rational> v(n, Rational(0));
  for (const auto& [ph, w] : terms) {
    if (w.numerator() == 0) continue;
    Phase x = normalize_phase(ph);
    v[x.numerator() * (n / x.denominator())] += w;
  }
  return from_coeffs(n, reduce(std::move(v), n));
}

CyclotomicValue CyclotomicValue::from_coeffs(Int order, std::vector<Rational> coeffs) {
  CyclotomicValue r;
  r.order_ = order;
  r.coeffs_ = reduce(std::move(coeffs), order);
  return r;
}

CyclotomicValue CyclotomicValue::lifted(Int n) const {
  require(n % order_ == 0, "lift target must be a multiple of the order");
  if (n == order_) return *this;
  std::vector<Rational> v(n, Rational(0));
  const Int step = n / order_;
  for (size_t i = 0; i < coeffs_.size(); ++i) v[i * step] += coeffs_[i];
  return from_coeffs(n, std::move(v));
}

CyclotomicValue CyclotomicValue::operator+(const CyclotomicValue& o) const {
  Int n = std::lcm(order_, o.order_);
  CyclotomicValue a = lifted(n), b = o.lifted(n);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
  return a;
}

CyclotomicValue CyclotomicValue::operator-() const {
  CyclotomicValue r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CyclotomicValue CyclotomicValue::operator-(const CyclotomicValue& o) const { return *this + (-o); }

CyclotomicValue CyclotomicValue::operator*(const CyclotomicValue& o) const {
  Int n = std::lcm(order_, o.order_);
  CyclotomicValue a = lifted(n), b = o.lifted(n);
  std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].numerator() == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return from_coeffs(n, std::move(prod));
}

bool CyclotomicValue::operator==(const CyclotomicValue& o) const {
  Int n = std::lcm(order_, o.order_);
  return lifted(n).coeffs_ == o.lifted(n).coeffs_;
}

CyclotomicValue CyclotomicValue::conj() const {
  std::vector<Rational> v(order_, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) v[(order_ - static_cast<Int>(i)) % order_] += coeffs_[i];
  return from_coeffs(order_, std::move(v));
}

bool CyclotomicValue::is_zero() const {
  for (const auto& c : coeffs_)
    if (c.numerator() != 0) return false;
  return true;
}

bool CyclotomicValue::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i].numerator() != 0) return false;
  return true;
}

Rational CyclotomicValue::to_rational() const {
  require(is_rational(), "cyclotomic value is not rational");
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

CyclotomicValue CyclotomicValue::normalized() const {
  if (is_rational()) return CyclotomicValue(coeffs_.empty() ? Rational(0) : coeffs_[0]);
  for (Int d : divisors(order_)) {
    if (d == order_) break;
    // Columns: zeta_d^i (i < phi(d)) expressed in Q(zeta_order).
    const size_t deg = cyclotomic_polynomial(d).size() - 1;
    std::vector<std::vector<Rational>> cols;
    for (size_t i = 0; i < deg; ++i) cols.push_back(root(Phase(static_cast<Int>(i), d)).lifted(order_).coeffs_);
    std::vector<Rational> x;
    if (solve_rational(cols, coeffs_, x)) return from_coeffs(d, std::move(x));
  }
  return *this;
}

std::string CyclotomicValue::to_string() const {
  std::ostringstream os;
  CyclotomicValue v = normalized();
  bool first = true;
  for (size_t i = 0; i < v.coeffs_.size(); ++i) {
    if (v.coeffs_[i].numerator() == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << cuspcal::to_string(v.coeffs_[i]);
    if (i > 0) os << "*z" << v.order_ << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

void PhaseSum::add(Phase phase, Rational weight) {
  if (weight.numerator() == 0) return;
  auto& w = terms_[normalize_phase(phase)];
  w += weight;
}

}  // namespace cuspcal
