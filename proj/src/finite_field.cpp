#include "cuspcal/finite_field.hpp"

#include "cuspcal/error.hpp"

namespace cuspcal::gf {

namespace {

int degree_of(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

// Remainder of a modulo monic-or-not b over F_p.
Poly poly_mod(Poly a, const Poly& b, int p) {
  int db = degree_of(b);
  Int lead_inv = invmod(b[db], p);
  for (int da = degree_of(a); da >= db; da = degree_of(a)) {
    int c = static_cast<int>(mulmod(a[da], lead_inv, p));
    for (int i = 0; i <= db; ++i) a[da - db + i] = static_cast<int>(mod(a[da - db + i] - static_cast<Int>(c) * b[i], p));
  }
  a.resize(std::max(db, 1));
  return a;
}

}  // namespace

bool is_irreducible(const Poly& f, int p) {
  int n = degree_of(f);
  if (n < 1) return false;
  if (n == 1) return true;
  // Trial division by every monic polynomial of degree 1..n/2.
  for (int d = 1; d <= n / 2; ++d) {
    Int count = ipow(p, d);
    for (Int code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      Int c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      Poly r = poly_mod(f, g, p);
      if (degree_of(r) < 0) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(int p, int degree) {
  require(degree >= 1, "field degree must be positive");
  Int count = ipow(p, degree);
  for (Int code = 0; code < count; ++code) {
    Poly f(degree + 1, 0);
    Int c = code;
    for (int i = 0; i < degree; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    f[degree] = 1;
    if (is_irreducible(f, p)) return f;
  }
  fail("no irreducible polynomial found");
}

Field::Field(int p, Poly poly) : p_(p), poly_(std::move(poly)) {
  require(is_prime(p), "field characteristic must be prime");
  degree_ = degree_of(poly_);
  require(degree_ >= 1 && poly_[degree_] == 1, "defining polynomial must be monic of positive degree");
  poly_.resize(degree_ + 1);
  require(is_irreducible(poly_, p), "defining polynomial is reducible over F_p");
  q_ = static_cast<int>(ipow(p, degree_));

  require(q_ <= 1 << 16, "finite field too large");
  neg_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    auto da = digits(a);
    for (auto& c : da) c = (p_ - c) % p_;
    neg_[a] = from_digits(da);
  }
  auto slow_add = [&](int a, int b) {
    auto da = digits(a), db = digits(b);
    for (int i = 0; i < degree_; ++i) da[i] = (da[i] + db[i]) % p_;
    return from_digits(da);
  };

  // Schoolbook multiplication, used only to build the log tables.
  auto slow_mul = [&](int a, int b) {
    auto da = digits(a), db = digits(b);
    Poly prod(2 * degree_, 0);
    for (int i = 0; i < degree_; ++i)
      for (int j = 0; j < degree_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    Poly r = poly_mod(prod, poly_, p_);
    r.resize(degree_, 0);
    return from_digits(r);
  };

  for (int g = 1; g < q_; ++g) {
    std::vector<int> powers;
    int x = 1;
    do {
      powers.push_back(x);
      x = slow_mul(x, g);
    } while (x != 1 && static_cast<int>(powers.size()) < q_);
    if (static_cast<int>(powers.size()) == q_ - 1) {
      exp_ = std::move(powers);
      break;
    }
  }
  require(static_cast<int>(exp_.size()) == q_ - 1, "no primitive element found");
  log_.assign(q_, -1);
  for (int k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;
  zech_.assign(q_ - 1, -1);
  for (int k = 0; k < q_ - 1; ++k) {
    int s = slow_add(1, exp_[k]);
    zech_[k] = s == 0 ? -1 : log_[s];
  }
}

std::shared_ptr<const Field> Field::make(int p, int degree) {
  return std::make_shared<const Field>(p, smallest_irreducible(p, degree));
}

int Field::inv(int a) const {
  require(a != 0, "inverse of zero in finite field");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int Field::pow(int a, Int e) const {
  if (a == 0) {
    require(e >= 0, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  return exp_[mod(static_cast<Int>(log_[a]) * mod(e, q_ - 1), q_ - 1)];
}

Int Field::log(int a) const {
  require(a != 0, "discrete log of zero");
  return log_[a];
}

int Field::frob(int a, int k) const {
  Int e = ipow(p_, mod(k, degree_));
  return pow(a, e);
}

std::vector<int> Field::subfield_elements(int sub_degree) const {
  require(sub_degree > 0 && degree_ % sub_degree == 0, "subfield degree must divide the field degree");
  std::vector<int> out;
  for (int a = 0; a < q_; ++a)
    if (in_subfield(a, sub_degree)) out.push_back(a);
  return out;
}

std::vector<int> Field::digits(int a) const {
  std::vector<int> d(degree_);
  for (int i = 0; i < degree_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

int Field::from_digits(const std::vector<int>& d) const {
  int a = 0;
  for (int i = degree_ - 1; i >= 0; --i) a = a * p_ + mod(d[i], p_);
  return a;
}

}  // namespace cuspcal::gf
