#include "cuspcal/padic.hpp"

#include <algorithm>

#include "cuspcal/error.hpp"

namespace cuspcal::padic {

namespace {

using IntMatrix = std::vector<std::vector<Int>>;

// Inverse modulo p^k of a square matrix whose reduction mod p is invertible.
IntMatrix inverse_mod_prime_power(IntMatrix a, Int p, Int pk) {
  const size_t n = a.size();
  IntMatrix inv(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1 % pk;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] % p == 0) ++piv;
    require(piv < n, "matrix is singular modulo p");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Int s = invmod(a[col][col], pk);
    for (size_t j = 0; j < n; ++j) {
      a[col][j] = mulmod(a[col][j], s, pk);
      inv[col][j] = mulmod(inv[col][j], s, pk);
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Int c = a[r][col];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] = mod(a[r][j] - mulmod(c, a[col][j], pk), pk);
        inv[r][j] = mod(inv[r][j] - mulmod(c, inv[col][j], pk), pk);
      }
    }
  }
  return inv;
}

}  // namespace

// ---------------------------------------------------------------------------
// Elem

Elem Elem::zero(const FieldContext& ctx) {
  Elem e;
  e.ctx_ = &ctx;
  return e;
}

Elem Elem::one(const FieldContext& ctx) { return from_int(ctx, 1); }

Elem Elem::from_int(const FieldContext& ctx, Int c) {
  Elem e = zero(ctx);
  e.c_[0] = mod(c, ctx.modulus());
  return e;
}

Elem Elem::from_coords(const FieldContext& ctx, std::span<const Int> coords) {
  require(static_cast<int>(coords.size()) == ctx.degree(), "coordinate vector has wrong length");
  Elem e = zero(ctx);
  for (int i = 0; i < ctx.degree(); ++i) e.c_[i] = mod(coords[i], ctx.modulus());
  return e;
}

std::vector<Int> Elem::coords() const { return {c_.begin(), c_.begin() + ctx_->degree()}; }

Elem Elem::operator+(const Elem& o) const {
  Elem r = *this;
  const Int m = ctx_->modulus();
  for (int i = 0; i < ctx_->degree(); ++i) {
    r.c_[i] += o.c_[i];
    if (r.c_[i] >= m) r.c_[i] -= m;
  }
  return r;
}

Elem Elem::operator-(const Elem& o) const { return *this + (-o); }

Elem Elem::operator-() const {
  Elem r = *this;
  const Int m = ctx_->modulus();
  for (int i = 0; i < ctx_->degree(); ++i) r.c_[i] = r.c_[i] == 0 ? 0 : m - r.c_[i];
  return r;
}

Elem Elem::operator*(const Elem& o) const { return ctx_->mul(*this, o); }

Elem Elem::scaled(Int k) const {
  Elem r = *this;
  const Int m = ctx_->modulus();
  for (int i = 0; i < ctx_->degree(); ++i) r.c_[i] = mulmod(r.c_[i], mod(k, m), m);
  return r;
}

Elem Elem::pow(Int e) const {
  require(e >= 0, "Elem::pow: negative exponent");
  Elem result = one(*ctx_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Elem Elem::inverse() const {
  require(is_unit(), "inverse of a non-unit");
  // x^(Q-2) inverts x modulo p; Newton steps y <- y(2 - xy) double the precision.
  Elem y = pow(ctx_->residue_size() - 2);
  const Elem two = from_int(*ctx_, 2);
  for (int prec = 1; prec < ctx_->precision(); prec *= 2) y = y * (two - *this * y);
  return y;
}

bool Elem::is_zero() const {
  for (int i = 0; i < ctx_->degree(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Elem::is_unit() const { return residue() != 0; }

int Elem::valuation() const {
  int v = ctx_->precision();
  for (int i = 0; i < ctx_->degree(); ++i)
    if (c_[i] != 0) v = std::min(v, vp(c_[i], ctx_->p()));
  return v;
}

bool Elem::congruent(const Elem& o, int level) const {
  const Int pl = ipow(ctx_->p(), std::min(level, ctx_->precision()));
  for (int i = 0; i < ctx_->degree(); ++i)
    if ((c_[i] - o.c_[i]) % pl != 0) return false;
  return true;
}

Elem Elem::divided_by_p(int k) const {
  const Int pk = ipow(ctx_->p(), k);
  Elem r = *this;
  for (int i = 0; i < ctx_->degree(); ++i) {
    require(c_[i] % pk == 0, "divided_by_p: element not divisible");
    r.c_[i] = c_[i] / pk;
  }
  return r;
}

int Elem::residue() const {
  int r = 0;
  for (int i = ctx_->degree() - 1; i >= 0; --i) r = r * ctx_->p() + static_cast<int>(c_[i] % ctx_->p());
  return r;
}

Elem Elem::frobenius(int k) const {
  const int f = ctx_->degree();
  k = static_cast<int>(mod(k, f));
  Elem x = *this;
  for (int step = 0; step < k; ++step) {
    Elem y = zero(*ctx_);
    for (int i = 0; i < f; ++i)
      if (x.c_[i] != 0) y += ctx_->frob_powers_[i].scaled(x.c_[i]);
    x = y;
  }
  return x;
}

// ---------------------------------------------------------------------------
// FieldContext

std::shared_ptr<const FieldContext> FieldContext::make(int p, int f, int N, std::optional<std::vector<Int>> poly) {
  if (p == 2) fail("p must be odd");
  require(is_prime(p), "p must be an odd prime");
  require(f >= 1 && f <= kMaxDegree, "extension degree out of range");
  require(N >= 1, "precision must be positive");
  require(ipow(p, N) < (Int{1} << 28), "precision budget exceeded: p^N must stay below 2^28");
  std::vector<Int> pl;
  if (poly) {
    pl = *poly;
  } else {
    auto g = gf::smallest_irreducible(p, f);
    pl.assign(g.begin(), g.end());
  }
  return std::make_shared<const FieldContext>(p, f, N, std::move(pl));
}

FieldContext::FieldContext(int p, int f, int N, std::vector<Int> poly)
    : p_(p), f_(f), N_(N), pN_(ipow(p, N)), Q_(ipow(p, f)), poly_(std::move(poly)) {
  require(static_cast<int>(poly_.size()) == f_ + 1 && poly_[f_] == 1,
          "defining polynomial must be monic of degree f");
  gf::Poly reduced(f_ + 1);
  for (int i = 0; i <= f_; ++i) {
    poly_[i] = mod(poly_[i], pN_);
    reduced[i] = static_cast<int>(mod(poly_[i], p_));
  }
  require(gf::is_irreducible(reduced, p_), "defining polynomial is not irreducible modulo p");
  residue_ = std::make_shared<const gf::Field>(p_, reduced);

  // sigma(a) is the root of the defining polynomial congruent to a^p; Newton's
  // method converges because the polynomial is separable modulo p.
  frob_powers_.assign(f_, Elem::one(*this));
  std::vector<Int> a_coords(f_, 0);
  if (f_ > 1) {
    a_coords[1] = 1;
  } else {
    a_coords[0] = mod(-poly_[0], pN_);
  }
  const Elem alpha = Elem::from_coords(*this, a_coords);
  auto eval = [&](const Elem& r) {
    Elem acc = Elem::zero(*this);
    for (int i = f_; i >= 0; --i) acc = acc * r + Elem::from_int(*this, poly_[i]);
    return acc;
  };
  auto deriv = [&](const Elem& r) {
    Elem acc = Elem::zero(*this);
    for (int i = f_; i >= 1; --i) acc = acc * r + Elem::from_int(*this, poly_[i] * i);
    return acc;
  };
  Elem root = alpha.pow(p_);
  for (int iter = 0; iter <= N_ + 1; ++iter) root = root - eval(root) * deriv(root).inverse();
  require(eval(root).is_zero(), "Frobenius lift failed to converge");
  for (int i = 1; i < f_; ++i) frob_powers_[i] = frob_powers_[i - 1] * root;

  zeta_ = teichmuller(lift(residue_->primitive()));

  subfields_.resize(f_ + 1);
  for (int d = 1; d <= f_; ++d)
    if (f_ % d == 0) subfields_[d] = std::make_unique<Subfield>(*this, d);
}

Elem FieldContext::mul(const Elem& a, const Elem& b) const {
  // Products of residues below 2^28 fit comfortably in 64 bits.
  std::array<Int, 2 * kMaxDegree> prod{};
  for (int i = 0; i < f_; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + a.c_[i] * b.c_[j]) % pN_;
  }
  // x^f = -(c0 + c1 x + ... ), folding from the top down.
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    Int top = prod[k];
    if (top == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < f_; ++i) prod[k - f_ + i] = mod(prod[k - f_ + i] - mulmod(top, poly_[i], pN_), pN_);
  }
  Elem r = Elem::zero(*this);
  for (int i = 0; i < f_; ++i) r.c_[i] = prod[i];
  return r;
}

Elem FieldContext::lift(int residue) const {
  auto d = residue_->digits(residue);
  std::vector<Int> c(d.begin(), d.end());
  return Elem::from_coords(*this, c);
}

Elem FieldContext::teich_lift(int residue) const {
  if (residue == 0) return Elem::zero(*this);
  return teichmuller(lift(residue));
}

const Subfield& FieldContext::subfield(int d) const {
  require(d >= 1 && d <= f_ && f_ % d == 0, "subfield degree must divide the extension degree");
  return *subfields_[d];
}

std::shared_ptr<const FieldContext> FieldContext::with_precision(int N) const {
  return make(p_, f_, N, poly_);
}

Elem FieldContext::transfer(const Elem& x) const {
  require(x.context().p() == p_ && x.context().degree() == f_, "transfer between unrelated fields");
  Elem r = Elem::zero(*this);
  for (int i = 0; i < f_; ++i) r.c_[i] = mod(x.coord(i), pN_);
  return r;
}

// ---------------------------------------------------------------------------

Elem teichmuller(const Elem& x) {
  require(x.is_unit(), "teichmuller: input must be a unit");
  const Int Q = x.context().residue_size();
  Elem cur = x;
  for (int i = 0; i <= x.context().precision() + 1; ++i) {
    Elem next = cur.pow(Q);
    if (next == cur) return cur;
    cur = next;
  }
  fail_assert("teichmuller: iteration did not reach a fixed point");
}

Elem relative_norm(const Elem& x, int from, int to) {
  const int f = x.context().degree();
  require(from >= 1 && f % from == 0 && to >= 1 && from % to == 0, "relative_norm: degrees must divide");
  Elem acc = Elem::one(x.context());
  Elem conj = x;
  for (int k = 0; k < from / to; ++k) {
    acc = acc * conj;
    conj = conj.frobenius(to);
  }
  return acc;
}

Elem norm_to_subfield(const Elem& x, int d) {
  const int f = x.context().degree();
  if (d < 1 || f % d != 0) fail("d does not divide f");
  return relative_norm(x, f, d);
}

// ---------------------------------------------------------------------------
// Subfield

Subfield::Subfield(const FieldContext& ctx, int d) : ctx_(&ctx), d_(d), Qd_(ipow(ctx.p(), d)) {
  const int f = ctx.degree();
  const Int p = ctx.p();
  zeta_ = ctx.zeta().pow((ctx.residue_size() - 1) / (Qd_ - 1));
  zeta_residue_ = zeta_.residue();
  if (d == f) {
    for (int i = 0; i < f; ++i) {
      std::vector<Int> c(f, 0);
      c[i] = 1;
      basis_.push_back(Elem::from_coords(ctx, c));
    }
  } else {
    Elem w = Elem::one(ctx);
    for (int j = 0; j < d; ++j, w = w * zeta_) basis_.push_back(w);
  }
  // Pick d coordinate rows on which the basis is invertible modulo p.
  IntMatrix rows(f, std::vector<Int>(d));
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < d; ++j) rows[i][j] = basis_[j].coord(i);
  IntMatrix work = rows;
  for (auto& r : work)
    for (auto& v : r) v = mod(v, p);
  std::vector<bool> used(f, false);
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int i = 0; i < f; ++i)
      if (!used[i] && work[i][col] % p != 0) {
        piv = i;
        break;
      }
    require(piv >= 0, "subfield basis is degenerate modulo p");
    used[piv] = true;
    pivots_.push_back(piv);
    Int s = invmod(work[piv][col], p);
    for (int i = 0; i < f; ++i) {
      if (i == piv || work[i][col] == 0) continue;
      Int c = mulmod(work[i][col], s, p);
      for (int j = 0; j < d; ++j) work[i][j] = mod(work[i][j] - c * work[piv][j], p);
    }
  }
  IntMatrix minor(d, std::vector<Int>(d));
  for (int a = 0; a < d; ++a) minor[a] = rows[pivots_[a]];
  minor_inv_ = inverse_mod_prime_power(minor, p, ctx.modulus());
}

bool Subfield::contains(const Elem& x) const { return x.frobenius(d_) == x; }

std::vector<Int> Subfield::coordinates(const Elem& x) const {
  const Int m = ctx_->modulus();
  std::vector<Int> c(d_, 0);
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b) c[a] = mod(c[a] + mulmod(minor_inv_[a][b], x.coord(pivots_[b]), m), m);
  require(from_coordinates(c) == x, "element does not lie in the subfield");
  return c;
}

Elem Subfield::from_coordinates(std::span<const Int> c) const {
  require(static_cast<int>(c.size()) == d_, "subfield coordinate vector has wrong length");
  Elem r = Elem::zero(*ctx_);
  for (int j = 0; j < d_; ++j) r += basis_[j].scaled(c[j]);
  return r;
}

std::vector<Int> Subfield::residue_coordinates(int residue) const {
  const Int p = ctx_->p();
  auto digits = ctx_->residue_field().digits(residue);
  std::vector<Int> c(d_, 0);
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b) c[a] = mod(c[a] + minor_inv_[a][b] % p * digits[pivots_[b]], p);
  // Verify that the residue really lies in the subfield.
  std::vector<Int> back(ctx_->degree(), 0);
  for (int j = 0; j < d_; ++j)
    for (int i = 0; i < ctx_->degree(); ++i) back[i] = mod(back[i] + c[j] * basis_[j].coord(i), p);
  for (int i = 0; i < ctx_->degree(); ++i)
    require(back[i] == digits[i], "residue does not lie in the subfield");
  return c;
}

Int Subfield::teich_log(const Elem& x) const {
  require(x.is_unit(), "teich_log: input must be a unit");
  const Int step = (ctx_->residue_size() - 1) / (Qd_ - 1);
  Int L = ctx_->residue_field().log(x.residue());
  require(L % step == 0, "teich_log: residue is not in the subfield");
  return L / step;
}

// ---------------------------------------------------------------------------
// UnitFiltrationQuotient

UnitFiltrationQuotient::UnitFiltrationQuotient(const Subfield& field, int level)
    : field_(&field), m_(level) {
  const FieldContext& ctx = field.context();
  require(m_ >= 1, "filtration level must be positive");
  if (m_ + 1 > ctx.precision()) fail("insufficient precision: level m needs precision at least m+1");
  pm_ = ipow(ctx.p(), m_);
  const int d = field.degree();
  const Elem one = Elem::one(ctx);
  for (int j = 0; j < d; ++j) basis_.push_back(one + field.basis()[j].scaled(ctx.p()));
  inv_layers_.resize(m_);
  for (int j = 0; j < m_; ++j)
    for (int i = 0; i < d; ++i) inv_layers_[j].push_back(basis_[i].pow(ipow(ctx.p(), j)).inverse());

  subs_.resize(d + 1);
  norm_.resize(d + 1);
  for (int sub = 1; sub <= d; ++sub) {
    if (d % sub != 0) continue;
    if (sub == d) {
      norm_[sub].assign(d, std::vector<Int>(d, 0));
      for (int i = 0; i < d; ++i) norm_[sub][i][i] = 1 % pm_;
      continue;
    }
    subs_[sub] = std::make_shared<UnitFiltrationQuotient>(ctx.subfield(sub), m_);
    norm_[sub].assign(sub, std::vector<Int>(d, 0));
    for (int i = 0; i < d; ++i) {
      auto col = subs_[sub]->log(relative_norm(basis_[i], d, sub));
      for (int r = 0; r < sub; ++r) norm_[sub][r][i] = col[r];
    }
  }
}

Int UnitFiltrationQuotient::order() const { return ipow(field_->residue_size(), m_); }

std::vector<Int> UnitFiltrationQuotient::log(const Elem& w) const {
  const FieldContext& ctx = field_->context();
  const int d = rank();
  require(w.congruent(Elem::one(ctx), 1), "log: not a principal unit");
  std::vector<Int> e(d, 0);
  Elem cur = w;
  const Elem one = Elem::one(ctx);
  Int pj = 1;
  for (int j = 1; j <= m_; ++j) {
    // cur = 1 + p^j y; read off y modulo p in the residue basis.
    Elem y = (cur - one).divided_by_p(j);
    auto digits = field_->residue_coordinates(y.residue());
    for (int i = 0; i < d; ++i) {
      if (digits[i] == 0) continue;
      e[i] += digits[i] * pj;
      cur = cur * inv_layers_[j - 1][i].pow(digits[i]);
    }
    pj *= ctx.p();
  }
  require(cur.congruent(one, m_ + 1), "log: residual element is not in the next filtration step");
  return e;
}

Elem UnitFiltrationQuotient::element(std::span<const Int> e) const {
  require(static_cast<int>(e.size()) == rank(), "exponent vector has wrong length");
  Elem r = Elem::one(field_->context());
  for (int i = 0; i < rank(); ++i) r = r * basis_[i].pow(mod(e[i], pm_));
  return r;
}

int UnitFiltrationQuotient::filtration_level(std::span<const Int> e) const {
  int lvl = m_ + 1;
  for (Int x : e) {
    x = mod(x, pm_);
    if (x != 0) lvl = std::min(lvl, 1 + vp(x, field_->context().p()));
  }
  return lvl;
}

const std::vector<std::vector<Int>>& UnitFiltrationQuotient::norm_matrix(int sub) const {
  require(sub >= 1 && rank() % sub == 0, "norm target must be a subfield");
  return norm_[sub];
}

std::vector<Int> UnitFiltrationQuotient::apply_norm(int sub, std::span<const Int> e) const {
  const auto& mat = norm_matrix(sub);
  std::vector<Int> out(sub, 0);
  for (int r = 0; r < sub; ++r)
    for (int c = 0; c < rank(); ++c) out[r] = mod(out[r] + mulmod(mat[r][c], e[c], pm_), pm_);
  return out;
}

const UnitFiltrationQuotient& UnitFiltrationQuotient::sub_quotient(int sub) const {
  require(sub >= 1 && rank() % sub == 0, "sub_quotient: not a subfield");
  return sub == rank() ? *this : *subs_[sub];
}

std::shared_ptr<const UnitFiltrationQuotient> unit_group_quotient(const FieldContext& ctx, int m) {
  return std::make_shared<const UnitFiltrationQuotient>(ctx.subfield(ctx.degree()), m);
}

}  // namespace cuspcal::padic
