#include "cuspcal/weakfact.hpp"

#include "cuspcal/error.hpp"

namespace cuspcal::weakfact {

using padic::Elem;
using padic::FieldContext;
using padic::FieldElement;

namespace {

// Right inverse of a surjective matrix over Z/p^m: columns x_j with A x_j = e_j.
std::vector<std::vector<Int>> right_inverse(const lattice::IntMatrix& a, Int p, Int pm) {
  const size_t rows = a.size(), cols = a[0].size();
  // Row-reduce [A | I] using unit pivots.
  std::vector<std::vector<Int>> w(rows, std::vector<Int>(cols + rows, 0));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) w[i][j] = mod(a[i][j], pm);
    w[i][cols + i] = 1;
  }
  std::vector<size_t> pivot_col(rows);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && w[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(w[piv], w[r]);
    const Int s = invmod(w[r][c], pm);
    for (auto& x : w[r]) x = mulmod(x, s, pm);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || w[i][c] == 0) continue;
      const Int f = w[i][c];
      for (size_t j = 0; j < cols + rows; ++j) w[i][j] = mod(w[i][j] - mulmod(f, w[r][j], pm), pm);
    }
    pivot_col[r++] = c;
  }
  if (r < rows) fail_assert("norm map is not surjective on principal units");
  // x_j has entry (row i's multiplier of e_j) on pivot column of row i.
  std::vector<std::vector<Int>> x(rows, std::vector<Int>(cols, 0));
  for (size_t j = 0; j < rows; ++j)
    for (size_t i = 0; i < rows; ++i) x[j][pivot_col[i]] = w[i][cols + j];
  return x;
}

}  // namespace

WeakFactorization weak_factorize(const TorusCharacter& mu, const torus::LeviTower& tower, TieBreak tb) {
  const FieldContext& ctx = mu.context();
  const int n = ctx.degree();
  const int D = tower.bottom_degree();
  if (!torus::is_regular_pair(mu, D).regular) fail("not a regular pair");

  const auto& q = mu.quotient();
  const int m = mu.conductor();
  const Int p = ctx.p(), pm = q.exponent_modulus();
  const auto& N = q.norm_matrix(D);

  for (const auto& y : lattice::kernel_mod_prime_power(N, p, m))
    if (mu.eval_principal(y).numerator() != 0) fail_assert("wild part does not factor through the norm");

  const auto x = right_inverse(N, p, pm);
  std::vector<Int> c(D, 0);
  for (int j = 0; j < D; ++j)
    for (int i = 0; i < n; ++i) c[j] = mod(c[j] + mulmod(mu.wild()[i], x[j][i], pm), pm);

  TorusCharacter chi(mu.context_ptr(), D, m, tb.pi, tb.teich, c);
  TorusCharacter chi_on_T = chi.compose_norm(n);
  if (chi_on_T.wild() != mu.wild()) fail_assert("wild part does not factor through the norm");
  TorusCharacter mu_minus = mu * chi_on_T.inverse();
  if (mu_minus.depth() != 0) fail_assert("mu_minus has positive depth");
  if (!torus::is_regular_pair(mu_minus, D).regular) fail_assert("mu_minus is not regular for H");
  return WeakFactorization{mu, mu_minus, chi, D, tb};
}

WeakFactorization weak_factorize(const TorusCharacter& mu, TieBreak tb) {
  return weak_factorize(mu, torus::levi_tower(mu), tb);
}

TorusEmbedding::TorusEmbedding(std::shared_ptr<const FieldContext> ctx, int bottom_degree)
    : ctx_(std::move(ctx)), D_(bottom_degree) {
  const int n = ctx_->degree();
  require(D_ >= 1 && n % D_ == 0, "bottom degree must divide n");
  r_ = n / D_;
  const Elem& z = ctx_->zeta();
  for (int i = 0; i < r_; ++i) powers_.push_back(z.pow(i));
  // V[k][i] = sigma^(Dk)(zeta^i).
  padic::Matrix V(*ctx_, r_);
  for (int k = 0; k < r_; ++k)
    for (int i = 0; i < r_; ++i) V(k, i) = powers_[i].frobenius(D_ * k);
  vandermonde_inv_ = V.inverse();
  zeta_bar_ = matrix_of(z).residue();
}

std::vector<Elem> TorusEmbedding::coordinates(const Elem& y) const {
  std::vector<Elem> conj(r_);
  for (int k = 0; k < r_; ++k) conj[k] = y.frobenius(D_ * k);
  std::vector<Elem> c(r_, Elem::zero(*ctx_));
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < r_; ++k) c[i] += vandermonde_inv_(i, k) * conj[k];
  const auto& sub = ctx_->subfield(D_);
  for (const auto& x : c) require(sub.contains(x), "coordinate outside E_D");
  return c;
}

Elem TorusEmbedding::from_coordinates(const std::vector<Elem>& c) const {
  Elem y = Elem::zero(*ctx_);
  for (int i = 0; i < r_; ++i) y += c[i] * powers_[i];
  return y;
}

padic::Matrix TorusEmbedding::matrix_of(const Elem& t) const {
  padic::Matrix M(*ctx_, r_);
  for (int j = 0; j < r_; ++j) {
    auto col = coordinates(t * powers_[j]);
    for (int i = 0; i < r_; ++i) M(i, j) = col[i];
  }
  return M;
}

CompactModCenterElement TorusEmbedding::element_of(const FieldElement& t) const {
  return {t.val, matrix_of(t.coeff)};
}

ExtendedCharacter::ExtendedCharacter(WeakFactorization wf)
    : wf_(std::move(wf)), emb_(wf_.mu.context_ptr(), wf_.bottom_degree) {}

Phase ExtendedCharacter::mu_plus(const CompactModCenterElement& g) const {
  const int r = g.size();
  return wf_.chi.eval(FieldElement{r * g.scalar_exp, g.unit.det()});
}

std::optional<Phase> ExtendedCharacter::sharp(const CompactModCenterElement& g) const {
  require(g.size() == emb_.rank(), "element has the wrong size for H");
  if (!emb_.in_residue_torus(g.unit.residue())) return std::nullopt;
  std::vector<Elem> col(emb_.rank());
  for (int i = 0; i < emb_.rank(); ++i) col[i] = g.unit(i, 0);
  const Elem t = emb_.from_coordinates(col);
  const padic::Matrix y = emb_.matrix_of(t).inverse() * g.unit;
  if (!y.residue().is_identity()) fail_assert("torus part does not match the residue");
  const Phase value = wf_.mu.eval(FieldElement{g.scalar_exp, t}) +
                      wf_.chi.eval(FieldElement{0, y.det()});
  return normalize_phase(value);
}

CyclotomicValue ExtendedCharacter::dot(const CompactModCenterElement& g) const {
  auto v = sharp(g);
  return v ? CyclotomicValue::root(*v) : CyclotomicValue(0);
}

Phase ExtendedCharacter::hat(const FieldElement& t, const CompactModCenterElement& u) const {
  if (u.scalar_exp != 0 || !u.unit.residue().is_unipotent()) fail("u is not topologically unipotent");
  return normalize_phase(wf_.mu.eval(t) + mu_plus(u));
}

std::vector<FieldElement> torus_generators(const TorusCharacter& mu) {
  const FieldContext& ctx = mu.context();
  std::vector<FieldElement> out;
  out.push_back({1, Elem::one(ctx)});
  out.push_back({0, ctx.zeta()});
  for (const auto& b : mu.quotient().basis()) out.push_back({0, b});
  return out;
}

}  // namespace cuspcal::weakfact
