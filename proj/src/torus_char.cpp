#include "cuspcal/torus_char.hpp"

#include <algorithm>
#include <set>

#include "cuspcal/error.hpp"

namespace cuspcal::torus {

namespace {

std::shared_ptr<const UnitFiltrationQuotient> make_quotient(const FieldContext& ctx, int d, int m) {
  return std::make_shared<const UnitFiltrationQuotient>(ctx.subfield(d), m);
}

bool is_trivial_phase(Phase x) { return normalize_phase(x).numerator() == 0; }

}  // namespace

TorusCharacter::TorusCharacter(std::shared_ptr<const FieldContext> ctx, int subfield_degree, int conductor,
                               Phase pi_value, Int teich_exponent, std::vector<Int> wild)
    : ctx_(std::move(ctx)), d_(subfield_degree), m_(conductor), pi_(normalize_phase(pi_value)) {
  require(ctx_ != nullptr, "character needs a field");
  require(d_ >= 1 && ctx_->degree() % d_ == 0, "character subfield degree must divide the field degree");
  require(m_ >= 1, "conductor level must be at least 1");
  Qd_ = ipow(ctx_->p(), d_);
  k_ = mod(teich_exponent, Qd_ - 1);
  quotient_ = make_quotient(*ctx_, d_, m_);
  require(static_cast<int>(wild.size()) == d_, "wild part needs one image per quotient basis element");
  for (auto& a : wild) a = mod(a, quotient_->exponent_modulus());
  wild_ = std::move(wild);
}

TorusCharacter TorusCharacter::trivial(std::shared_ptr<const FieldContext> ctx, int subfield_degree, int conductor) {
  return TorusCharacter(std::move(ctx), subfield_degree, conductor, Phase(0), 0,
                        std::vector<Int>(subfield_degree, 0));
}

TorusCharacter TorusCharacter::generic_of_depth(std::shared_ptr<const FieldContext> ctx, int subfield_degree,
                                                int depth, int conductor) {
  require(depth >= 0 && depth <= conductor, "depth must lie between 0 and the conductor");
  const auto& sub = ctx->subfield(subfield_degree);
  const auto& k = ctx->residue_field();
  const Int p = ctx->p();
  std::vector<Int> wild(subfield_degree, 0);
  if (depth > 0) {
    const int c = sub.zeta_residue();
    const Int scale = ipow(p, conductor - depth);
    for (int j = 0; j < subfield_degree; ++j) {
      int x = k.mul(c, sub.basis()[j].residue());
      int tr = 0;
      for (int i = 0; i < subfield_degree; ++i) tr = k.add(tr, k.frob(x, i));
      wild[j] = scale * tr;  // tr lies in the prime field, encoded by its value
    }
  }
  return TorusCharacter(std::move(ctx), subfield_degree, conductor, Phase(0), 0, std::move(wild));
}

Phase TorusCharacter::eval_principal(std::span<const Int> e) const {
  const Int pm = quotient_->exponent_modulus();
  Int acc = 0;
  for (int i = 0; i < d_; ++i) acc = mod(acc + mulmod(wild_[i], mod(e[i], pm), pm), pm);
  return Phase(acc, pm);
}

Phase TorusCharacter::eval(const FieldElement& x) const {
  const auto& sub = ctx_->subfield(d_);
  require(x.coeff.is_unit(), "character argument must be p^v times a unit");
  require(sub.contains(x.coeff), "character argument does not lie in the subfield");
  const Int j = sub.teich_log(x.coeff);
  const Elem t = sub.zeta().pow(j);
  const Elem w = x.coeff * t.inverse();
  const auto e = quotient_->log(w);
  return normalize_phase(pi_ * Phase(x.val) + eval_teich(j) + eval_principal(e));
}

int TorusCharacter::depth() const {
  const Int p = ctx_->p();
  int best = 0;
  for (Int a : wild_) {
    if (a == 0) continue;
    best = std::max(best, m_ - vp(a, p));
  }
  return best;
}

TorusCharacter TorusCharacter::at_conductor(int m) const {
  require(m >= m_, "cannot lower the conductor level");
  const Int scale = ipow(ctx_->p(), m - m_);
  std::vector<Int> w = wild_;
  for (auto& a : w) a *= scale;
  return TorusCharacter(ctx_, d_, m, pi_, k_, std::move(w));
}

TorusCharacter TorusCharacter::operator*(const TorusCharacter& o) const {
  require(ctx_ == o.ctx_ && d_ == o.d_, "characters live on different groups");
  if (m_ != o.m_) {
    const int m = std::max(m_, o.m_);
    return at_conductor(m) * o.at_conductor(m);
  }
  std::vector<Int> w(d_);
  for (int i = 0; i < d_; ++i) w[i] = wild_[i] + o.wild_[i];
  return TorusCharacter(ctx_, d_, m_, pi_ + o.pi_, k_ + o.k_, std::move(w));
}

TorusCharacter TorusCharacter::inverse() const {
  std::vector<Int> w(d_);
  for (int i = 0; i < d_; ++i) w[i] = -wild_[i];
  return TorusCharacter(ctx_, d_, m_, -pi_, -k_, std::move(w));
}

bool TorusCharacter::operator==(const TorusCharacter& o) const {
  if (ctx_ != o.ctx_ || d_ != o.d_) return false;
  if (m_ != o.m_) {
    const int m = std::max(m_, o.m_);
    return at_conductor(m) == o.at_conductor(m);
  }
  return pi_ == o.pi_ && k_ == o.k_ && wild_ == o.wild_;
}

TorusCharacter TorusCharacter::compose_norm(int target_degree) const {
  require(target_degree % d_ == 0 && ctx_->degree() % target_degree == 0,
          "norm composition needs d | target | n");
  if (target_degree == d_) return *this;
  const Int Qt = ipow(ctx_->p(), target_degree);
  const Int pm = quotient_->exponent_modulus();
  auto target_q = make_quotient(*ctx_, target_degree, m_);
  const auto& N = target_q->norm_matrix(d_);
  std::vector<Int> w(target_degree, 0);
  for (int j = 0; j < target_degree; ++j)
    for (int r = 0; r < d_; ++r) w[j] = mod(w[j] + mulmod(N[r][j], wild_[r], pm), pm);
  // N(p) = p^[target:d], N(zeta_target) = zeta_d.
  return TorusCharacter(ctx_, target_degree, m_, pi_ * Phase(target_degree / d_),
                        k_ * ((Qt - 1) / (Qd_ - 1)), std::move(w));
}

std::optional<int> kernel_restriction_depth(const TorusCharacter& mu, int d) {
  const auto& q = mu.quotient();
  const int m = mu.conductor();
  const Int p = mu.context().p();
  const Int pm = q.exponent_modulus();
  const auto& N = q.norm_matrix(d);
  auto trivial_on_layer = [&](int i) {
    // K meet U_{i+1} = p^i * {y : N y = 0 mod p^(m-i)}.
    auto gens = lattice::kernel_mod_prime_power(N, p, m - i);
    const Int pi = ipow(p, i);
    for (auto y : gens) {
      for (auto& c : y) c = mod(c * pi, pm);
      if (!is_trivial_phase(mu.eval_principal(y))) return false;
    }
    return true;
  };
  if (trivial_on_layer(0)) return std::nullopt;
  for (int i = 1; i < m; ++i)
    if (trivial_on_layer(i)) return i;
  return m;
}

std::optional<int> kernel_restriction_depth_enumerated(const TorusCharacter& mu, int d) {
  const FieldContext& ctx = mu.context();
  require(mu.subfield_degree() == ctx.degree(), "orbit depths are defined for characters of E");
  const int n = ctx.degree(), m = mu.conductor();
  const Int p = ctx.p(), pm = ipow(p, m);
  const Elem one = Elem::one(ctx);
  std::optional<int> best;
  std::vector<Int> y(n, 0);
  for (;;) {
    Elem x = one + Elem::from_coords(ctx, y).scaled(p);
    if (norm_to_subfield(x, d).congruent(one, m + 1)) {
      Phase v = mu.eval(x);
      if (!is_trivial_phase(v)) {
        int level = std::min((x - one).valuation(), m + 1);
        if (!best || level > *best) best = level;
      }
    }
    int i = 0;
    while (i < n && ++y[i] == pm) y[i++] = 0;
    if (i == n) break;
  }
  return best;
}

bool certify_orbit_elementwise(const UnitFiltrationQuotient& q, const OrbitInfo& orbit) {
  const FieldContext& ctx = q.field().context();
  const int m = q.level();
  const Elem one = Elem::one(ctx);
  bool ok = true;
  q.for_each([&](std::span<const Int> e) {
    if (!ok) return;
    const Elem x = q.element(e);
    const Elem xinv = x.inverse();
    bool lattice_trivial = true;
    for (const auto& lambda : orbit.annihilator) {
      Elem prod = one;
      for (size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] == 0) continue;
        const Elem base = (lambda[i] > 0 ? x : xinv).frobenius(static_cast<int>(i));
        prod = prod * base.pow(lambda[i] > 0 ? lambda[i] : -lambda[i]);
      }
      if (!prod.congruent(one, m + 1)) lattice_trivial = false;
    }
    auto image = q.apply_norm(orbit.divisor, e);
    bool norm_trivial = std::all_of(image.begin(), image.end(), [](Int c) { return c == 0; });
    if (lattice_trivial != norm_trivial) ok = false;
  });
  return ok;
}

OrbitAnalysis orbit_restriction_depths(const TorusCharacter& mu) {
  const int n = mu.context().degree();
  require(mu.subfield_degree() == n, "orbit analysis needs a character of E");
  OrbitAnalysis out;
  out.n = n;
  for (int delta = 1; delta < n; ++delta) {
    OrbitInfo info;
    info.delta = delta;
    info.divisor = std::gcd(delta, n);
    info.coroot_rows = lattice::orbit_coroot_rows(n, delta);
    info.annihilator = lattice::integer_kernel(info.coroot_rows);
    info.lattice_certificate = lattice::same_lattice(info.annihilator, lattice::coset_sum_rows(n, info.divisor));
    if (!info.lattice_certificate) fail_assert("coroot annihilator is not spanned by coset sums");
    info.depth = kernel_restriction_depth(mu, info.divisor);
    out.orbits.push_back(std::move(info));
  }
  return out;
}

std::string level_name(int n, int subfield_degree) {
  const int r = n / subfield_degree;
  if (subfield_degree == n) return "T";
  if (subfield_degree == 1) return "GL" + std::to_string(r);
  return "GL" + std::to_string(r) + "(E" + std::to_string(subfield_degree) + ")";
}

namespace {

// The orbit set must be {delta : D | delta} for a divisor D of n.
int subsystem_divisor(int n, const std::set<int>& s) {
  for (int a : s) {
    if (!s.count(mod(-a, n))) fail_assert("orbit set is not closed under negation");
    for (int b : s) {
      int c = mod(a + b, n);
      if (c != 0 && !s.count(c)) fail_assert("orbit set is not closed under root addition");
    }
  }
  const int D = s.empty() ? n : *s.begin();
  for (int delta = 1; delta < n; ++delta)
    if ((delta % D == 0) != (s.count(delta) > 0)) fail_assert("orbit set is not a standard subsystem");
  return D;
}

}  // namespace

LeviTower levi_tower(const TorusCharacter& mu, const OrbitAnalysis& analysis) {
  const int n = analysis.n;
  LeviTower t;
  std::set<int> positive;
  for (const auto& o : analysis.orbits) {
    if (!o.depth) t.phi_mu.push_back(o.delta);
    else positive.insert(*o.depth);
  }
  auto level_for = [&](int r) {
    std::set<int> s;
    for (const auto& o : analysis.orbits)
      if (!o.depth || *o.depth <= r) s.insert(o.delta);
    const int D = subsystem_divisor(n, s);
    return TowerLevel{D, n / D, level_name(n, D)};
  };
  t.tower.push_back(level_for(0));
  for (int r : positive) {
    t.tower.push_back(level_for(r));
    t.depths.push_back(r);
  }
  if (t.tower.back().subfield_degree != 1) fail_assert("tower does not reach G");
  const int dmu = mu.depth();
  if (dmu > 0 && (positive.empty() || dmu > *positive.rbegin())) {
    t.depths.push_back(dmu);
    t.depth_appended = true;
  }
  return t;
}

LeviTower levi_tower(const TorusCharacter& mu) { return levi_tower(mu, orbit_restriction_depths(mu)); }

RegularityReport is_regular_pair(const TorusCharacter& mu, int bottom_degree) {
  const FieldContext& ctx = mu.context();
  const int n = ctx.degree();
  require(mu.subfield_degree() == n, "regularity is tested for characters of E");
  require(n % bottom_degree == 0, "bottom subfield degree must divide n");
  const Int QE = ctx.residue_size();
  const Int QD = ipow(ctx.p(), bottom_degree);
  const int r = n / bottom_degree;
  RegularityReport rep;
  const Int k = mu.teich_exponent();
  for (int j = 1; j < r; ++j)
    if (mod(k * powmod(QD, j, QE - 1) - k, QE - 1) == 0) ++rep.stabilizer_size;
  rep.regular = rep.stabilizer_size == 1;
  rep.diagnostic = rep.regular ? "residue character is in general position"
                               : "residue character is fixed by " + std::to_string(rep.stabilizer_size - 1) +
                                     " nontrivial Frobenius power(s) of the bottom group";
  return rep;
}

}  // namespace cuspcal::torus
