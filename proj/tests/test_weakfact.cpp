#include <random>

#include "cuspcal/error.hpp"
#include "cuspcal/weakfact.hpp"
#include "doctest.h"

using namespace cuspcal;
using namespace cuspcal::weakfact;
using jordan::CompactModCenterElement;
using padic::Elem;
using padic::FieldContext;
using padic::FieldElement;

namespace {

const std::vector<TieBreak> kTieBreaks{{0, Phase(0)}, {1, Phase(0)}, {0, Phase(1, 2)}, {1, Phase(2, 3)}};

Elem random_unit(const FieldContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> c(0, ctx.modulus() - 1);
  for (;;) {
    std::vector<Int> v(ctx.degree());
    for (auto& x : v) x = c(rng);
    Elem e = Elem::from_coords(ctx, v);
    if (e.is_unit()) return e;
  }
}

// Generators of H_{x,0+} = 1 + p M_r(O_{E_D}): elementary matrices and diagonal ones.
std::vector<CompactModCenterElement> principal_congruence_generators(const FieldContext& ctx, int D) {
  const int r = ctx.degree() / D;
  std::vector<CompactModCenterElement> out;
  for (const auto& b : ctx.subfield(D).basis())
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        padic::Matrix m = padic::Matrix::identity(ctx, r);
        m(i, j) = m(i, j) + b.scaled(ctx.p());
        out.push_back({0, m});
      }
  return out;
}

TorusCharacter mu_through_norm(std::shared_ptr<const FieldContext> ctx, int d, int depth, Int k) {
  const int n = ctx->degree();
  return TorusCharacter::generic_of_depth(ctx, d, depth, depth).compose_norm(n) *
         TorusCharacter(ctx, n, depth, Phase(1, 5), k, std::vector<Int>(n, 0));
}

}  // namespace

TEST_CASE("embedding of T") {
  std::mt19937_64 rng(1);
  for (auto [f, D] : std::vector<std::pair<int, int>>{{2, 1}, {4, 2}, {3, 1}}) {
    auto ctx = FieldContext::make(3, f, 3);
    const TorusEmbedding emb(ctx, D);
    for (int i = 0; i < 10; ++i) {
      const Elem x = random_unit(*ctx, rng), y = random_unit(*ctx, rng);
      CHECK(emb.from_coordinates(emb.coordinates(x)) == x);
      CHECK(emb.matrix_of(x * y) == emb.matrix_of(x) * emb.matrix_of(y));
      CHECK(emb.matrix_of(x).det() == padic::norm_to_subfield(x, D));
      CHECK(emb.in_residue_torus(emb.matrix_of(x).residue()));
    }
  }
}

TEST_CASE("depth-zero characters factor trivially") {
  auto ctx = FieldContext::make(3, 2, 4);
  const TorusCharacter mu(ctx, 2, 1, Phase(1, 3), 1, {0, 0});
  const auto wf = weak_factorize(mu);
  CHECK(wf.mu_minus == mu);
  CHECK(wf.chi == TorusCharacter::trivial(ctx, 1, 1));
  CHECK(wf.bottom_degree == 1);
}

TEST_CASE("chi extends the norm factor") {
  auto ctx = FieldContext::make(3, 2, 4);
  const auto chi0 = TorusCharacter::generic_of_depth(ctx, 1, 1, 1);
  const auto mu = chi0.compose_norm(2) * TorusCharacter(ctx, 2, 1, Phase(0), 1, {0, 0});
  const auto wf = weak_factorize(mu);
  CHECK(wf.bottom_degree == 1);
  chi0.quotient().for_each([&](std::span<const Int> e) { CHECK(wf.chi.eval_principal(e) == chi0.eval_principal(e)); });
  CHECK(wf.mu_minus.depth() == 0);
}

TEST_CASE("H = T") {
  auto ctx = FieldContext::make(3, 2, 4);
  const auto mu = TorusCharacter::generic_of_depth(ctx, 2, 1, 1) * TorusCharacter(ctx, 2, 1, Phase(1, 2), 3, {0, 0});
  const auto wf = weak_factorize(mu);
  CHECK(wf.bottom_degree == 2);
  CHECK(wf.rank() == 1);
  CHECK(wf.mu_minus.depth() == 0);
  // det on T is the identity, so mu_plus carries the whole wild part.
  CHECK(wf.chi.wild() == mu.wild());
}

TEST_CASE("factorization identity and depth-zero regular part") {
  struct Case {
    int f, N, d, depth;
    Int k;
  };
  for (const auto& c : std::vector<Case>{{2, 4, 1, 1, 1}, {2, 4, 1, 2, 3}, {4, 3, 2, 1, 1}, {4, 3, 2, 2, 7}}) {
    auto ctx = FieldContext::make(3, c.f, c.N);
    const auto mu = mu_through_norm(ctx, c.d, c.depth, c.k);
    for (const auto& tb : kTieBreaks) {
      const auto wf = weak_factorize(mu, tb);
      CHECK(wf.bottom_degree == c.d);
      CHECK(wf.mu_minus.depth() == 0);
      CHECK(torus::is_regular_pair(wf.mu_minus, wf.bottom_degree).regular);
      for (const auto& t : torus_generators(mu)) {
        const Phase rhs = wf.mu_minus.eval(t) +
                          wf.chi.eval(FieldElement{t.val * (c.f / c.d), padic::norm_to_subfield(t.coeff, c.d)});
        CHECK(mu.eval(t) == normalize_phase(rhs));
      }
    }
  }
}

TEST_CASE("non-regular characters are rejected") {
  auto ctx = FieldContext::make(3, 2, 4);
  CHECK_THROWS_WITH_AS(weak_factorize(TorusCharacter(ctx, 2, 1, Phase(0), 4, {0, 0})), "not a regular pair", Error);
}

TEST_CASE("extended characters are independent of the factorization") {
  std::mt19937_64 rng(21);
  for (auto [f, N, d] : std::vector<std::tuple<int, int, int>>{{2, 4, 1}, {4, 3, 2}}) {
    auto ctx = FieldContext::make(3, f, N);
    const auto mu = mu_through_norm(ctx, d, 1, 1);
    std::vector<ExtendedCharacter> exts;
    for (const auto& tb : kTieBreaks) exts.emplace_back(weak_factorize(mu, tb));
    const auto& emb = exts.front().embedding();

    std::vector<CompactModCenterElement> points;
    for (const auto& t : torus_generators(mu)) points.push_back(emb.element_of(t));
    const auto ys = principal_congruence_generators(*ctx, d);
    for (const auto& y : ys) points.push_back(y);
    for (int i = 0; i < 20; ++i) {
      const FieldElement t{static_cast<int>(rng() % 3), random_unit(*ctx, rng)};
      points.push_back(emb.element_of(t) * ys[rng() % ys.size()]);
    }

    for (const auto& g : points) {
      const auto v0 = exts.front().sharp(g);
      REQUIRE(v0.has_value());
      for (const auto& e : exts) CHECK(e.sharp(g) == v0);
    }
    for (const auto& y : ys)
      for (const auto& e : exts) {
        CHECK(e.mu_plus(y) == exts.front().mu_plus(y));
        CHECK(e.hat(FieldElement{0, ctx->zeta()}, y) == exts.front().hat(FieldElement{0, ctx->zeta()}, y));
      }

    // mu_sharp restricts to mu on T.
    for (int i = 0; i < 20; ++i) {
      const FieldElement t{static_cast<int>(rng() % 3), random_unit(*ctx, rng)};
      CHECK(exts.front().sharp(emb.element_of(t)) == std::optional<Phase>(mu.eval(t)));
    }
  }
}

TEST_CASE("dot vanishes off T H_{x,0+}") {
  auto ctx = FieldContext::make(3, 2, 4);
  const ExtendedCharacter ext(weak_factorize(TorusCharacter(ctx, 2, 1, Phase(0), 1, {0, 0})));
  padic::Matrix u = padic::Matrix::identity(*ctx, 2);
  u(0, 1) = Elem::one(*ctx);
  CHECK_FALSE(ext.sharp({0, u}).has_value());
  CHECK(ext.dot({0, u}).is_zero());
  // Depth zero: trivial on H_{x,0+}.
  for (const auto& y : principal_congruence_generators(*ctx, 1)) CHECK(ext.sharp(y) == std::optional<Phase>(Phase(0)));
}

TEST_CASE("mu-hat on topologically unipotent elements") {
  auto ctx = FieldContext::make(3, 2, 4);
  const auto chi0 = TorusCharacter::generic_of_depth(ctx, 1, 1, 1);
  const auto mu = chi0.compose_norm(2) * TorusCharacter(ctx, 2, 1, Phase(0), 1, {0, 0});
  const ExtendedCharacter ext(weak_factorize(mu));
  const auto& chi = ext.factorization().chi;
  const FieldElement one{0, Elem::one(*ctx)};

  padic::Matrix u = padic::Matrix::identity(*ctx, 2);
  u(0, 1) = Elem::from_int(*ctx, 3);
  CHECK(ext.hat(one, {0, u}) == Phase(0));

  const Elem onep = Elem::from_int(*ctx, 4);
  const CompactModCenterElement scalar{0, padic::Matrix::scalar(onep, 2)};
  CHECK(ext.hat(one, scalar) == chi.eval(onep * onep));
  CHECK_FALSE(ext.hat(one, scalar).numerator() == 0);
  CHECK(ext.hat(FieldElement{0, ctx->zeta()}, {0, padic::Matrix::identity(*ctx, 2)}) == mu.eval(ctx->zeta()));
  CHECK_THROWS_AS(ext.hat(one, {0, padic::Matrix::scalar(Elem::from_int(*ctx, 2), 2)}), Error);
}
