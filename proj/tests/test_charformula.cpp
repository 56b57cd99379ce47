#include "cuspcal/charformula.hpp"
#include "cuspcal/error.hpp"
#include "doctest.h"

using namespace cuspcal;
using namespace cuspcal::charformula;
using padic::FieldContext;
using torus::TorusCharacter;

namespace {

struct Setup {
  std::shared_ptr<const FieldContext> ctx;
  TorusCharacter mu;
  TraceEvaluator ev;

  Setup(std::shared_ptr<const FieldContext> c, TorusCharacter m, weakfact::TieBreak tb = {})
      : ctx(std::move(c)), mu(std::move(m)),
        ev(std::make_shared<const ExtendedCharacter>(weakfact::weak_factorize(mu, tb))) {}

  CompactModCenterElement element(std::vector<Int> a, int scalar_exp = 0) const {
    padic::Matrix m(*ctx, 2);
    for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = padic::Elem::from_int(*ctx, a[i]);
    return {scalar_exp, m};
  }
};

// p = 3, E = Q_9: mu is depth zero with residue character of order 8.
Setup depth_zero() {
  auto ctx = FieldContext::make(3, 2, 4);
  return Setup(ctx, TorusCharacter(ctx, 2, 1, Phase(1, 3), 1, {0, 0}));
}

CyclotomicValue root(Phase p) { return CyclotomicValue::root(normalize_phase(p)); }

}  // namespace

TEST_CASE("centraliser of a semisimple residue element") {
  auto s = depth_zero();
  const auto& G = s.ev.residue_group();
  REQUIRE(G.size() == 48);
  const gf::Field& K = G.front().field();
  const int Q = 3;

  const auto full = centralizer_levi(gf::Matrix::scalar(K, 2, 1), 1);
  CHECK(full.type == CentralizerType::Full);
  CHECK(full.order == (Q * Q - 1) * (Q * Q - Q));
  const auto split = centralizer_levi(gf::Matrix(K, 2, {1, 0, 0, K.neg(1)}), 1);
  CHECK(split.type == CentralizerType::SplitTorus);
  CHECK(split.order == (Q - 1) * (Q - 1));
  const auto ell = centralizer_levi(s.ev.extended().embedding().residue_generator(), 1);
  CHECK(ell.type == CentralizerType::EllipticTorus);
  CHECK(ell.order == Q * Q - 1);

  for (const auto& g : G) {
    if (!lietype::finite_jordan(g).second.is_identity()) continue;
    CHECK(centralizer_levi(g, 1).order == centralizer_order_enumerated(g, 1));
  }
}

TEST_CASE("depth-zero values") {
  auto s = depth_zero();
  const int Q = 3;
  // Degree of the cuspidal representation.
  CHECK(s.ev.trace(s.element({1, 0, 0, 1})) == CyclotomicValue(Q - 1));
  // Central times regular unipotent.
  CHECK(s.ev.trace(s.element({1, 1, 0, 1})) == CyclotomicValue(-1));
  CHECK(s.ev.trace(s.element({1, 1, 0, 1}, 1)) == -root(s.mu.pi_value()));
  CHECK(s.ev.trace(s.element({-1, -1, 0, -1})) == -root(s.mu.eval_teich(4)));
  // Split semisimple classes see nothing.
  CHECK(s.ev.trace(s.element({1, 0, 0, 2})).is_zero());
  CHECK(s.ev.trace(s.element({1, 3, 0, 2})).is_zero());

  // Teichmueller elliptic element: -(mu(t) + mu(t^Q)).
  const auto& emb = s.ev.extended().embedding();
  for (Int j : {1, 2, 3, 5}) {
    const auto t = emb.element_of({0, s.ctx->zeta().pow(j)});
    const CyclotomicValue expected = -(root(Phase(j, 8)) + root(Phase(j * Q, 8)));
    CHECK(s.ev.trace(t) == expected);
    CHECK(depth_zero_oracle(s.mu, 1, t) == expected);
  }
}

TEST_CASE("trace is independent of lifts and perturbations") {
  auto s = depth_zero();
  const auto k = s.element({1, 1, 0, 1});
  padic::Matrix x(*s.ctx, 2);
  x(0, 1) = padic::Elem::from_int(*s.ctx, 1);
  x(1, 0) = padic::Elem::from_int(*s.ctx, 2);
  const padic::Matrix perturb = padic::Matrix::identity(*s.ctx, 2) + x.scaled(padic::Elem::from_int(*s.ctx, 3));
  const auto a = s.ev.evaluate(k), b = s.ev.evaluate(k, &perturb);
  CHECK(a.total == b.total);
  REQUIRE(a.contributions.size() == b.contributions.size());
  for (size_t i = 0; i < a.contributions.size(); ++i) CHECK(a.contributions[i] == b.contributions[i]);
  CHECK(a.ms.has_value());
  CHECK(a.ms->type == CentralizerType::Full);
}

TEST_CASE("k outside T H_{x,0} is rejected") {
  auto s = depth_zero();
  // Residue not invertible.
  CHECK_THROWS_AS(s.ev.trace(s.element({1, 0, 0, 3})), Error);
}

TEST_CASE("positive depth") {
  auto ctx = FieldContext::make(3, 2, 4);
  const auto mu = TorusCharacter::generic_of_depth(ctx, 1, 1, 1).compose_norm(2) *
                  TorusCharacter(ctx, 2, 1, Phase(1, 2), 1, {0, 0});
  REQUIRE(mu.depth() == 1);
  for (const auto& tb : default_tiebreaks()) {
    Setup s(ctx, mu, tb);
    REQUIRE(s.ev.extended().factorization().bottom_degree == 1);
    CHECK(s.ev.trace(s.element({1, 0, 0, 1})) == CyclotomicValue(2));
  }
}

TEST_CASE("H = T gives mu itself") {
  auto ctx = FieldContext::make(3, 2, 4);
  const auto mu = TorusCharacter::generic_of_depth(ctx, 2, 1, 1) * TorusCharacter(ctx, 2, 1, Phase(0), 1, {0, 0});
  Setup s(ctx, mu);
  REQUIRE(s.ev.extended().factorization().bottom_degree == 2);
  for (const auto& t : weakfact::torus_generators(mu)) {
    const auto k = s.ev.extended().embedding().element_of(t);
    CHECK(s.ev.trace(k) == root(mu.eval(t)));
  }
}

TEST_CASE("cross validation on a thinned sample") {
  auto ctx = FieldContext::make(3, 2, 4);
  const TorusCharacter mu(ctx, 2, 1, Phase(2, 3), 3, {0, 0});
  const auto rep = cross_validate(mu, {1, 6, 8, 5}, default_tiebreaks());
  CHECK(rep.samples > 0);
  CHECK(rep.checks > rep.samples);
  CHECK(rep.ok());
  for (const auto& w : rep.witnesses) MESSAGE(w);
}
