#include "cuspcal/charformula.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "cuspcal/error.hpp"

namespace cuspcal::charformula {

using padic::Elem;
using padic::FieldElement;

namespace {

Int gl2_order(Int Q) { return (Q * Q - 1) * (Q * Q - Q); }

int residue_rank(const weakfact::WeakFactorization& wf) { return wf.rank(); }

void require_in_bottom_group(const ExtendedCharacter& ext, const CompactModCenterElement& k) {
  const int r = ext.embedding().rank(), D = ext.embedding().bottom_degree();
  if (k.size() != r) fail("element has the wrong size for H");
  const auto& sub = k.unit.context().subfield(D);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (!sub.contains(k.unit(i, j))) fail("k is outside T H_{x,0}");
  if (!k.unit.residue_invertible()) fail("k is outside T H_{x,0}");
}

std::string describe(const CompactModCenterElement& k) {
  std::ostringstream os;
  os << "p^" << k.scalar_exp << " [";
  for (int i = 0; i < k.size(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < k.size(); ++j) {
      os << (j ? " " : "") << "(";
      auto c = k.unit(i, j).coords();
      for (size_t t = 0; t < c.size(); ++t) os << (t ? "," : "") << c[t];
      os << ")";
    }
  }
  os << "]";
  return os.str();
}

}  // namespace

std::string to_string(CentralizerType t) {
  switch (t) {
    case CentralizerType::Full:
      return "full";
    case CentralizerType::SplitTorus:
      return "split_torus";
    case CentralizerType::EllipticTorus:
      return "elliptic_torus";
  }
  return "unknown";
}

CentralizerLevi centralizer_levi(const gf::Matrix& s_bar, int D) {
  if (s_bar.size() != 2) fail("unsupported M_s block shape");
  const gf::Field& K = s_bar.field();
  for (int x : s_bar.entries())
    if (!K.in_subfield(x, D)) fail("s is not defined over the residue field of H");
  if (!s_bar.invertible()) fail("s is not absolutely semisimple mod center");
  const Int Q = ipow(K.characteristic(), D);
  if (mod(s_bar.order(), K.characteristic()) == 0) fail("s is not absolutely semisimple mod center");

  CentralizerLevi out;
  out.s_bar = s_bar;
  if (s_bar.is_scalar()) {
    out.type = CentralizerType::Full;
    out.blocks = {{2, D}};
    out.order = gl2_order(Q);
    return out;
  }
  // Discriminant of the characteristic polynomial; zero would force a
  // non-semisimple element.
  const int tr = s_bar.trace(), det = s_bar.det();
  const int disc = K.sub(K.mul(tr, tr), K.mul(K.from_int(4), det));
  if (disc == 0) fail("s is not absolutely semisimple mod center");
  const bool square = K.pow(disc, (Q - 1) / 2) == 1;
  if (square) {
    out.type = CentralizerType::SplitTorus;
    out.blocks = {{1, D}, {1, D}};
    out.order = (Q - 1) * (Q - 1);
  } else {
    out.type = CentralizerType::EllipticTorus;
    out.blocks = {{1, 2 * D}};
    out.order = Q * Q - 1;
  }
  return out;
}

Int centralizer_order_enumerated(const gf::Matrix& s_bar, int D) {
  Int count = 0;
  for (const auto& h : gf::general_linear_group(s_bar.field(), s_bar.size(), D))
    if (h.commutes_with(s_bar)) ++count;
  return count;
}

TraceEvaluator::TraceEvaluator(std::shared_ptr<const ExtendedCharacter> ext) : ext_(std::move(ext)) {
  const auto& emb = ext_->embedding();
  const padic::FieldContext& ctx = emb.context();
  if (emb.rank() > 2) fail("unsupported M_s block shape");
  if (emb.rank() == 1) return;
  group_ = gf::general_linear_group(ctx.residue_field(), emb.rank(), emb.bottom_degree());
  lifts_.reserve(group_.size());
  lift_invs_.reserve(group_.size());
  for (const auto& h : group_) {
    lifts_.push_back(padic::teich_lift(ctx, h));
    lift_invs_.push_back(lifts_.back().inverse());
  }
}

TraceEvaluation TraceEvaluator::evaluate(const CompactModCenterElement& k, const padic::Matrix* perturb) const {
  const auto& wf = ext_->factorization();
  require_in_bottom_group(*ext_, k);
  TraceEvaluation out;
  out.jd = jordan::tjd_mod_center(k);
  const int r = residue_rank(wf);
  if (r == 1) {
    // H = T: the representation is mu itself.
    out.total = CyclotomicValue::root(wf.mu.eval(FieldElement{k.scalar_exp, k.unit(0, 0)}));
    out.nonzero_terms = 1;
    return out;
  }

  const auto& s = out.jd.s;
  const gf::Matrix s_bar = s.unit.residue();
  const gf::Matrix u_bar = out.jd.u.unit.residue();
  out.ms = centralizer_levi(s_bar, ext_->embedding().bottom_degree());
  const Int Q = ipow(k.unit.context().p(), ext_->embedding().bottom_degree());

  // Green function of the elliptic torus h T h^-1 in M_s at u_bar.
  std::optional<Int> green;
  switch (out.ms->type) {
    case CentralizerType::Full:
      if (!u_bar.is_unipotent()) fail_assert("u has non-unipotent reduction");
      green = lietype::green_function(lietype::TorusKind::Elliptic, !u_bar.is_identity(), Q);
      break;
    case CentralizerType::EllipticTorus:
      if (!u_bar.is_identity()) fail_assert("unipotent part of a torus centraliser is not trivial");
      green = 1;
      break;
    case CentralizerType::SplitTorus:
      break;  // no h T h^-1 fits inside a split torus
  }

  const Phase hat = ext_->hat(FieldElement{0, Elem::one(k.unit.context())}, out.jd.u);
  const auto& emb = ext_->embedding();
  PhaseSum sum;
  out.contributions.reserve(group_.size());
  for (size_t i = 0; i < group_.size(); ++i) {
    const gf::Matrix conj_bar = group_[i].inverse() * s_bar * group_[i];
    if (!emb.in_residue_torus(conj_bar)) {
      out.contributions.emplace_back();
      continue;
    }
    padic::Matrix h = lifts_[i], h_inv = lift_invs_[i];
    if (perturb) {
      h = h * *perturb;
      h_inv = perturb->inverse() * lift_invs_[i];
    }
    const auto v = ext_->sharp(CompactModCenterElement{s.scalar_exp, h_inv * s.unit * h});
    out.contributions.push_back(v);
    if (!v) continue;
    if (!green) fail_assert("nonzero term with split centraliser");
    ++out.nonzero_terms;
    sum.add(normalize_phase(*v + hat), Rational(*green));
  }
  const int sign = (r - 1) % 2 ? -1 : 1;
  out.total = sum.value() * CyclotomicValue(Rational(Int(sign), out.ms->order));
  return out;
}

weakfact::WeakFactorization depth_zero_factorization(const torus::TorusCharacter& mu_minus, int D) {
  if (mu_minus.depth() != 0) fail("character is not of depth zero");
  weakfact::WeakFactorization wf{mu_minus, mu_minus,
                                 torus::TorusCharacter::trivial(mu_minus.context_ptr(), D, mu_minus.conductor()), D,
                                 {}};
  return wf;
}

CyclotomicValue depth_zero_oracle(const torus::TorusCharacter& mu_minus, int D, const CompactModCenterElement& k) {
  if (mu_minus.depth() != 0) fail("character is not of depth zero");
  const padic::FieldContext& ctx = mu_minus.context();
  const int r = ctx.degree() / D;
  if (r == 1) return CyclotomicValue::root(mu_minus.eval(FieldElement{k.scalar_exp, k.unit(0, 0)}));
  if (r != 2) fail("unsupported M_s block shape");
  if (mu_minus.subfield_degree() != ctx.degree()) fail("character must live on E");
  // Classical cuspidal character of GL_2(F_{Q_D}) attached to the residue
  // character theta(zeta bar) = mu(zeta).
  static thread_local std::map<const gf::Field*, std::shared_ptr<const lietype::FiniteLieContext>> cache;
  auto& lie = cache[&ctx.residue_field()];
  if (!lie) lie = std::make_shared<const lietype::FiniteLieContext>(ctx.residue_field_ptr());
  const auto cusp = lietype::elliptic_character(*lie, mu_minus.teich_exponent());
  const Phase central = normalize_phase(mu_minus.pi_value() * k.scalar_exp);
  return CyclotomicValue::root(central) * cusp.at(k.unit.residue());
}

std::vector<CompactModCenterElement> construct_sample(const TraceEvaluator& ev, const SampleSpec& spec) {
  const auto& ext = ev.extended();
  const auto& emb = ext.embedding();
  const padic::FieldContext& ctx = emb.context();
  const int r = emb.rank();
  const auto& sub = ctx.subfield(emb.bottom_degree());

  std::vector<FieldElement> gens{{0, Elem::one(ctx)}};
  for (const auto& g : weakfact::torus_generators(ext.factorization().mu)) gens.push_back(g);

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<Int> coord(0, ctx.modulus() - 1);
  auto random_principal = [&] {
    padic::Matrix x(ctx, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        std::vector<Int> c(sub.degree());
        for (auto& v : c) v = coord(rng);
        x(i, j) = sub.from_coordinates(c).scaled(ctx.p());
      }
    return padic::Matrix::identity(ctx, r) + x;
  };

  std::vector<CompactModCenterElement> out;
  const size_t classes = r == 1 ? 1 : ev.residue_group().size();
  for (const auto& t : gens) {
    const CompactModCenterElement tm = emb.element_of(t);
    for (size_t i = 0; i < classes; i += std::max<size_t>(spec.class_stride, 1)) {
      const padic::Matrix h = r == 1 ? padic::Matrix::identity(ctx, 1) : ev.lift(i);
      for (int j = 0; j < spec.perturbations; ++j)
        out.push_back(tm * CompactModCenterElement{0, h * random_principal()});
    }
  }
  return out;
}

std::vector<weakfact::TieBreak> default_tiebreaks() {
  return {{0, Phase(0)}, {1, Phase(0)}, {0, Phase(1, 2)}, {1, Phase(1, 3)}};
}

CrossValidation cross_validate(const torus::TorusCharacter& mu, const SampleSpec& spec,
                               const std::vector<weakfact::TieBreak>& tiebreaks, bool conjugation) {
  require(!tiebreaks.empty(), "at least one factorization is needed");
  const auto tower = torus::levi_tower(mu);
  const int D = tower.bottom_degree();
  const padic::FieldContext& ctx = mu.context();

  struct Branch {
    std::shared_ptr<const ExtendedCharacter> ext;
    TraceEvaluator full, minus;
  };
  std::vector<Branch> branches;
  for (const auto& tb : tiebreaks) {
    auto wf = weakfact::weak_factorize(mu, tower, tb);
    auto ext = std::make_shared<const ExtendedCharacter>(wf);
    auto ext_minus = std::make_shared<const ExtendedCharacter>(depth_zero_factorization(wf.mu_minus, D));
    branches.push_back({ext, TraceEvaluator(ext), TraceEvaluator(ext_minus)});
  }
  const TraceEvaluator& ev0 = branches.front().full;

  CrossValidation report;
  auto check = [&](bool ok, const std::string& what, const CompactModCenterElement& k) {
    ++report.checks;
    if (ok) return;
    ++report.failures;
    if (report.witnesses.size() < 8) report.witnesses.push_back(what + " at k = " + describe(k));
  };

  const auto sample = construct_sample(ev0, spec);
  report.samples = sample.size();

  // Central elements: zeta_D and p.
  const Elem zD = ctx.subfield(D).zeta();
  const Phase mu_zD = mu.eval(zD);
  const Phase mu_p = mu.eval(FieldElement{1, Elem::one(ctx)});

  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<Int> coord(0, ctx.modulus() - 1);
  const int r = ev0.extended().embedding().rank();

  for (size_t idx = 0; idx < sample.size(); ++idx) {
    const auto& k = sample[idx];
    const TraceEvaluation base = ev0.evaluate(k);
    for (const auto& b : branches) {
      const CyclotomicValue full = b.full.trace(k);
      const CyclotomicValue minus = b.minus.trace(k);
      check(full == base.total, "factorization dependence", k);
      check(full == CyclotomicValue::root(b.ext->mu_plus(k)) * minus, "tensor identity", k);
      check(minus == depth_zero_oracle(b.ext->factorization().mu_minus, D, k), "depth-zero oracle", k);
    }
    check(ev0.trace(CompactModCenterElement{k.scalar_exp, k.unit.scaled(zD)}) ==
              CyclotomicValue::root(mu_zD) * base.total,
          "central twist by zeta", k);
    check(ev0.trace(CompactModCenterElement{k.scalar_exp + 1, k.unit}) == CyclotomicValue::root(mu_p) * base.total,
          "central twist by p", k);
    if (r == 1) continue;
    if (conjugation) {
      for (size_t i = 0; i < ev0.residue_group().size(); i += std::max<size_t>(spec.conjugation_stride, 1)) {
        const CompactModCenterElement conj{k.scalar_exp, ev0.lift(i) * k.unit * ev0.lift(i).inverse()};
        check(ev0.trace(conj) == base.total, "conjugation invariance", k);
      }
    }
    // Lift independence: h (1 + p X) in place of h, termwise.
    padic::Matrix x = padic::Matrix::identity(ctx, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        std::vector<Int> c(D);
        for (auto& v : c) v = coord(rng);
        x(i, j) += ctx.subfield(D).from_coordinates(c).scaled(ctx.p());
      }
    check(ev0.evaluate(k, &x).contributions == base.contributions, "lift dependence", k);
  }
  return report;
}

}  // namespace cuspcal::charformula
