#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cuspcal/jordan.hpp"
#include "cuspcal/lietype.hpp"
#include "cuspcal/weakfact.hpp"

namespace cuspcal::charformula {

using jordan::CompactModCenterElement;
using weakfact::ExtendedCharacter;

enum class CentralizerType { Full, SplitTorus, EllipticTorus };

struct Block {
  int rank = 1;             // GL_rank
  int residue_degree = 1;   // over F_{p^residue_degree}
};

/// Centraliser of a semisimple residue element in GL_2(F_{Q_D}).
struct CentralizerLevi {
  gf::Matrix s_bar;
  CentralizerType type = CentralizerType::Full;
  std::vector<Block> blocks;
  Int order = 0;
};

/// s_bar must be semisimple; entries lie in the degree-D subfield.
CentralizerLevi centralizer_levi(const gf::Matrix& s_bar, int D);
/// Order of the centraliser by enumeration of GL_2(F_{Q_D}).
Int centralizer_order_enumerated(const gf::Matrix& s_bar, int D);

std::string to_string(CentralizerType t);

struct TraceEvaluation {
  jordan::JordanDecomposition jd;
  std::optional<CentralizerLevi> ms;  // absent when H = T
  std::vector<std::optional<Phase>> contributions;  // h-dot-mu(s) per residue class h
  CyclotomicValue total;
  int nonzero_terms = 0;
};

/// trace rho_T^mu(k) for k in T H_{x,0}, H = GL_r(E_D) with r in {1, 2}.
class TraceEvaluator {
 public:
  explicit TraceEvaluator(std::shared_ptr<const ExtendedCharacter> ext);

  const ExtendedCharacter& extended() const { return *ext_; }
  /// The residue group GL_r(F_{Q_D}) in a fixed order.
  const std::vector<gf::Matrix>& residue_group() const { return group_; }
  const padic::Matrix& lift(size_t i) const { return lifts_[i]; }

  /// With perturb set, every lift h is replaced by h (1 + p X).
  TraceEvaluation evaluate(const CompactModCenterElement& k, const padic::Matrix* perturb = nullptr) const;
  CyclotomicValue trace(const CompactModCenterElement& k) const { return evaluate(k).total; }

 private:
  std::shared_ptr<const ExtendedCharacter> ext_;
  std::vector<gf::Matrix> group_;
  std::vector<padic::Matrix> lifts_, lift_invs_;
};

/// Weak factorization of a depth-zero character at a prescribed bottom level.
weakfact::WeakFactorization depth_zero_factorization(const torus::TorusCharacter& mu_minus, int D);

/// Classical value: mu(p)^v times the cuspidal character -R_T^{mu bar} at the
/// residue of the unit part (H of rank 2) or mu(k) (H = T).
CyclotomicValue depth_zero_oracle(const torus::TorusCharacter& mu_minus, int D, const CompactModCenterElement& k);

struct SampleSpec {
  int perturbations = 3;  // random 1 + pX factors per (t, h)
  size_t class_stride = 1;  // use every class_stride-th residue class
  size_t conjugation_stride = 1;  // conjugators for the invariance check
  std::uint64_t seed = 1;
};

/// Elements t h (1 + p X) of T H_{x,0}: t over the torus generators, h over
/// lifts of all residue classes.
std::vector<CompactModCenterElement> construct_sample(const TraceEvaluator& ev, const SampleSpec& spec);

struct CrossValidation {
  size_t samples = 0;
  size_t checks = 0;
  size_t failures = 0;
  std::vector<std::string> witnesses;  // first few failures
  bool ok() const { return failures == 0; }
};

/// (a) trace(mu) = mu_plus * trace(mu_minus) for every factorization,
/// (b) depth-zero traces equal the classical oracle, (c) central twists and
/// conjugation invariance, (d) independence of the factorization and of lifts.
CrossValidation cross_validate(const torus::TorusCharacter& mu, const SampleSpec& spec,
                               const std::vector<weakfact::TieBreak>& tiebreaks, bool conjugation = true);

std::vector<weakfact::TieBreak> default_tiebreaks();

}  // namespace cuspcal::charformula
