#pragma once

#include <optional>
#include <string>

#include "cuspcal/cyclotomic.hpp"
#include "cuspcal/jordan.hpp"
#include "cuspcal/torus_char.hpp"

namespace cuspcal::weakfact {

using jordan::CompactModCenterElement;
using torus::TorusCharacter;

/// Extension choices for chi outside the principal units.
struct TieBreak {
  Int teich = 0;       // chi(zeta_D) = exp(2 pi i teich / (Q_D - 1))
  Phase pi = Phase(0);  // chi(p)
};

/// mu = mu_minus * (mu_plus restricted to T), with mu_plus = chi o det on
/// H = GL_{n/D}(E_D). On T the determinant is the norm to E_D.
struct WeakFactorization {
  TorusCharacter mu;
  TorusCharacter mu_minus;
  TorusCharacter chi;  // character of E_D^x
  int bottom_degree = 1;
  TieBreak tiebreak;

  int rank() const { return mu.context().degree() / bottom_degree; }
};

WeakFactorization weak_factorize(const TorusCharacter& mu, const torus::LeviTower& tower, TieBreak tb = {});
WeakFactorization weak_factorize(const TorusCharacter& mu, TieBreak tb = {});

/// E as a vector space over E_D with basis 1, zeta, ..., zeta^(r-1); realises
/// T = E^x inside GL_r(E_D).
class TorusEmbedding {
 public:
  TorusEmbedding(std::shared_ptr<const padic::FieldContext> ctx, int bottom_degree);

  int rank() const { return r_; }
  int bottom_degree() const { return D_; }
  const padic::FieldContext& context() const { return *ctx_; }

  /// E_D-coordinates of y in the basis zeta^i.
  std::vector<padic::Elem> coordinates(const padic::Elem& y) const;
  padic::Elem from_coordinates(const std::vector<padic::Elem>& c) const;
  /// Matrix of multiplication by t.
  padic::Matrix matrix_of(const padic::Elem& t) const;
  CompactModCenterElement element_of(const padic::FieldElement& t) const;
  /// Residue of the matrix of zeta; its centraliser is the residue torus.
  const gf::Matrix& residue_generator() const { return zeta_bar_; }
  bool in_residue_torus(const gf::Matrix& g) const { return g.commutes_with(zeta_bar_); }

 private:
  std::shared_ptr<const padic::FieldContext> ctx_;
  int D_, r_;
  std::vector<padic::Elem> powers_;  // zeta^i
  padic::Matrix vandermonde_inv_;
  gf::Matrix zeta_bar_;
};

/// Evaluators built from a weak factorization: mu_sharp on T H_{x,0+}, its
/// extension by zero, mu_hat on T times the topologically unipotent set.
class ExtendedCharacter {
 public:
  explicit ExtendedCharacter(WeakFactorization wf);

  const WeakFactorization& factorization() const { return wf_; }
  const TorusEmbedding& embedding() const { return emb_; }

  /// mu_plus(g) = chi(det g).
  Phase mu_plus(const CompactModCenterElement& g) const;
  /// Writes g = t y with t in T, y in H_{x,0+}; empty when g is outside T H_{x,0+}.
  std::optional<Phase> sharp(const CompactModCenterElement& g) const;
  /// sharp(g), or zero off T H_{x,0+}.
  CyclotomicValue dot(const CompactModCenterElement& g) const;
  /// mu(t) mu_plus(u) for u topologically unipotent.
  Phase hat(const padic::FieldElement& t, const CompactModCenterElement& u) const;

 private:
  WeakFactorization wf_;
  TorusEmbedding emb_;
};

/// Representatives of E^x modulo 1 + p^(m+1): p, zeta, and the quotient basis.
std::vector<padic::FieldElement> torus_generators(const TorusCharacter& mu);

}  // namespace cuspcal::weakfact
