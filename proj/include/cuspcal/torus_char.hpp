#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cuspcal/lattice.hpp"
#include "cuspcal/padic.hpp"

namespace cuspcal::torus {

using padic::Elem;
using padic::FieldContext;
using padic::FieldElement;
using padic::UnitFiltrationQuotient;

/// A finite-order character of E_d^x, where E_d is the degree-d subfield of
/// the field described by the context. Stored through its values on p, on the
/// Teichmüller generator zeta_d, and on the basis of the principal-unit
/// quotient (1 + p O) / (1 + p^(m+1) O) at conductor level m.
class TorusCharacter {
 public:
  TorusCharacter(std::shared_ptr<const FieldContext> ctx, int subfield_degree, int conductor, Phase pi_value,
                 Int teich_exponent, std::vector<Int> wild);

  static TorusCharacter trivial(std::shared_ptr<const FieldContext> ctx, int subfield_degree, int conductor);

  /// Character of depth r with a generic top layer: on 1 + p^r y it is
  /// y -> Tr(c * ybar) / p, c the primitive element of the residue field of E_d.
  static TorusCharacter generic_of_depth(std::shared_ptr<const FieldContext> ctx, int subfield_degree,
                                         int depth, int conductor);

  const FieldContext& context() const { return *ctx_; }
  std::shared_ptr<const FieldContext> context_ptr() const { return ctx_; }
  int subfield_degree() const { return d_; }
  int conductor() const { return m_; }
  Phase pi_value() const { return pi_; }
  Int teich_exponent() const { return k_; }
  /// Images of the quotient basis, as numerators over p^m.
  const std::vector<Int>& wild() const { return wild_; }
  Int wild_modulus() const { return quotient_->exponent_modulus(); }
  Int residue_order() const { return Qd_ - 1; }
  const UnitFiltrationQuotient& quotient() const { return *quotient_; }

  Phase eval(const FieldElement& x) const;
  Phase eval(const Elem& unit) const { return eval(FieldElement{0, unit}); }
  Phase eval_principal(std::span<const Int> e) const;
  Phase eval_teich(Int j) const { return normalize_phase(Phase(k_ * mod(j, Qd_ - 1), Qd_ - 1)); }

  /// Least i >= 0 with the character trivial on 1 + p^(i+1) O.
  int depth() const;

  TorusCharacter operator*(const TorusCharacter& o) const;
  TorusCharacter inverse() const;
  bool operator==(const TorusCharacter& o) const;

  /// chi o N_{E_target / E_d} as a character of E_target (d | target).
  TorusCharacter compose_norm(int target_degree) const;
  /// Same character encoded at a larger conductor level.
  TorusCharacter at_conductor(int m) const;

 private:
  std::shared_ptr<const FieldContext> ctx_;
  int d_, m_;
  Int Qd_;
  Phase pi_;
  Int k_;
  std::vector<Int> wild_;
  std::shared_ptr<const UnitFiltrationQuotient> quotient_;
};

/// One Galois orbit of roots of GL_n relative to T = E^x, indexed by the
/// difference delta in Z/n.
struct OrbitInfo {
  int delta = 0;
  int divisor = 0;  // gcd(delta, n)
  lattice::IntMatrix coroot_rows;
  lattice::IntMatrix annihilator;  // integer kernel of the coroot rows
  bool lattice_certificate = false;  // annihilator == span of coset sums
  std::optional<int> depth;  // empty when the restriction is trivial
};

struct OrbitAnalysis {
  int n = 0;
  std::vector<OrbitInfo> orbits;  // delta = 1 .. n-1
  const OrbitInfo& orbit(int delta) const { return orbits.at(delta - 1); }
};

/// Depth of mu on ker(N_{E/E_d}) meet (1 + p O_E), by linear algebra on the
/// norm matrix; empty when trivial.
std::optional<int> kernel_restriction_depth(const TorusCharacter& mu, int d);

/// The same quantity by enumerating 1 + p y modulo p^(m+1) with field norms.
std::optional<int> kernel_restriction_depth_enumerated(const TorusCharacter& mu, int d);

/// On every element of the level-m quotient, the lattice characters of the
/// annihilator vanish exactly when N_{E/E_d} = 1.
bool certify_orbit_elementwise(const UnitFiltrationQuotient& q, const OrbitInfo& orbit);

OrbitAnalysis orbit_restriction_depths(const TorusCharacter& mu);

struct TowerLevel {
  int subfield_degree = 1;  // G^i = GL_{n/d}(E_d)
  int rank = 1;             // n / d
  std::string name;
};

struct LeviTower {
  std::vector<int> phi_mu;  // orbit indices with trivial restriction
  std::vector<TowerLevel> tower;  // G^0 = H first, G^d = G last
  std::vector<int> depths;
  bool depth_appended = false;
  int bottom_degree() const { return tower.front().subfield_degree; }
  int length() const { return static_cast<int>(tower.size()) - 1; }
};

std::string level_name(int n, int subfield_degree);

LeviTower levi_tower(const TorusCharacter& mu, const OrbitAnalysis& analysis);
LeviTower levi_tower(const TorusCharacter& mu);

struct RegularityReport {
  bool regular = false;
  Int stabilizer_size = 1;
  std::string diagnostic;
};

/// General position of the residue character under x -> x^(Q_D) for the
/// bottom group H = GL_{n/D}(E_D).
RegularityReport is_regular_pair(const TorusCharacter& mu, int bottom_degree);

}  // namespace cuspcal::torus
