#pragma once

#include <string>
#include <vector>

#include "cuspcal/matrix.hpp"

namespace cuspcal::jordan {

/// p^scalar_exp * unit, with unit in GL_n(O/p^N). Elements of the vertex
/// stabiliser F^x GL_n(O) all have this shape.
struct CompactModCenterElement {
  int scalar_exp = 0;
  padic::Matrix unit;

  int size() const { return unit.size(); }
  CompactModCenterElement operator*(const CompactModCenterElement& o) const {
    return {scalar_exp + o.scalar_exp, unit * o.unit};
  }
  bool operator==(const CompactModCenterElement& o) const {
    return scalar_exp == o.scalar_exp && unit == o.unit;
  }
  /// Determinant valuation n * scalar_exp.
  int detval() const { return size() * scalar_exp; }
};

/// An exact matrix entry p^val * c, where c is given to the context precision.
struct ExactEntry {
  int val = 0;
  std::vector<Int> coords;
};

/// Build an element from exact entries. Throws "not in G_x" unless
/// n | v(det g) and p^(-v(det g)/n) g is integral.
CompactModCenterElement to_vertex_stabilizer(const padic::FieldContext& ctx,
                                             const std::vector<std::vector<ExactEntry>>& entries);

struct JordanDecomposition {
  CompactModCenterElement s, u;
  /// Exact multiplicative order of the unit part of s.
  Int order_prime_to_p = 1;
};

JordanDecomposition tjd_compact(const padic::Matrix& g);
JordanDecomposition tjd_mod_center(const CompactModCenterElement& g);

/// Independent path: s is the limit of g^(p^(n!)^k), computed as a fixed point.
JordanDecomposition tjd_by_limit(const CompactModCenterElement& g);

/// Checks the defining properties of a topological Jordan decomposition of g
/// modulo the centre: s u = u s = g, u topologically unipotent, and s of
/// prime-to-p order modulo scalars.
bool is_valid_decomposition(const CompactModCenterElement& g, const CompactModCenterElement& s,
                            const CompactModCenterElement& u);

/// The action a.(s, u) = (a s, a^-1 u) of a scalar p^k * unit.
std::pair<CompactModCenterElement, CompactModCenterElement> scalar_action(
    const padic::Elem& a_unit, int a_exp, const CompactModCenterElement& s, const CompactModCenterElement& u);

enum class ElementClass { TopologicallyUnipotent, AbsolutelySemisimpleModCenter, Mixed, OutsideGx };

struct Classification {
  ElementClass cls;
  bool topologically_unipotent = false;
  bool absolutely_semisimple_mod_center = false;
};

Classification classify_element(const CompactModCenterElement& g);
Classification classify_entries(const padic::FieldContext& ctx, const std::vector<std::vector<ExactEntry>>& entries);
std::string to_string(ElementClass c);

}  // namespace cuspcal::jordan
