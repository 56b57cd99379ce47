#include "cuspcal/jordan.hpp"

#include <algorithm>

#include "cuspcal/error.hpp"

namespace cuspcal::jordan {

using padic::Elem;
using padic::FieldContext;
using padic::Matrix;

namespace {

// Largest precision whose modulus still fits the arithmetic bound.
int max_precision(int p) {
  int N = 1;
  Int pk = p;
  while (pk * p < (Int(1) << 28)) {
    pk *= p;
    ++N;
  }
  return N;
}

// Moves the p-part of the integer coordinates into val; zero stays zero.
ExactEntry normalized_entry(const FieldContext& ctx, ExactEntry e) {
  require(static_cast<int>(e.coords.size()) == ctx.degree(), "entry has the wrong number of coordinates");
  int v = INT32_MAX;
  for (Int c : e.coords)
    if (c != 0) v = std::min(v, vp(c, ctx.p()));
  if (v == INT32_MAX || v == 0) return e;
  const Int pv = ipow(ctx.p(), v);
  for (Int& c : e.coords) c /= pv;
  e.val += v;
  return e;
}

Elem exact_to_elem(const FieldContext& ctx, const ExactEntry& e, int shift) {
  // p^(val - shift) * coords, val - shift >= 0.
  require(static_cast<int>(e.coords.size()) == ctx.degree(), "entry has the wrong number of coordinates");
  Elem c = Elem::from_coords(ctx, e.coords);
  const int k = e.val - shift;
  if (k >= ctx.precision()) return Elem::zero(ctx);
  return c.scaled(ipow(ctx.p(), k));
}

Int p_part_exponent(Int m, Int p, int& b) {
  b = 0;
  while (m % p == 0) {
    m /= p;
    ++b;
  }
  return m;
}

bool unit_part_is_unipotent(const CompactModCenterElement& u) {
  return u.scalar_exp == 0 && u.unit.residue().is_unipotent();
}

}  // namespace

CompactModCenterElement to_vertex_stabilizer(const FieldContext& ctx,
                                             const std::vector<std::vector<ExactEntry>>& raw) {
  const int n = static_cast<int>(raw.size());
  require(n >= 1, "empty matrix");
  for (const auto& row : raw) require(static_cast<int>(row.size()) == n, "matrix must be square");
  std::vector<std::vector<ExactEntry>> entries(n);
  for (int i = 0; i < n; ++i)
    for (const auto& e : raw[i]) entries[i].push_back(normalized_entry(ctx, e));

  // Shift so that all entries are integral with minimal valuation zero.
  int minval = INT32_MAX;
  bool all_zero = true;
  for (const auto& row : entries)
    for (const auto& e : row) {
      bool nz = std::any_of(e.coords.begin(), e.coords.end(), [&](Int c) { return mod(c, ctx.modulus()) != 0; });
      if (!nz) continue;
      all_zero = false;
      int v = Elem::from_coords(ctx, e.coords).valuation();
      minval = std::min(minval, e.val + v);
    }
  require(!all_zero, "matrix is zero");

  // Determinant valuation at the largest available precision.
  auto wide = ctx.with_precision(max_precision(ctx.p()));
  Matrix w(*wide, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = exact_to_elem(*wide, entries[i][j], minval);
  Elem d = w.det();
  require(!d.is_zero(), "determinant vanishes at working precision");
  const int detval = d.valuation() + n * minval;
  if (detval % n != 0) fail("not in G_x");
  const int k = detval / n;
  if (minval < k) fail("not in G_x");

  CompactModCenterElement g{k, Matrix(ctx, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.unit(i, j) = exact_to_elem(ctx, entries[i][j], k);
  require(g.unit.residue_invertible(), "normalised matrix is not invertible");
  return g;
}

JordanDecomposition tjd_compact(const Matrix& g) {
  require(g.residue_invertible(), "tjd_compact: g must lie in GL_n(O)");
  const FieldContext& ctx = g.context();
  const int n = g.size();
  const Int p = ctx.p();

  // Order of g in GL_n(O/p^N): residue order times a p-power.
  Int m0 = g.residue().order();
  Matrix h = g.pow(m0);
  Int pc = 1;
  while (!h.is_identity()) {
    h = h.pow(p);
    pc *= p;
  }
  int a = 0;
  const Int m = p_part_exponent(m0, p, a);
  Int pb = pc * ipow(p, a);

  JordanDecomposition out;
  out.order_prime_to_p = m;
  const Int alpha = m == 1 ? 0 : invmod(mod(pb, m), m);
  const Int beta = pb == 1 ? 0 : invmod(mod(m, pb), pb);
  out.s = {0, g.pow(pb * alpha)};
  out.u = {0, g.pow(m * beta)};
  if (m == 1) out.s.unit = Matrix::identity(ctx, n);
  if (pb == 1) out.u.unit = Matrix::identity(ctx, n);
  return out;
}

JordanDecomposition tjd_mod_center(const CompactModCenterElement& g) {
  JordanDecomposition d = tjd_compact(g.unit);
  d.s.scalar_exp = g.scalar_exp;
  return d;
}

JordanDecomposition tjd_by_limit(const CompactModCenterElement& g) {
  const Matrix& x = g.unit;
  const FieldContext& ctx = x.context();
  const int n = x.size();
  // p^(n!) fixes every root of unity of order dividing p^i - 1, i <= n,
  // and contracts principal units; with f > 1 use (p^f)^(n!).
  Int e = 1;
  for (int i = 2; i <= n; ++i) e *= i;
  e *= ctx.degree();
  Matrix s = x;
  for (;;) {
    Matrix next = s;
    for (Int i = 0; i < e; ++i) next = next.pow(ctx.p());
    if (next == s) break;
    s = next;
  }
  JordanDecomposition out;
  out.s = {g.scalar_exp, s};
  out.u = {0, s.inverse() * x};
  // Order of s at precision N is prime to p by construction.
  Int ord = 1;
  for (Matrix y = s; !y.is_identity(); y = y * s) ++ord;
  out.order_prime_to_p = ord;
  return out;
}

bool is_valid_decomposition(const CompactModCenterElement& g, const CompactModCenterElement& s,
                            const CompactModCenterElement& u) {
  if (!(s * u == g) || !(u * s == g)) return false;
  if (!unit_part_is_unipotent(u)) return false;
  if (!s.unit.residue_invertible()) return false;
  // s modulo scalars must have prime-to-p order.
  const Int p = s.unit.context().p();
  Int ord = s.unit.residue().order();
  Matrix y = s.unit.pow(ord);
  while (!y.is_scalar()) {
    y = y.pow(p);
    ord *= p;
  }
  int b = 0;
  Int m = p_part_exponent(ord, p, b);
  return s.unit.pow(m).is_scalar();
}

std::pair<CompactModCenterElement, CompactModCenterElement> scalar_action(const Elem& a_unit, int a_exp,
                                                                          const CompactModCenterElement& s,
                                                                          const CompactModCenterElement& u) {
  CompactModCenterElement as{s.scalar_exp + a_exp, s.unit.scaled(a_unit)};
  CompactModCenterElement au{u.scalar_exp - a_exp, u.unit.scaled(a_unit.inverse())};
  return {as, au};
}

Classification classify_element(const CompactModCenterElement& g) {
  JordanDecomposition d = tjd_mod_center(g);
  Classification c;
  c.topologically_unipotent = d.s.scalar_exp == 0 && d.s.unit.is_identity();
  // u is trivial up to (A_G)_{0+} when it is a principal-unit scalar.
  c.absolutely_semisimple_mod_center = d.u.unit.is_scalar();
  if (c.absolutely_semisimple_mod_center)
    c.cls = ElementClass::AbsolutelySemisimpleModCenter;
  else if (c.topologically_unipotent)
    c.cls = ElementClass::TopologicallyUnipotent;
  else
    c.cls = ElementClass::Mixed;
  return c;
}

Classification classify_entries(const FieldContext& ctx, const std::vector<std::vector<ExactEntry>>& entries) {
  try {
    return classify_element(to_vertex_stabilizer(ctx, entries));
  } catch (const Error& e) {
    if (std::string(e.what()) != "not in G_x") throw;
    return {ElementClass::OutsideGx};
  }
}

std::string to_string(ElementClass c) {
  switch (c) {
    case ElementClass::TopologicallyUnipotent:
      return "topologically_unipotent";
    case ElementClass::AbsolutelySemisimpleModCenter:
      return "absolutely_semisimple_mod_center";
    case ElementClass::Mixed:
      return "mixed";
    case ElementClass::OutsideGx:
      return "outside_Gx";
  }
  return "unknown";
}

}  // namespace cuspcal::jordan
