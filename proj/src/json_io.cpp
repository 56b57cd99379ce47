#include "cuspcal/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cuspcal/error.hpp"

namespace cuspcal::json_io {

namespace {

[[noreturn]] void schema_fail(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object()) schema_fail(std::string("expected an object with member \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) schema_fail(std::string("missing member \"") + key + "\"");
  return *it;
}

Int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) schema_fail(std::string(what) + " must be an integer");
  return j.get<Int>();
}

Int parse_int(std::string_view s) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) schema_fail("malformed integer \"" + std::string(s) + "\"");
  return v;
}

std::vector<Int> coords_from_json(const padic::FieldContext& ctx, const json& j) {
  if (!j.is_array()) schema_fail("coords must be an array");
  if (static_cast<int>(j.size()) > ctx.degree()) schema_fail("too many coordinates for the field degree");
  std::vector<Int> c(ctx.degree(), 0);
  for (size_t i = 0; i < j.size(); ++i) c[i] = as_int(j[i], "coordinate");
  return c;
}

jordan::ExactEntry entry_from_json(const padic::FieldContext& ctx, const json& j) {
  jordan::ExactEntry e;
  if (j.is_number_integer()) {
    e.coords.assign(ctx.degree(), 0);
    e.coords[0] = j.get<Int>();
  } else if (j.is_array()) {
    e.coords = coords_from_json(ctx, j);
  } else if (j.is_object()) {
    e.val = static_cast<int>(as_int(member(j, "val"), "val"));
    e.coords = coords_from_json(ctx, member(j, "coords"));
  } else {
    schema_fail("matrix entry must be an integer, a coordinate list or {\"val\",\"coords\"}");
  }
  return e;
}

bool same_field(const padic::FieldContext& a, const padic::FieldContext& b) {
  return a.p() == b.p() && a.degree() == b.degree() && a.poly() == b.poly();
}

json rational_vector(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(format_rational(r));
  return out;
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    schema_fail(std::string("malformed JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema_fail("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<Int>());
  if (!j.is_string()) schema_fail("rational values are integers or \"a/b\" strings");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  const Int den = parse_int(std::string_view(s).substr(slash + 1));
  if (den == 0) schema_fail("zero denominator in \"" + s + "\"");
  return Rational(parse_int(std::string_view(s).substr(0, slash)), den);
}

std::string format_rational(const Rational& r) { return to_string(r); }

std::shared_ptr<const padic::FieldContext> field_from_json(const json& j) {
  const int p = static_cast<int>(as_int(member(j, "p"), "p"));
  const int f = static_cast<int>(as_int(member(j, "f"), "f"));
  const int N = static_cast<int>(as_int(member(j, "precision"), "precision"));
  std::optional<std::vector<Int>> poly;
  if (j.contains("poly")) {
    const json& pj = j["poly"];
    if (!pj.is_array()) schema_fail("poly must be an array of coefficients");
    poly.emplace();
    for (const auto& c : pj) poly->push_back(as_int(c, "poly coefficient"));
  }
  try {
    return padic::FieldContext::make(p, f, N, poly);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Precondition) schema_fail(std::string("invalid field: ") + e.what());
    throw;
  }
}

json to_json(const padic::FieldContext& ctx) {
  return {{"p", ctx.p()}, {"f", ctx.degree()}, {"precision", ctx.precision()}, {"poly", ctx.poly()}};
}

padic::FieldElement field_element_from_json(const padic::FieldContext& ctx, const json& j) {
  const auto e = entry_from_json(ctx, j);
  return {e.val, padic::Elem::from_coords(ctx, e.coords)};
}

json to_json(const padic::Elem& x) { return x.coords(); }

json to_json(const padic::Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const jordan::CompactModCenterElement& g) {
  return {{"scalar_exp", g.scalar_exp}, {"unit", to_json(g.unit)}};
}

json to_json(const gf::Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

MatrixInput matrix_from_json(const json& j) {
  MatrixInput in;
  in.field = field_from_json(member(j, "field"));
  in.entries = entries_from_json(*in.field, j);
  return in;
}

std::vector<std::vector<jordan::ExactEntry>> entries_from_json(const padic::FieldContext& ctx, const json& j) {
  if (j.contains("field") && !same_field(*field_from_json(j["field"]), ctx))
    schema_fail("element field does not match the character field");
  const json& m = member(j, "matrix");
  if (!m.is_array() || m.empty()) schema_fail("matrix must be a non-empty array of rows");
  std::vector<std::vector<jordan::ExactEntry>> out;
  for (const auto& row : m) {
    if (!row.is_array() || row.size() != m.size()) schema_fail("matrix must be square");
    auto& r = out.emplace_back();
    for (const auto& e : row) r.push_back(entry_from_json(ctx, e));
  }
  return out;
}

torus::TorusCharacter character_from_json(const json& j) {
  return character_from_json(field_from_json(member(j, "field")), j);
}

torus::TorusCharacter character_from_json(std::shared_ptr<const padic::FieldContext> ctx, const json& j) {
  const int d = j.contains("subfield_degree") ? static_cast<int>(as_int(j["subfield_degree"], "subfield_degree"))
                                              : ctx->degree();
  if (d < 1 || ctx->degree() % d != 0) schema_fail("subfield_degree must divide the field degree");
  const int m = static_cast<int>(as_int(member(j, "conductor"), "conductor"));
  if (m < 0 || m >= ctx->precision()) schema_fail("conductor must lie in [0, precision)");
  const Phase pi = parse_rational(member(j, "pi_value"));
  const Int k = as_int(member(j, "teich_exponent"), "teich_exponent");
  const json& images = member(member(j, "wild_part"), "basis_images");
  if (!images.is_array()) schema_fail("basis_images must be an array");
  const Int pm = ipow(ctx->p(), m);
  std::vector<Int> wild(d, 0);
  if (images.size() != static_cast<size_t>(d) && !(images.empty()))
    schema_fail("basis_images needs one entry per basis element of the subfield");
  for (size_t i = 0; i < images.size(); ++i) {
    const Rational r = parse_rational(images[i]) * Rational(pm);
    if (r.denominator() != 1) schema_fail("basis image denominators must divide p^conductor");
    wild[i] = mod(r.numerator(), pm);
  }
  try {
    return torus::TorusCharacter(std::move(ctx), d, m, pi, k, wild);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Precondition) schema_fail(std::string("invalid character: ") + e.what());
    throw;
  }
}

json to_json(const torus::TorusCharacter& mu) {
  json images = json::array();
  for (Int a : mu.wild()) images.push_back(format_rational(Rational(a, mu.wild_modulus())));
  return {{"field", to_json(mu.context())},
          {"subfield_degree", mu.subfield_degree()},
          {"conductor", mu.conductor()},
          {"pi_value", format_rational(mu.pi_value())},
          {"teich_exponent", mu.teich_exponent()},
          {"wild_part", {{"basis_images", images}}},
          {"depth", mu.depth()}};
}

json to_json(const CyclotomicValue& v) {
  const CyclotomicValue n = v.normalized();
  return {{"order", n.order()}, {"coeffs", rational_vector(n.coeffs())}};
}

CyclotomicValue cyclotomic_from_json(const json& j) {
  const Int order = as_int(member(j, "order"), "order");
  const json& c = member(j, "coeffs");
  if (!c.is_array()) schema_fail("coeffs must be an array");
  std::vector<Rational> coeffs;
  for (const auto& x : c) coeffs.push_back(parse_rational(x));
  if (order < 1 || static_cast<Int>(coeffs.size()) != euler_phi(order))
    schema_fail("coeffs must have phi(order) entries");
  return CyclotomicValue::from_coeffs(order, coeffs);
}

json to_json(const torus::LeviTower& tower, const torus::RegularityReport& reg) {
  json levels = json::array();
  for (const auto& l : tower.tower)
    levels.push_back({{"m", l.rank}, {"subfield_degree", l.subfield_degree}, {"name", l.name}});
  return {{"phi_mu", tower.phi_mu},
          {"tower", levels},
          {"depths", tower.depths},
          {"depth_appended", tower.depth_appended},
          {"regular", reg.regular},
          {"regularity", {{"stabilizer_size", reg.stabilizer_size}, {"diagnostic", reg.diagnostic}}}};
}

json to_json(const weakfact::WeakFactorization& wf) {
  return {{"bottom_degree", wf.bottom_degree},
          {"rank", wf.rank()},
          {"mu_minus", to_json(wf.mu_minus)},
          {"mu_plus", {{"det_character", to_json(wf.chi)}, {"group", torus::level_name(wf.mu.context().degree(),
                                                                                        wf.bottom_degree)}}},
          {"tiebreak", {{"teich", wf.tiebreak.teich}, {"pi", format_rational(wf.tiebreak.pi)}}}};
}

json to_json(const lietype::FiniteLieContext& ctx, const std::vector<lietype::ClassFunction>& table,
             const lietype::TableCertificate& cert) {
  json classes = json::array();
  for (const auto& c : ctx.classes())
    classes.push_back({{"type", lietype::to_string(c.type)},
                       {"label", c.label},
                       {"size", c.size},
                       {"representative", to_json(c.rep)}});
  json rows = json::array();
  for (const auto& f : table) {
    json values = json::array();
    for (const auto& v : f.values) values.push_back(to_json(v));
    rows.push_back({{"kind", f.kind}, {"params", f.params}, {"sign", f.sign}, {"degree", to_json(f.degree())},
                    {"values", values}});
  }
  return {{"q", ctx.q()},
          {"group_order", ctx.group_order()},
          {"classes", classes},
          {"characters", rows},
          {"certificate",
           {{"rows_orthonormal", cert.rows_orthonormal},
            {"columns_orthogonal", cert.columns_orthogonal},
            {"cyclic_multiplicities", cert.cyclic_multiplicities},
            {"complete", cert.complete},
            {"ok", cert.ok()}}}};
}

json to_json(const variety::VarietyReport& r) {
  json steps = json::array();
  for (bool s : r.steps) steps.push_back(s);
  return {{"q", r.Q},
          {"m", r.m},
          {"torus", variety::to_string(r.version)},
          {"s", to_json(r.s)},
          {"t", to_json(r.t)},
          {"sizes",
           {{"X", r.x_size}, {"X_st", r.xst_size}, {"W", r.w_size}, {"Z", r.z_size}, {"Y", r.y_size}}},
          {"component_index", r.component_index},
          {"steps", steps},
          {"count_identity", r.count_identity},
          {"torsor", r.torsor},
          {"int_t_stabilizes_x", r.int_t_stabilizes_x},
          {"ok", r.ok()}};
}

json to_json(const charformula::TraceEvaluation& ev) {
  json out = {{"s", to_json(ev.jd.s)},
              {"u", to_json(ev.jd.u)},
              {"order_prime_to_p", ev.jd.order_prime_to_p},
              {"value", to_json(ev.total)},
              {"nonzero_terms", ev.nonzero_terms}};
  if (ev.ms) {
    json blocks = json::array();
    for (const auto& b : ev.ms->blocks) blocks.push_back({{"rank", b.rank}, {"residue_degree", b.residue_degree}});
    out["centralizer"] = {{"type", charformula::to_string(ev.ms->type)}, {"blocks", blocks}, {"order", ev.ms->order}};
  }
  return out;
}

json to_json(const charformula::CrossValidation& cv) {
  return {{"samples", cv.samples},
          {"checks", cv.checks},
          {"failures", cv.failures},
          {"witnesses", cv.witnesses},
          {"ok", cv.ok()}};
}

json tagged(json j) {
  j["schema"] = kSchema;
  return j;
}

}  // namespace cuspcal::json_io
