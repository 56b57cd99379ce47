#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "cuspcal/charformula.hpp"
#include "cuspcal/jordan.hpp"
#include "cuspcal/lietype.hpp"
#include "cuspcal/torus_char.hpp"
#include "cuspcal/variety.hpp"
#include "cuspcal/weakfact.hpp"

namespace cuspcal::json_io {

using nlohmann::json;

inline constexpr const char* kSchema = "cuspcal-v1";

/// Parses a document; malformed text is a schema error.
json parse(const std::string& text);
json read_file(const std::string& path);

/// "a/b" or "a".
Rational parse_rational(const json& j);
std::string format_rational(const Rational& r);

// Field: {"p", "f", "precision", "poly"?}
std::shared_ptr<const padic::FieldContext> field_from_json(const json& j);
json to_json(const padic::FieldContext& ctx);

// Element of O_E: integer, coordinate list, or {"val", "coords"}.
padic::FieldElement field_element_from_json(const padic::FieldContext& ctx, const json& j);
json to_json(const padic::Elem& x);
json to_json(const padic::Matrix& m);
json to_json(const jordan::CompactModCenterElement& g);
json to_json(const gf::Matrix& m);

// Matrix document: {"field": {...}, "matrix": [[entry]]}.
struct MatrixInput {
  std::shared_ptr<const padic::FieldContext> field;
  std::vector<std::vector<jordan::ExactEntry>> entries;
};
MatrixInput matrix_from_json(const json& j);
/// Entries read in an existing context; a "field" member, if present, must agree.
std::vector<std::vector<jordan::ExactEntry>> entries_from_json(const padic::FieldContext& ctx, const json& j);

// Character: {"field", "subfield_degree"?, "conductor", "pi_value", "teich_exponent",
//             "wild_part": {"basis_images": ["a/p^j"]}}
torus::TorusCharacter character_from_json(const json& j);
/// Reads a character living in an existing context.
torus::TorusCharacter character_from_json(std::shared_ptr<const padic::FieldContext> ctx, const json& j);
json to_json(const torus::TorusCharacter& mu);

json to_json(const CyclotomicValue& v);
CyclotomicValue cyclotomic_from_json(const json& j);

json to_json(const torus::LeviTower& tower, const torus::RegularityReport& reg);
json to_json(const weakfact::WeakFactorization& wf);
json to_json(const lietype::FiniteLieContext& ctx, const std::vector<lietype::ClassFunction>& table,
             const lietype::TableCertificate& cert);
json to_json(const variety::VarietyReport& r);
json to_json(const charformula::TraceEvaluation& ev);
json to_json(const charformula::CrossValidation& cv);

/// Adds the schema tag.
json tagged(json j);

}  // namespace cuspcal::json_io
