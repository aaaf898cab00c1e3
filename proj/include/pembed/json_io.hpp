#ifndef PEMBED_JSON_IO_HPP
#define PEMBED_JSON_IO_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pembed/numfield.hpp"

namespace pembed {

using json = nlohmann::ordered_json;

/// Coefficient array <-> JSON array of decimal strings (arbitrary precision).
json poly_to_json(const IntPoly& f);
IntPoly poly_from_json(const json& j);

/// Element coordinates as { "num": [...], "den": "..." }: integer numerator
/// array over a single denominator.
json element_to_json(const FieldElement& e);
FieldElement element_from_json(FieldPtr field, const json& j);

/// A parsed field specification: the defining polynomial plus named elements.
struct FieldSpec {
    FieldPtr field;
    std::map<std::string, FieldElement> elements;
};

/// { "defining_poly": [...], "elements": { name: {num, den} },
///   "assert_irreducible": bool (optional) }
FieldSpec field_spec_from_json(const json& j);
FieldSpec load_field_spec(const std::string& path);

} // namespace pembed

#endif
