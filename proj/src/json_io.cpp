#include "pembed/json_io.hpp"

#include <fstream>

#include "pembed/error.hpp"

namespace pembed {

namespace {

mpz_class parse_mpz(const json& v) {
    std::string s;
    if (v.is_string()) {
        s = v.get<std::string>();
    } else if (v.is_number_integer()) {
        s = std::to_string(v.get<long long>());
    } else {
        throw ParseError("expected integer or decimal string");
    }
    mpz_class z;
    if (z.set_str(s, 10) != 0) throw ParseError("bad integer literal: " + s);
    return z;
}

} // namespace

json poly_to_json(const IntPoly& f) {
    json arr = json::array();
    for (const mpz_class& c : f.coeffs()) arr.push_back(c.get_str());
    return arr;
}

IntPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("polynomial must be a coefficient array");
    std::vector<mpz_class> coeffs;
    coeffs.reserve(j.size());
    for (const auto& v : j) coeffs.push_back(parse_mpz(v));
    return IntPoly(std::move(coeffs));
}

json element_to_json(const FieldElement& e) {
    PowerBasisCoords pc = power_basis_coords(e);
    json num = json::array();
    for (const mpz_class& a : pc.a) num.push_back(a.get_str());
    return json{{"num", num}, {"den", pc.b.get_str()}};
}

FieldElement element_from_json(FieldPtr field, const json& j) {
    if (!j.is_object() || !j.contains("num")) throw ParseError("element must be { num: [...], den: \"...\" }");
    mpz_class den = j.contains("den") ? parse_mpz(j.at("den")) : mpz_class(1);
    if (den == 0) throw ParseError("element denominator must be nonzero");
    const json& num = j.at("num");
    if (!num.is_array()) throw ParseError("element num must be an array");
    const std::size_t d = static_cast<std::size_t>(field->degree());
    if (num.size() > d) throw ParseError("element has more coordinates than the field degree");
    std::vector<mpq_class> coords(d, mpq_class(0));
    for (std::size_t i = 0; i < num.size(); ++i) {
        coords[i] = mpq_class(parse_mpz(num[i]), den);
        coords[i].canonicalize();
    }
    return FieldElement(std::move(field), std::move(coords));
}

FieldSpec field_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("defining_poly")) throw ParseError("field spec needs defining_poly");
    IntPoly f = poly_from_json(j.at("defining_poly"));
    bool assert_irr = j.value("assert_irreducible", false);
    FieldSpec spec;
    spec.field = std::make_shared<const NumberField>(std::move(f), assert_irr);
    if (j.contains("elements")) {
        const json& els = j.at("elements");
        if (!els.is_object()) throw ParseError("elements must be an object");
        for (const auto& [name, val] : els.items()) {
            spec.elements.emplace(name, element_from_json(spec.field, val));
        }
    }
    return spec;
}

FieldSpec load_field_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open field spec: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return field_spec_from_json(j);
}

} // namespace pembed
