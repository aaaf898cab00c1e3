#include <doctest.h>

#include "pembed/error.hpp"
#include "pembed/json_io.hpp"

using namespace pembed;

TEST_CASE("polynomial JSON round-trip with big coefficients") {
    IntPoly f = IntPoly::parse("[123456789012345678901234567890, -1, 1]");
    json j = poly_to_json(f);
    CHECK(j.is_array());
    CHECK(j[0] == "123456789012345678901234567890");
    CHECK(poly_from_json(j) == f);
    CHECK_THROWS_AS(poly_from_json(json::parse("{\"a\":1}")), ParseError);
    CHECK_THROWS_AS(poly_from_json(json::parse("[\"xyz\"]")), ParseError);
}

TEST_CASE("field spec parsing") {
    json j = json::parse(R"({
        "defining_poly": ["-2", "0", "1"],
        "elements": {
            "alpha": {"num": ["0", "1"], "den": "1"},
            "half": {"num": ["1"], "den": "2"}
        }
    })");
    FieldSpec spec = field_spec_from_json(j);
    CHECK(spec.field->degree() == 2);
    REQUIRE(spec.elements.count("alpha") == 1);
    REQUIRE(spec.elements.count("half") == 1);
    const FieldElement& alpha = spec.elements.at("alpha");
    CHECK((alpha * alpha) == FieldElement::rational(spec.field, 2));
    CHECK(spec.elements.at("half").coords()[0] == mpq_class(1, 2));
}

TEST_CASE("field spec accepts plain integers and defaults den to 1") {
    json j = json::parse(R"({
        "defining_poly": [-2, 0, 1],
        "elements": {"a": {"num": [3]}}
    })");
    FieldSpec spec = field_spec_from_json(j);
    CHECK(spec.elements.at("a").coords()[0] == 3);
}

TEST_CASE("element JSON round-trip") {
    json j = json::parse(R"({"defining_poly": ["-2", "0", "1"]})");
    FieldSpec spec = field_spec_from_json(j);
    FieldElement e(spec.field, {mpq_class(3, 4), mpq_class(-1, 6)});
    json je = element_to_json(e);
    FieldElement back = element_from_json(spec.field, je);
    CHECK(back == e);
}

TEST_CASE("assert_irreducible flag admits pattern-resistant fields") {
    json j = json::parse(R"({
        "defining_poly": ["1", "0", "-10", "0", "1"],
        "assert_irreducible": true,
        "elements": {}
    })");
    FieldSpec spec = field_spec_from_json(j);
    CHECK(spec.field->degree() == 4);
}

TEST_CASE("malformed specs raise ParseError") {
    CHECK_THROWS_AS(field_spec_from_json(json::parse("{}")), ParseError);
    CHECK_THROWS_AS(field_spec_from_json(json::parse(R"({"defining_poly": ["-2","0","1"],
        "elements": {"a": {"num": ["1","2","3"], "den": "1"}}})")),
                    ParseError);
    CHECK_THROWS_AS(field_spec_from_json(json::parse(R"({"defining_poly": ["-2","0","1"],
        "elements": {"a": {"num": ["1"], "den": "0"}}})")),
                    ParseError);
    CHECK_THROWS_AS(load_field_spec("/nonexistent/path.json"), ParseError);
}
