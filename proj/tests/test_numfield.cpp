#include <doctest.h>

#include <cmath>
#include <memory>

#include "pembed/error.hpp"
#include "pembed/heights.hpp"
#include "pembed/numfield.hpp"
#include "pembed/verify.hpp"

using namespace pembed;

namespace {
FieldPtr sqrt2_field() { return std::make_shared<const NumberField>(IntPoly::parse("[-2, 0, 1]")); }
FieldPtr biquadratic_field() {
    return std::make_shared<const NumberField>(IntPoly::parse("[1, 0, -10, 0, 1]"), /*assert_irreducible=*/true);
}
} // namespace

TEST_CASE("basic field element arithmetic in Q(sqrt 2)") {
    auto K = sqrt2_field();
    FieldElement a = FieldElement::generator(K);
    CHECK((a * a) == FieldElement::rational(K, 2));
    CHECK(a.inverse() == FieldElement(K, {mpq_class(0), mpq_class(1, 2)}));
    CHECK((a.inverse() * a) == FieldElement::one(K));
    CHECK_THROWS_AS(FieldElement::zero(K).inverse(), DivisionByZero);
}

TEST_CASE("inverse times self is one for random elements") {
    std::uint64_t state = 99;
    auto K4 = biquadratic_field();
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<mpq_class> coords;
        bool nonzero = false;
        for (int i = 0; i < 4; ++i) {
            long num = static_cast<long>(state % 41) - 20;
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            long den = 1 + static_cast<long>(state % 9);
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            mpq_class q(num, den);
            q.canonicalize();
            if (num != 0) nonzero = true;
            coords.push_back(q);
        }
        if (!nonzero) coords[0] = 1;
        FieldElement e(K4, coords);
        CHECK((e * e.inverse()) == FieldElement::one(K4));
    }
}

TEST_CASE("sqrt 2 inside the biquadratic field") {
    auto K = biquadratic_field();
    FieldElement g = FieldElement::generator(K);
    // (g^3 - 9g)/2 squares to 2.
    FieldElement s2 = (g.pow(3) - g * mpq_class(9)) * mpq_class(1, 2);
    CHECK((s2 * s2) == FieldElement::rational(K, 2));
    CHECK(min_poly_of_element(s2) == IntPoly::parse("[-2, 0, 1]"));

    auto pc = power_basis_coords(s2);
    CHECK(pc.b == 2);
    REQUIRE(pc.a.size() == 4);
    CHECK(pc.a[0] == 0);
    CHECK(pc.a[1] == -9);
    CHECK(pc.a[2] == 0);
    CHECK(pc.a[3] == 1);
}

TEST_CASE("minimal polynomials of rationals and the generator") {
    auto K = sqrt2_field();
    CHECK(min_poly_of_element(FieldElement::zero(K)) == IntPoly::x());
    CHECK(min_poly_of_element(FieldElement::rational(K, mpq_class(3, 4))) == IntPoly::parse("[-3, 4]"));
    CHECK(min_poly_of_element(FieldElement::generator(K)) == IntPoly::parse("[-2, 0, 1]"));
}

TEST_CASE("minimal polynomial annihilates the element") {
    std::uint64_t state = 555;
    auto K = biquadratic_field();
    for (int trial = 0; trial < 10; ++trial) {
        IntPoly dummy = random_poly(state, 3, 5); // advance state deterministically
        std::vector<mpq_class> coords;
        for (int i = 0; i < 4; ++i) coords.emplace_back(dummy.coeff(i));
        FieldElement e(K, coords);
        if (e.is_zero()) continue;
        IntPoly mp = min_poly_of_element(e);
        // Evaluate mp at e inside the field.
        FieldElement acc = FieldElement::zero(K);
        for (int i = mp.degree(); i >= 0; --i) acc = acc * e + FieldElement::rational(K, mpq_class(mp.coeff(i)));
        CHECK(acc.is_zero());
    }
}

TEST_CASE("power basis denominator is coprime to the numerator gcd") {
    auto K = sqrt2_field();
    FieldElement e(K, {mpq_class(3, 4), mpq_class(0)});
    auto pc = power_basis_coords(e);
    CHECK(pc.b == 4);
    CHECK(pc.a[0] == 3);
    mpz_class g = gcd(gcd(pc.a[0], pc.a[1]), pc.b);
    CHECK(g == 1);
}

TEST_CASE("primitive element for Q(sqrt2, sqrt3)") {
    auto K = biquadratic_field();
    FieldElement g = FieldElement::generator(K);
    FieldElement s2 = (g.pow(3) - g * mpq_class(9)) * mpq_class(1, 2);
    FieldElement s3 = (g.pow(3) - g * mpq_class(9)) * mpq_class(-1, 2) + g; // sqrt3 = gamma - sqrt2
    CHECK((s3 * s3) == FieldElement::rational(K, 3));

    auto prim = primitive_from_generators({s2, s3});
    CHECK(prim.min_poly == IntPoly::parse("[1, 0, -10, 0, 1]"));
    CHECK(prim.multipliers == std::vector<long>{1, 1});
    CHECK(prim.height == doctest::Approx(0.5731).epsilon(1e-3));
    CHECK(prim.height <= prim.height_bound + kHeightSlack);
    CHECK(prim.height_bound == doctest::Approx(std::log(4.0) + 0.5 * std::log(2.0) + 0.5 * std::log(3.0)).epsilon(1e-9));
}

TEST_CASE("primitive element search rejects non-generating sets") {
    auto K = biquadratic_field();
    FieldElement g = FieldElement::generator(K);
    FieldElement s2 = (g.pow(3) - g * mpq_class(9)) * mpq_class(1, 2);
    // sqrt2 alone generates only a quadratic subfield.
    CHECK_THROWS_AS(primitive_from_generators({s2}), NotGenerating);
}

TEST_CASE("coefficient height certificate on the worked example") {
    auto K = biquadratic_field();
    FieldElement g = FieldElement::generator(K);
    FieldElement s2 = (g.pow(3) - g * mpq_class(9)) * mpq_class(1, 2);
    auto cert = coefficient_height_certificate(s2);
    CHECK(cert.pass);
    CHECK(cert.coeff_heights[1] == doctest::Approx(std::log(9.0)).epsilon(1e-9));
    CHECK(cert.log_b == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    for (std::size_t i = 0; i < cert.coeff_heights.size(); ++i) {
        CHECK(cert.coeff_heights[i] <= cert.per_index_bounds[i] + kHeightSlack);
        CHECK(cert.coeff_heights[i] <= cert.uniform_bound + kHeightSlack);
    }
    CHECK(cert.log_b <= cert.uniform_bound + kHeightSlack);
}

TEST_CASE("vandermonde numerical reconstruction agrees with exact coordinates") {
    auto K = biquadratic_field();
    FieldElement g = FieldElement::generator(K);
    FieldElement s2 = (g.pow(3) - g * mpq_class(9)) * mpq_class(1, 2);
    auto rep = vandermonde_solve_check(s2);
    CHECK(rep.pass);
    CHECK(rep.max_abs_diff < 1e-6);
}

TEST_CASE("rebase to a new primitive generator") {
    auto K = biquadratic_field();
    FieldElement g = FieldElement::generator(K);
    FieldElement s2 = (g.pow(3) - g * mpq_class(9)) * mpq_class(1, 2);
    // gamma generates; express sqrt2 in gamma's own power basis (identity).
    auto coords = rebase_coords(s2, g);
    REQUIRE(coords.size() == 4);
    CHECK(coords[1] == mpq_class(-9, 2));
    CHECK(coords[3] == mpq_class(1, 2));
}

TEST_CASE("element heights match minimal-polynomial heights") {
    auto K = sqrt2_field();
    CHECK(element_height(FieldElement::generator(K)) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
    CHECK(element_height(FieldElement::rational(K, mpq_class(3, 4))) == doctest::Approx(std::log(4.0)).epsilon(1e-9));
}

TEST_CASE("field mismatch is rejected") {
    auto K1 = sqrt2_field();
    auto K2 = std::make_shared<const NumberField>(IntPoly::parse("[1, 0, 1]"));
    CHECK_THROWS_AS(FieldElement::one(K1) + FieldElement::one(K2), FieldMismatch);
}
