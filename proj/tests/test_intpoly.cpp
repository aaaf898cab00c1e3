#include <doctest.h>

#include "pembed/error.hpp"
#include "pembed/intpoly.hpp"
#include "pembed/verify.hpp"

using namespace pembed;

TEST_CASE("parse and to_string round-trip") {
    IntPoly f = IntPoly::parse("[-2, 0, 1]");
    CHECK(f.degree() == 2);
    CHECK(f.coeff(0) == -2);
    CHECK(f.to_string() == "[-2, 0, 1]");
    CHECK(IntPoly::parse(f.to_string()) == f);
    CHECK(IntPoly::parse("[]").is_zero());
}

TEST_CASE("arithmetic basics") {
    IntPoly f = IntPoly::parse("[1, 2]");   // 1 + 2x
    IntPoly g = IntPoly::parse("[3, 0, 1]"); // 3 + x^2
    CHECK((f * g) == IntPoly::parse("[3, 6, 1, 2]"));
    CHECK((f + g) == IntPoly::parse("[4, 2, 1]"));
    CHECK(evaluate(g, mpz_class(5)) == 28);
    CHECK(height(g) == 3);
    CHECK(length(g) == 4);
    CHECK(content(IntPoly::parse("[6, -9, 3]")) == 3);
    CHECK(derivative(g) == IntPoly::parse("[0, 2]"));
}

TEST_CASE("content scales multiplicatively under scalar multiplication") {
    IntPoly f = IntPoly::parse("[3, -1, 4]");
    CHECK(content(mpz_class(6) * f) == 6 * content(f));
}

TEST_CASE("resultant known values") {
    CHECK(resultant(IntPoly::parse("[-2, 0, 1]"), IntPoly::parse("[-3, 0, 1]")) == 1);
    CHECK(resultant(IntPoly::parse("[1, 0, 1]"), IntPoly::parse("[0, 2]")) == 4);
    CHECK_THROWS_AS(resultant(IntPoly::zero(), IntPoly::x()), ZeroPolynomial);
}

TEST_CASE("resultant symmetry and multiplicativity on random inputs") {
    std::uint64_t state = 42;
    for (int trial = 0; trial < 40; ++trial) {
        IntPoly f = random_poly(state, 1 + static_cast<int>(state % 4), 20);
        IntPoly g = random_poly(state, 1 + static_cast<int>((state >> 8) % 4), 20);
        IntPoly h = random_poly(state, 1 + static_cast<int>((state >> 16) % 3), 20);
        long df = f.degree(), dg = g.degree();
        mpz_class sign = ((df * dg) % 2 == 0) ? 1 : -1;
        CHECK(resultant(f, g) == sign * resultant(g, f));
        CHECK(resultant(f * h, g) == resultant(f, g) * resultant(h, g));
    }
}

TEST_CASE("discriminant known values") {
    CHECK(discriminant(IntPoly::parse("[1, 0, 1]")) == -4);
    CHECK(discriminant(IntPoly::parse("[-2, 0, 1]")) == 8);
    // x^3 - 2: disc = -27 * 4 = -108
    CHECK(discriminant(IntPoly::parse("[-2, 0, 0, 1]")) == -108);
}

TEST_CASE("discriminant magnitude bound on random polynomials") {
    std::uint64_t state = 7;
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + static_cast<int>(state % 7);
        IntPoly f = random_poly(state, d, 1000);
        mpz_class rhs, hp;
        mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(2 * d));
        mpz_class H = height(f);
        mpz_pow_ui(hp.get_mpz_t(), H.get_mpz_t(), static_cast<unsigned long>(2 * d - 2));
        CHECK(abs(discriminant(f)) < rhs * hp);
    }
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == IntPoly::parse("[-1, 1]"));
    CHECK(cyclotomic(5) == IntPoly::parse("[1, 1, 1, 1, 1]"));
    CHECK(cyclotomic(6) == IntPoly::parse("[1, -1, 1]"));
    CHECK(cyclotomic(12) == IntPoly::parse("[1, 0, -1, 0, 1]"));
    // prod_{d | m} Phi_d = x^m - 1 for m <= 200
    for (unsigned long m = 1; m <= 200; ++m) {
        IntPoly prod = IntPoly::parse("[1]");
        for (unsigned long d = 1; d <= m; ++d)
            if (m % d == 0) prod = prod * cyclotomic(d);
        IntPoly target = IntPoly::monomial(static_cast<unsigned>(m)) - IntPoly::parse("[1]");
        CHECK(prod == target);
    }
}

TEST_CASE("squarefree decomposition recovers multiplicities") {
    IntPoly f = IntPoly::parse("[-1, 1]"); // x - 1
    IntPoly g = f * f;
    auto parts = squarefree_decomposition(g);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].degree() <= 0);
    CHECK(parts[1] == f);
    CHECK(distinct_root_count(g) == 1);
    CHECK(distinct_root_count(IntPoly::parse("[1, 0, 1]")) == 2);
    CHECK(squarefree_part(g) == f);
}

TEST_CASE("gcd and exact division") {
    IntPoly f = IntPoly::parse("[-1, 0, 1]"); // (x-1)(x+1)
    IntPoly g = IntPoly::parse("[-1, 1]");
    CHECK(poly_gcd(f, g) == g);
    CHECK(divide_exact(f, g) == IntPoly::parse("[1, 1]"));
    CHECK_THROWS_AS(divide_exact(IntPoly::parse("[1, 1]"), IntPoly::parse("[0, 2]")), InternalAssertionFailed);
}

TEST_CASE("irreducibility detection") {
    CHECK(check_irreducible(IntPoly::parse("[1, 0, 1]")) == Irreducibility::Proven);
    CHECK(check_irreducible(IntPoly::parse("[-2, 0, 1]")) == Irreducibility::Proven);
    CHECK(check_irreducible(cyclotomic(5)) == Irreducibility::Proven);
    // x^4 - 10x^2 + 1 is irreducible but its mod-p factor patterns never
    // prove it (Galois group is the Klein four-group).
    CHECK(check_irreducible(IntPoly::parse("[1, 0, -10, 0, 1]")) == Irreducibility::Unknown);
}
