#include <doctest.h>

#include <cmath>

#include "pembed/heights.hpp"
#include "pembed/verify.hpp"

using namespace pembed;

TEST_CASE("mahler measure of cyclotomic and simple polynomials") {
    // All roots of Phi_12 lie on the unit circle: M = 1.
    auto m = mahler_measure(cyclotomic(12));
    CHECK(m.value == doctest::Approx(1.0).epsilon(1e-9));
    // x^2 - 2: both roots have modulus sqrt(2) > 1, so M = 2.
    auto m2 = mahler_measure(IntPoly::parse("[-2, 0, 1]"));
    CHECK(m2.value == doctest::Approx(2.0).epsilon(1e-9));
    // 3x - 6: root 2, M = 3 * 2 = 6.
    auto m3 = mahler_measure(IntPoly::parse("[-6, 3]"));
    CHECK(m3.value == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("mahler measure multiplicativity") {
    IntPoly f = IntPoly::parse("[-2, 0, 1]");
    IntPoly g = IntPoly::parse("[1, 0, 1]");
    auto mf = mahler_measure(f), mg = mahler_measure(g), mfg = mahler_measure(f * g);
    CHECK(mfg.value == doctest::Approx(mf.value * mg.value).epsilon(1e-8));
}

TEST_CASE("absolute logarithmic heights") {
    CHECK(abs_log_height(IntPoly::parse("[-2, 0, 1]")) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
    CHECK(abs_log_height(cyclotomic(5)) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rational_height(mpq_class(3, 4)) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(rational_height(mpq_class(7)) == doctest::Approx(std::log(7.0)).epsilon(1e-12));
}

TEST_CASE("height of a power scales linearly: h(gamma^n) = n h(gamma)") {
    // gamma = sqrt(2): gamma^2 = 2 has h = log 2 = 2 * h(gamma).
    double h1 = abs_log_height(IntPoly::parse("[-2, 0, 1]"));
    double h2 = rational_height(mpq_class(2));
    CHECK(h2 == doctest::Approx(2.0 * h1).epsilon(1e-9));
    // gamma^4 = 4.
    CHECK(rational_height(mpq_class(4)) == doctest::Approx(4.0 * h1).epsilon(1e-9));
}

TEST_CASE("height-Mahler sandwich on random polynomials") {
    std::uint64_t state = 1234;
    for (int trial = 0; trial < 100; ++trial) {
        int d = 1 + static_cast<int>(state % 8);
        IntPoly f = random_poly(state, d, 1000000);
        auto rep = check_height_mahler_inequality(f);
        CHECK(rep.pass);
        CHECK(rep.lower <= rep.mahler + kHeightSlack);
        CHECK(rep.mahler <= rep.upper + kHeightSlack);
    }
}

TEST_CASE("complex roots certified for repeated factors") {
    IntPoly f = IntPoly::parse("[-1, 1]");
    IntPoly g = f * f * IntPoly::parse("[1, 0, 1]");
    auto roots = complex_roots(g);
    REQUIRE(roots.size() == 4);
    int ones = 0;
    for (auto r : roots)
        if (std::abs(r - std::complex<double>(1.0, 0.0)) < 1e-8) ++ones;
    CHECK(ones == 2);
}
