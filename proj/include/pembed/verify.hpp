#ifndef PEMBED_VERIFY_HPP
#define PEMBED_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pembed/intpoly.hpp"

namespace pembed {

enum class SuiteScope { Quick, Full };

struct SuiteOptions {
    SuiteScope scope = SuiteScope::Quick;
    std::uint64_t seed = 0;
    /// Name of a check whose first comparison is deliberately inverted;
    /// exercises the failure path end to end. Empty = no fault.
    std::string fault_inject;
};

struct CheckResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages; // one per failure
};

/// Runs every asserted inequality of the library over a seeded random
/// corpus. Checks: mahler-sandwich, discriminant-bound,
/// generic-prime-case-bound, primitive-height-certificate,
/// coefficient-height-bound, congruence-counts, product-lower-bound,
/// embedding-unit-valuations.
std::vector<CheckResult> run_verification_suite(const SuiteOptions& opts);

bool suite_passed(const std::vector<CheckResult>& results);

/// Uniform random polynomial of the given degree with nonzero leading
/// coefficient and height <= H (deterministic in rng state).
IntPoly random_poly(std::uint64_t& state, int degree, unsigned long H);

/// Random polynomial that check_irreducible proves irreducible
/// (content 1, positive leading coefficient).
IntPoly random_irreducible_poly(std::uint64_t& state, int degree, unsigned long H);

} // namespace pembed

#endif
