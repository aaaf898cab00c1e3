#ifndef PEMBED_PADIC_HPP
#define PEMBED_PADIC_HPP

#include <map>
#include <string>
#include <vector>

#include "pembed/modular.hpp"
#include "pembed/numfield.hpp"

namespace pembed {

/// A p-adic integer approximation: residue mod p^k with its exact
/// valuation when determined (valuation_known = false means the residue
/// is 0 mod p^k, i.e. v >= k).
struct PAdicApprox {
    u64 p = 0;
    unsigned k = 1;
    mpz_class residue;
    long valuation = 0;
    bool valuation_known = true;

    mpz_class modulus() const;
    /// Base-p digits, little-endian, length k.
    std::vector<u64> digits() const;
};

/// Newton lifting of a simple root a of f mod p to precision p^k.
/// Throws NotSimpleRoot unless f(a) = 0 and f'(a) != 0 mod p.
PAdicApprox hensel_lift(const IntPoly& f, u64 p, u64 a, unsigned k);

/// v_p(x) for a nonzero rational; throws ZeroValuation for x = 0.
long rational_valuation(const mpq_class& x, u64 p);

/// sigma(beta) for the embedding sending the field generator to eta.
/// Doubles the working precision (re-lifting eta) when the numerator sum
/// vanishes mod p^k, up to max_digits.
PAdicApprox embed_element(const FieldElement& beta, const PAdicApprox& eta, unsigned max_digits = 1024);

/// Why a candidate prime was skipped during the embedding search.
enum class SkipReason { ConditionA, ConditionB, ConditionC, LeadingCoefficient };
std::string to_string(SkipReason r);

struct EmbeddingOptions {
    u64 p_max = 100000000;
    unsigned precision = 64; // p-adic digits
    u64 seed = 0;
    double bound_exponent_c = 1.0; // O(d^2) constant in the reported bound
};

struct EmbeddingResult {
    u64 p = 0;
    PAdicApprox eta;
    std::map<std::string, long> element_valuations; // name -> v_p(sigma(beta))
    std::vector<std::pair<u64, SkipReason>> skipped_primes;
    // Reported (never asserted) right-hand side of the height-based prime
    // bound exp(d h(alpha)) (dn h(alpha) + d sum h(beta_i) + dn)^{c d^2},
    // stored as a natural log.
    double log_bound = 0.0;
    double sum_beta_heights = 0.0;
};

/// Full embedding search: extends S with inverses, excludes primes dividing
/// disc * lc * prod b_i, requires a simple root mod p, Hensel-lifts and
/// verifies that every element of the doubled set is a p-adic unit.
EmbeddingResult find_embedding(const std::vector<std::pair<std::string, FieldElement>>& elements,
                               const EmbeddingOptions& opts = {});

} // namespace pembed

#endif
