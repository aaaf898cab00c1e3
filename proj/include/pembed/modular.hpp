#ifndef PEMBED_MODULAR_HPP
#define PEMBED_MODULAR_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pembed/intpoly.hpp"

namespace pembed {

using u64 = std::uint64_t;

/// Deterministic Miller-Rabin for 64-bit inputs; Baillie-PSW-grade for mpz.
bool is_prime(u64 n);
bool is_prime(const mpz_class& n);

/// Calls fn(p) for every prime in [2, limit] until fn returns false.
/// Segmented sieve underneath.
void for_each_prime(u64 limit, const std::function<bool(u64)>& fn);

/// Full factorization (trial division then Pollard-Brent rho).
/// max_rho_rounds caps the effort per composite; on exhaustion the
/// remaining cofactor is reported with is_certified = false.
struct Factor {
    mpz_class prime; // or an unfactored cofactor when !is_certified
    unsigned exponent;
    bool is_certified;
};
std::vector<Factor> factorize(const mpz_class& n, unsigned max_rho_rounds = 64);

/// Product of the distinct prime divisors of n (|n| > 0).
mpz_class radical(const mpz_class& n, unsigned max_rho_rounds = 64);

/// All roots of f mod p, ascending. Throws ZeroReduction if f vanishes
/// mod p. Randomized equal-degree splitting seeded for reproducibility.
std::vector<u64> roots_mod_p(const IntPoly& f, u64 p, u64 seed = 0);

struct SimpleRootWitness {
    u64 p = 0;
    u64 a = 0;
    bool simple = false;
};

/// First root (ascending) that is simple mod p, if any.
std::optional<SimpleRootWitness> simple_root_mod_p(const IntPoly& f, u64 p, u64 seed = 0);

/// Smallest prime p <= p_max with p not dividing Q and f having a simple
/// root mod p. Throws SearchExhausted(p_max) if none is found.
SimpleRootWitness smallest_simple_root_prime(const IntPoly& f, const mpz_class& Q, u64 p_max = 100000000,
                                             u64 seed = 0);

/// Constructive three-case prime with an explicit constant-free bound
/// (case 1: prime divisor of a_0, bound H; case 2: |a_0| = 1, scan f(+-iM),
/// bound 2H(dM)^d; case 3: gcd(a_0, M) > 1, scan f(+-i a_0 M)/a_0, bound
/// 2H(dHM)^d). The returned prime is verified to satisfy its case bound.
struct GenericPrimeResult {
    SimpleRootWitness witness;
    int case_tag = 0;      // 1, 2, or 3
    mpz_class bound;       // the explicit case bound
    mpz_class radical_M;   // product of distinct primes of the discriminant
};
GenericPrimeResult generic_prime(const IntPoly& f);

/// N(L, q) = #{1 <= j <= L : f(j) = 0 mod q}; exact, exploiting the
/// period-q structure of f(j) mod q.
mpz_class count_roots_N(const IntPoly& f, const mpz_class& L, const mpz_class& q);

/// Brute-force verification of the three prime-power congruence-count
/// inequalities N(l^k) <= m l^{k-1}, N(l^k) <= 2 l^{k(1-1/d)} and
/// |N(L,l^k) - (L/l^k) N(l^k)| < d.
struct CongruenceLemmaCheck {
    unsigned k;
    mpz_class count;           // N(l^k)
    bool lagrange_ok;          // N(l^k) <= m l^{k-1}
    bool konyagin_power_ok;    // N(l^k)^d <= 2^d l^{k(d-1)}
    std::vector<bool> drift_ok; // per L in L_list
};
struct CongruenceLemmaReport {
    int distinct_roots; // m
    std::vector<CongruenceLemmaCheck> checks;
    bool all_pass = true;
};
CongruenceLemmaReport verify_congruence_lemmas(const IntPoly& f, u64 ell, unsigned k_max,
                                               const std::vector<mpz_class>& L_list);

/// Factorization profile of W(L) = prod_{j<=L} max(1, |f(j)|).
struct DivisorProfile {
    IntPoly f;
    mpz_class L;
    std::map<mpz_class, unsigned long> exponents; // prime -> r_l(L)
    std::map<mpz_class, unsigned long> max_power; // prime -> K_l(L)
    std::vector<mpz_class> uncertified;           // unfactored cofactors counted as one pseudo-prime each
    std::size_t omega = 0;                        // distinct primes (certified + pseudo)
    mpz_class W;                                  // the exact product
};
DivisorProfile divisor_profile(const IntPoly& f, const mpz_class& L, unsigned max_rho_rounds = 64);

/// Exact check of W(L) >= (L/5)^{dL/18} (integer comparison of 18th powers)
/// plus the report-only omega lower bound with user constants c1, c2.
struct ProductOmegaReport {
    bool hypothesis_met = false; // L >= 51(2d+1)
    bool product_bound_ok = false;
    std::size_t omega = 0;
    double omega_bound = 0.0;    // min(c1 L / log+ H, L^{c2/d})
    double omega_margin = 0.0;   // omega / bound (reported, never asserted)
};
ProductOmegaReport verify_product_and_omega_lemmas(const IntPoly& f, const mpz_class& L, double c1, double c2,
                                                   unsigned max_rho_rounds = 64);

/// Largest prime factor of m and its exact power.
struct LargestPrimePower {
    mpz_class P;
    unsigned e;
};
LargestPrimePower largest_prime_power(const mpz_class& m);

/// delta(m): phi(m / l^e) when the largest prime factor l of m (l^e || m)
/// satisfies l = 1 mod (m / l^e); otherwise 1.
mpz_class delta(const mpz_class& m);

mpz_class euler_phi(const mpz_class& n);

/// Cyclotomic case table: the exact root count N(l) of Phi_m mod l and the
/// complete-splitting criterion l = 1 mod (m / l^e).
bool cyclotomic_splitting_criterion(const mpz_class& m, const mpz_class& ell);
/// N(l^k) upper bound phi(m/l^e) l^{k-1} under the criterion, 0 otherwise;
/// for k = 1 this is the exact count.
mpz_class cyclotomic_root_count(const mpz_class& m, const mpz_class& ell, unsigned k = 1);

} // namespace pembed

#endif
