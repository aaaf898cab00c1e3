#ifndef PEMBED_BOUNDS_HPP
#define PEMBED_BOUNDS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace pembed {

/// Tunable constants for the parameterized bound formulas. All default to
/// 1 and the affected reports are never asserted.
struct BoundConstants {
    double c = 1.0;
    double C = 1.0;
    double exponent_scale = 1.0;
};

/// A bound evaluation paired (optionally) with an empirically found value.
struct BoundReport {
    std::string name;
    std::map<std::string, double> inputs;
    double log_bound = 0.0;               // natural log of the bound
    bool overflowed = false;              // bound exceeds double range even in log space
    std::optional<double> log_empirical;  // natural log of the observed quantity
    bool asserted = false;                // true only for constant-free bounds
    std::optional<double> margin;         // exp(log_empirical - log_bound)
};

/// Names accepted by evaluate_bound. All are parameterized (constants
/// unknown), evaluated in log space, and reported with asserted = false:
///   prime-from-generators      inputs: d, m, sum_h_alpha
///   prime-from-generator-heights inputs: d, m, sum_h_alpha
///   prime-single-generator     inputs: d, h_alpha
///   prime-from-discriminant    inputs: d, n, abs_disc_K, sum_h_beta
///   prime-cyclotomic           inputs: d, n, delta_m, sum_h_beta
///   simple-root-prime-coprime  inputs: d, H, Q
///   simple-root-prime          inputs: d, H
std::vector<std::string> bound_names();

/// Evaluates the named bound formula; optional empirical value (linear
/// scale) is folded into the report. Throws MissingInput when a required
/// symbol is absent or the name is unknown.
BoundReport evaluate_bound(const std::string& name, const std::map<std::string, double>& inputs,
                           const BoundConstants& constants = {},
                           std::optional<double> empirical = std::nullopt);

/// Products-of-consecutive-primes construction showing the prime found by
/// an embedding search must exceed the nR-th prime.
struct SharpnessPrimesReport {
    unsigned n = 0;
    unsigned R = 0;
    std::vector<mpz_class> beta;   // beta_i = prod of R primes, disjoint blocks
    mpz_class p_nR;                // the nR-th prime
    mpz_class least_good_prime;    // least prime dividing none of the beta_i
    double sum_heights = 0.0;      // sum log beta_i
    double ratio = 0.0;            // least_good_prime / sum_heights
    bool exceeds_p_nR = false;
};
SharpnessPrimesReport sharpness_primes(unsigned n, unsigned R);

/// Random primitive elements of Q(sqrt((k+t)(k-t))) all have naive height
/// above k/3; asserted only for k >= 15 (reported below that threshold).
struct SharpnessQuadraticReport {
    long k = 0;
    long t = 0;
    unsigned samples = 0;
    double threshold = 0.0;    // k / 3
    mpz_class min_height;      // smallest H(alpha) observed
    bool asserted = false;     // k >= 15
    bool all_above = false;
};
SharpnessQuadraticReport sharpness_quadratic(long k, long t, unsigned samples, unsigned long seed = 0);

} // namespace pembed

#endif
