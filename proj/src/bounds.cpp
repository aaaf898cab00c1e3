#include "pembed/bounds.hpp"

#include <cmath>
#include <memory>
#include <random>

#include "pembed/error.hpp"
#include "pembed/modular.hpp"
#include "pembed/numfield.hpp"

namespace pembed {

namespace {

double log_plus(double x) { return std::max(1.0, std::log(x)); }

// log of a power term base^e with the base floored at 1 so the formula
// stays monotone and defined for tiny inputs.
double log_pow(double base, double e) { return e * std::log(std::max(base, 1.0)); }

double get(const std::map<std::string, double>& in, const std::string& key) {
    auto it = in.find(key);
    if (it == in.end()) throw MissingInput(key);
    return it->second;
}

double log_sum_exp(double a, double b) {
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace

std::vector<std::string> bound_names() {
    return {"prime-from-generators", "prime-from-generator-heights", "prime-single-generator",
            "prime-from-discriminant", "prime-cyclotomic", "simple-root-prime-coprime", "simple-root-prime"};
}

BoundReport evaluate_bound(const std::string& name, const std::map<std::string, double>& inputs,
                           const BoundConstants& k, std::optional<double> empirical) {
    BoundReport rep;
    rep.name = name;
    rep.inputs = inputs;
    rep.asserted = false;

    long double lb = 0.0L;
    if (name == "prime-from-generators") {
        double d = get(inputs, "d"), m = get(inputs, "m"), sh = get(inputs, "sum_h_alpha");
        lb = d * std::log(std::max(m, 1.0)) + d * sh + k.exponent_scale * d * d * log_pow(d * m * sh + d * m, 1.0);
    } else if (name == "prime-from-generator-heights") {
        double d = get(inputs, "d"), m = get(inputs, "m"), sh = get(inputs, "sum_h_alpha");
        lb = d * sh + k.exponent_scale * d * d * log_pow(d * m * sh + d * m, 1.0);
    } else if (name == "prime-single-generator") {
        double d = get(inputs, "d"), h = get(inputs, "h_alpha");
        lb = d * h + k.exponent_scale * d * d * log_pow(d * h + d, 1.0);
    } else if (name == "prime-from-discriminant") {
        double d = get(inputs, "d"), n = get(inputs, "n");
        double D = get(inputs, "abs_disc_K"), sh = get(inputs, "sum_h_beta");
        lb = 0.5 * std::log(std::max(D, 1.0)) +
             k.exponent_scale * d * d * log_pow(n * std::log(std::max(D, 1.0)) + d * sh, 1.0);
    } else if (name == "prime-cyclotomic") {
        double d = get(inputs, "d"), n = get(inputs, "n");
        double delta_m = get(inputs, "delta_m"), sh = get(inputs, "sum_h_beta");
        lb = k.exponent_scale * d * delta_m * log_pow(d * sh + d * n, 1.0);
    } else if (name == "simple-root-prime-coprime") {
        double d = get(inputs, "d"), H = get(inputs, "H"), Q = get(inputs, "Q");
        double logQ = std::max(std::log(std::max(Q, 1.0)), 1e-300);
        double t1 = d * std::log(std::max(k.C, 1e-300)) + std::log(std::max(H, 1.0)) +
                    d * log_pow(d * logQ * log_plus(H), 1.0);
        double t2 = std::log(std::max(H, 1.0)) + k.c * d * d * log_pow(logQ, 1.0);
        lb = log_sum_exp(t1, t2);
    } else if (name == "simple-root-prime") {
        double d = get(inputs, "d"), H = get(inputs, "H");
        lb = std::log(std::max(H, 1.0)) + k.exponent_scale * d * d * log_pow(d * log_plus(H), 1.0);
    } else {
        throw MissingInput("unknown bound name: " + name);
    }

    rep.log_bound = static_cast<double>(lb);
    rep.overflowed = !std::isfinite(rep.log_bound);
    if (empirical) {
        rep.log_empirical = std::log(*empirical);
        if (!rep.overflowed) rep.margin = std::exp(*rep.log_empirical - rep.log_bound);
    }
    return rep;
}

SharpnessPrimesReport sharpness_primes(unsigned n, unsigned R) {
    if (n < 1 || R < 1) throw PreconditionViolated("sharpness_primes needs n, R >= 1");
    const std::size_t need = static_cast<std::size_t>(n) * R + 8;
    std::vector<u64> primes;
    u64 limit = 128;
    while (primes.size() < need) {
        primes.clear();
        for_each_prime(limit, [&](u64 p) {
            primes.push_back(p);
            return primes.size() < need;
        });
        limit *= 4;
    }

    SharpnessPrimesReport rep;
    rep.n = n;
    rep.R = R;
    // beta_i uses the primes p_{nr+i}, r = 0..R-1: disjoint blocks that
    // together cover exactly p_1 .. p_{nR}.
    mpz_class used_product = 1;
    for (unsigned i = 1; i <= n; ++i) {
        mpz_class b = 1;
        for (unsigned r = 0; r < R; ++r) b *= mpz_class(static_cast<unsigned long>(primes[n * r + i - 1]));
        rep.beta.push_back(b);
        used_product *= b;
        rep.sum_heights += std::log(b.get_d());
    }
    rep.p_nR = static_cast<unsigned long>(primes[static_cast<std::size_t>(n) * R - 1]);
    for (u64 p : primes) {
        if (!mpz_divisible_ui_p(used_product.get_mpz_t(), static_cast<unsigned long>(p))) {
            rep.least_good_prime = static_cast<unsigned long>(p);
            break;
        }
    }
    if (rep.least_good_prime == 0) throw InternalAssertionFailed("prime pool exhausted in sharpness_primes");
    rep.exceeds_p_nR = rep.least_good_prime > rep.p_nR;
    rep.ratio = rep.least_good_prime.get_d() / rep.sum_heights;
    return rep;
}

SharpnessQuadraticReport sharpness_quadratic(long k, long t, unsigned samples, unsigned long seed) {
    if (t < 1 || k <= t) throw PreconditionViolated("need k > t >= 1");
    if (!is_prime(static_cast<u64>(k + t)) || !is_prime(static_cast<u64>(k - t))) throw NotPrimePair();

    // beta is a root of x^2 - 2kx + t^2; its conjugates are k +- sqrt((k+t)(k-t)).
    IntPoly f({t * t, -2 * k, 1});
    auto field = std::make_shared<const NumberField>(f);
    FieldElement beta = FieldElement::generator(field);

    SharpnessQuadraticReport rep;
    rep.k = k;
    rep.t = t;
    rep.samples = samples;
    rep.threshold = static_cast<double>(k) / 3.0;
    rep.asserted = (k >= 15);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num_dist(-9, 9);
    std::uniform_int_distribution<long> den_dist(1, 9);
    bool first = true;
    bool all_above = true;
    for (unsigned s = 0; s < samples; ++s) {
        mpq_class a(num_dist(rng), den_dist(rng));
        a.canonicalize();
        long bn = 0;
        while (bn == 0) bn = num_dist(rng);
        mpq_class b(bn, den_dist(rng));
        b.canonicalize();
        FieldElement alpha = FieldElement::rational(field, a) + beta * b;
        IntPoly mp = min_poly_of_element(alpha);
        mpz_class H = height(mp);
        if (first || H < rep.min_height) rep.min_height = H;
        first = false;
        if (3 * H <= k) all_above = false; // exact check of H > k/3
    }
    rep.all_above = all_above;
    if (rep.asserted && !all_above)
        throw InequalityViolated("quadratic sharpness height fell to " + rep.min_height.get_str() +
                                 " at k = " + std::to_string(k));
    return rep;
}

} // namespace pembed
