#include "pembed/padic.hpp"

#include <cmath>
#include <stdexcept>

#include "pembed/error.hpp"
#include "pembed/heights.hpp"

namespace pembed {

namespace {

mpz_class pow_u64(u64 p, unsigned k) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), k);
    return m;
}

// Modular inverse, throws DivisionByZero if gcd(a, m) > 1.
mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DivisionByZero();
    return r;
}

mpz_class eval_mod(const IntPoly& f, const mpz_class& x, const mpz_class& m) {
    mpz_class acc = 0;
    for (int i = f.degree(); i >= 0; --i) {
        acc = (acc * x + f.coeff(i)) % m;
    }
    if (acc < 0) acc += m;
    return acc;
}

} // namespace

mpz_class PAdicApprox::modulus() const { return pow_u64(p, k); }

std::vector<u64> PAdicApprox::digits() const {
    std::vector<u64> out;
    out.reserve(k);
    mpz_class r = residue;
    for (unsigned i = 0; i < k; ++i) {
        mpz_class q, d;
        mpz_fdiv_qr_ui(q.get_mpz_t(), d.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(p));
        out.push_back(d.get_ui());
        r = q;
    }
    return out;
}

PAdicApprox hensel_lift(const IntPoly& f, u64 p, u64 a, unsigned k) {
    if (f.is_zero()) throw ZeroPolynomial();
    IntPoly fp = derivative(f);
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class x(static_cast<unsigned long>(a % p));
    if (eval_mod(f, x, pz) != 0 || eval_mod(fp, x, pz) == 0)
        throw NotSimpleRoot();

    // Newton iteration with doubling precision: x mod p^m stays a root of f
    // and f'(x) stays a unit, so each step is well defined.
    unsigned m = 1;
    while (m < k) {
        unsigned next = std::min(2 * m, k);
        mpz_class mod = pow_u64(p, next);
        mpz_class fx = eval_mod(f, x, mod);
        mpz_class dfx = eval_mod(fp, x, mod);
        x = (x - fx * inv_mod(dfx, mod)) % mod;
        if (x < 0) x += mod;
        m = next;
    }
    PAdicApprox out;
    out.p = p;
    out.k = k;
    out.residue = x;
    if (x != 0) {
        mpz_class unit;
        out.valuation = static_cast<long>(mpz_remove(unit.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
        out.valuation_known = true;
    } else {
        out.valuation = 0;
        out.valuation_known = false;
    }
    return out;
}

long rational_valuation(const mpq_class& x, u64 p) {
    if (x == 0) throw ZeroValuation();
    mpz_class tmp;
    long vn = static_cast<long>(
        mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), mpz_class(static_cast<unsigned long>(p)).get_mpz_t()));
    long vd = static_cast<long>(
        mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), mpz_class(static_cast<unsigned long>(p)).get_mpz_t()));
    return vn - vd;
}

PAdicApprox embed_element(const FieldElement& beta, const PAdicApprox& eta, unsigned max_digits) {
    const u64 p = eta.p;
    if (beta.is_zero()) {
        PAdicApprox out;
        out.p = p;
        out.k = eta.k;
        out.residue = 0;
        out.valuation = 0;
        out.valuation_known = false;
        return out;
    }
    PowerBasisCoords pc = power_basis_coords(beta);
    mpz_class pz(static_cast<unsigned long>(p));
    long vb = 0;
    {
        mpz_class unit;
        vb = static_cast<long>(mpz_remove(unit.get_mpz_t(), pc.b.get_mpz_t(), pz.get_mpz_t()));
    }
    const IntPoly& f = beta.field()->defining_poly();
    u64 base_root = mpz_class(eta.residue % pz).get_ui();

    unsigned k = eta.k;
    PAdicApprox cur = eta;
    while (true) {
        mpz_class mod = pow_u64(p, k);
        // Horner over the a_j at eta's residue.
        mpz_class num = 0;
        for (std::size_t j = pc.a.size(); j-- > 0;) {
            num = (num * cur.residue + pc.a[j]) % mod;
        }
        if (num < 0) num += mod;
        if (num != 0) {
            mpz_class unit = num;
            long vn = static_cast<long>(mpz_remove(unit.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
            long val = vn - vb;
            // Denominator unit part.
            mpz_class bu;
            mpz_remove(bu.get_mpz_t(), pc.b.get_mpz_t(), pz.get_mpz_t());
            PAdicApprox out;
            out.p = p;
            out.k = k;
            out.valuation = val;
            out.valuation_known = true;
            if (val >= 0) {
                // Canonical residue of the element itself mod p^k.
                out.residue = (num * inv_mod(bu, mod)) % mod;
            } else {
                // Not a p-adic integer: store the unit part u, with
                // beta = u * p^{valuation}.
                out.residue = (unit * inv_mod(bu, mod)) % mod;
            }
            if (out.residue < 0) out.residue += mod;
            return out;
        }
        if (2 * k > max_digits) throw PrecisionExhausted();
        k *= 2;
        cur = hensel_lift(f, p, base_root, k);
    }
}

std::string to_string(SkipReason r) {
    switch (r) {
        case SkipReason::ConditionA: return "no-simple-root";
        case SkipReason::ConditionB: return "divides-discriminant";
        case SkipReason::ConditionC: return "divides-denominator";
        case SkipReason::LeadingCoefficient: return "divides-leading-coefficient";
    }
    return "unknown";
}

EmbeddingResult find_embedding(const std::vector<std::pair<std::string, FieldElement>>& elements,
                               const EmbeddingOptions& opts) {
    if (elements.empty()) throw MissingInput("need at least one element to embed");
    FieldPtr field = elements.front().second.field();
    for (const auto& [name, beta] : elements) {
        if (!(*beta.field() == *field)) throw FieldMismatch();
        if (beta.is_zero()) throw ZeroElement();
    }
    const IntPoly& f = field->defining_poly();
    const int d = f.degree();
    const std::size_t n = elements.size();

    // Extend with inverses so that v(sigma beta) >= 0 and v(sigma beta^-1) >= 0
    // jointly force both valuations to vanish.
    std::vector<std::pair<std::string, FieldElement>> full;
    full.reserve(2 * n);
    for (const auto& [name, beta] : elements) {
        full.emplace_back(name, beta);
        full.emplace_back(name + "^-1", beta.inverse());
    }

    // Q collects every prime that must be avoided outright.
    mpz_class disc_abs = abs(field->disc());
    mpz_class lc_abs = abs(f.leading());
    std::vector<mpz_class> denominators;
    denominators.reserve(full.size());
    for (const auto& [name, beta] : full) denominators.push_back(power_basis_coords(beta).b);

    EmbeddingResult result;
    {
        double h_alpha = field->generator_height();
        double sum_h = 0.0;
        for (const auto& [name, beta] : elements) sum_h += element_height(beta);
        result.sum_beta_heights = sum_h;
        double inner = d * static_cast<double>(n) * h_alpha + d * sum_h + d * static_cast<double>(n);
        if (inner < 2.0) inner = 2.0;
        result.log_bound = d * h_alpha + opts.bound_exponent_c * d * d * std::log(inner);
    }

    bool found = false;
    for_each_prime(opts.p_max, [&](u64 p) {
        mpz_class pz(static_cast<unsigned long>(p));
        if (mpz_divisible_p(lc_abs.get_mpz_t(), pz.get_mpz_t())) {
            result.skipped_primes.emplace_back(p, SkipReason::LeadingCoefficient);
            return true;
        }
        if (mpz_divisible_p(disc_abs.get_mpz_t(), pz.get_mpz_t())) {
            result.skipped_primes.emplace_back(p, SkipReason::ConditionB);
            return true;
        }
        for (const mpz_class& b : denominators) {
            if (mpz_divisible_p(b.get_mpz_t(), pz.get_mpz_t())) {
                result.skipped_primes.emplace_back(p, SkipReason::ConditionC);
                return true;
            }
        }
        auto witness = simple_root_mod_p(f, p, opts.seed);
        if (!witness) {
            result.skipped_primes.emplace_back(p, SkipReason::ConditionA);
            return true;
        }
        PAdicApprox eta = hensel_lift(f, p, witness->a, opts.precision);
        for (const auto& [name, beta] : full) {
            PAdicApprox sigma = embed_element(beta, eta);
            if (!sigma.valuation_known || sigma.valuation != 0)
                throw InternalAssertionFailed("embedded element is not a unit at an admissible prime");
            result.element_valuations[name] = sigma.valuation;
        }
        result.p = p;
        result.eta = eta;
        found = true;
        return false;
    });
    if (!found) throw SearchExhausted(opts.p_max);
    return result;
}

} // namespace pembed
