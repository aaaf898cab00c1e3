#include "pembed/verify.hpp"

#include <cmath>
#include <memory>

#include "pembed/bounds.hpp"
#include "pembed/error.hpp"
#include "pembed/heights.hpp"
#include "pembed/modular.hpp"
#include "pembed/numfield.hpp"
#include "pembed/padic.hpp"

namespace pembed {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long rand_range(std::uint64_t& state, long lo, long hi) {
    return lo + static_cast<long>(splitmix64(state) % static_cast<std::uint64_t>(hi - lo + 1));
}

struct Recorder {
    const std::string& fault_check;
    std::vector<CheckResult>& out;

    CheckResult* cur = nullptr;
    bool fault_pending = false;

    void begin(const std::string& name) {
        out.push_back(CheckResult{name, 0, 0, {}});
        cur = &out.back();
        fault_pending = (name == fault_check);
    }
    void record(bool ok, const std::string& msg) {
        ++cur->checks;
        if (fault_pending) {
            ok = !ok;
            fault_pending = false;
        }
        if (!ok) {
            ++cur->failures;
            if (cur->messages.size() < 10) cur->messages.push_back(msg);
        }
    }
};

FieldPtr make_field(const IntPoly& f, bool assert_irr = false) {
    return std::make_shared<const NumberField>(f, assert_irr);
}

FieldElement random_element(std::uint64_t& state, const FieldPtr& field, long coord_bound) {
    const int d = field->degree();
    std::vector<mpq_class> coords(d);
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
        long num = rand_range(state, -coord_bound, coord_bound);
        long den = rand_range(state, 1, coord_bound);
        coords[i] = mpq_class(num, den);
        coords[i].canonicalize();
        if (num != 0) nonzero = true;
    }
    if (!nonzero) coords[0] = 1;
    return FieldElement(field, std::move(coords));
}

} // namespace

IntPoly random_poly(std::uint64_t& state, int degree, unsigned long H) {
    std::vector<mpz_class> c(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i < degree; ++i) c[i] = rand_range(state, -static_cast<long>(H), static_cast<long>(H));
    long lead = 0;
    while (lead == 0) lead = rand_range(state, -static_cast<long>(H), static_cast<long>(H));
    c[degree] = lead;
    return IntPoly(std::move(c));
}

IntPoly random_irreducible_poly(std::uint64_t& state, int degree, unsigned long H) {
    while (true) {
        IntPoly f = primitive_part(random_poly(state, degree, H));
        if (f.degree() != degree) continue;
        if (f.leading() < 0) f = -f;
        if (check_irreducible(f) == Irreducibility::Proven) return f;
    }
}

std::vector<CheckResult> run_verification_suite(const SuiteOptions& opts) {
    const bool full = (opts.scope == SuiteScope::Full);
    std::uint64_t state = opts.seed * 0x9e3779b97f4a7c15ULL + 1;
    std::vector<CheckResult> results;
    Recorder rec{opts.fault_inject, results};

    // Mahler measure sandwiched between H 2^{-d} and H sqrt(d+1).
    rec.begin("mahler-sandwich");
    {
        const int samples = full ? 10000 : 300;
        for (int s = 0; s < samples; ++s) {
            int d = static_cast<int>(rand_range(state, 1, 8));
            IntPoly f = random_poly(state, d, 1000000);
            try {
                auto r = check_height_mahler_inequality(f);
                rec.record(r.pass, "sandwich failed for " + f.to_string());
            } catch (const Error& e) {
                rec.record(false, std::string(e.what()) + " for " + f.to_string());
            }
        }
    }

    // |disc(f)| < d^{2d} H^{2d-2}, exact integers.
    rec.begin("discriminant-bound");
    {
        const int samples = full ? 50000 : 300;
        for (int s = 0; s < samples; ++s) {
            int d = static_cast<int>(rand_range(state, 2, 8));
            IntPoly f = random_poly(state, d, 1000000);
            mpz_class lhs = abs(discriminant(f));
            mpz_class rhs, hp;
            mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(2 * d));
            mpz_class H = height(f);
            mpz_pow_ui(hp.get_mpz_t(), H.get_mpz_t(), static_cast<unsigned long>(2 * d - 2));
            rhs *= hp;
            rec.record(lhs < rhs, "discriminant bound failed for " + f.to_string());
        }
    }

    // Constructive simple-root prime stays below its case bound.
    rec.begin("generic-prime-case-bound");
    {
        const int samples = full ? 300 : 30;
        for (int s = 0; s < samples; ++s) {
            int d = static_cast<int>(rand_range(state, 2, 4));
            IntPoly f = random_irreducible_poly(state, d, 100);
            try {
                auto g = generic_prime(f);
                mpz_class p(static_cast<unsigned long>(g.witness.p));
                bool ok = g.witness.simple && p <= g.bound;
                rec.record(ok, "case bound failed for " + f.to_string());
            } catch (const Error& e) {
                rec.record(false, std::string(e.what()) + " for " + f.to_string());
            }
        }
    }

    // h(alpha') <= log(m floor(d/2)) + sum h(alpha_i) for found primitive elements.
    rec.begin("primitive-height-certificate");
    {
        const long squarefree[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23};
        const int n_sf = static_cast<int>(std::size(squarefree));
        const int samples = full ? 20 : 5;
        for (int s = 0; s < samples; ++s) {
            long a = squarefree[rand_range(state, 0, n_sf - 1)];
            long b = a;
            while (b == a) b = squarefree[rand_range(state, 0, n_sf - 1)];
            // Q(sqrt a, sqrt b) with generator gamma = sqrt a + sqrt b.
            IntPoly f({(a - b) * (a - b), 0, -2 * (a + b), 0, 1});
            FieldPtr K = make_field(f, /*assert_irr=*/true);
            FieldElement gamma = FieldElement::generator(K);
            mpq_class inv2ba(1, 2 * (b - a));
            inv2ba.canonicalize();
            FieldElement sqrt_a = (gamma.pow(3) - gamma * mpq_class(3 * a + b)) * inv2ba;
            mpq_class inv2ab(1, 2 * (a - b));
            inv2ab.canonicalize();
            FieldElement sqrt_b = (gamma.pow(3) - gamma * mpq_class(a + 3 * b)) * inv2ab;
            try {
                auto pr = primitive_from_generators({sqrt_a, sqrt_b});
                bool ok = pr.min_poly.degree() == 4 && pr.height <= pr.height_bound + kHeightSlack;
                rec.record(ok, "certificate failed for a=" + std::to_string(a) + " b=" + std::to_string(b));
            } catch (const Error& e) {
                rec.record(false, std::string(e.what()) + " for a=" + std::to_string(a));
            }
        }
    }

    // Power-basis coefficient heights and log b against the uniform bound.
    rec.begin("coefficient-height-bound");
    {
        std::vector<FieldPtr> fields = {make_field(IntPoly({-2, 0, 1})), make_field(IntPoly({-2, 0, 0, 1})),
                                        make_field(cyclotomic(5)), make_field(IntPoly({-1, -1, 1})),
                                        make_field(IntPoly({1, 1, 0, 1}))};
        const int per_field = full ? 60 : 12;
        for (const auto& K : fields) {
            for (int s = 0; s < per_field; ++s) {
                FieldElement beta = random_element(state, K, 1000);
                try {
                    auto cert = coefficient_height_certificate(beta);
                    rec.record(cert.pass, "coefficient bound failed in " + K->defining_poly().to_string());
                } catch (const Error& e) {
                    rec.record(false, std::string(e.what()) + " in " + K->defining_poly().to_string());
                }
            }
        }
    }

    // Root-count inequalities modulo prime powers, exact.
    rec.begin("congruence-counts");
    {
        std::vector<IntPoly> polys = {IntPoly({1, 0, 1}), IntPoly({-2, 0, 0, 1}), cyclotomic(12)};
        const int extra = full ? 20 : 3;
        for (int s = 0; s < extra; ++s) {
            int d = static_cast<int>(rand_range(state, 2, 4));
            polys.push_back(primitive_part(random_poly(state, d, 50)));
        }
        const std::vector<mpz_class> Ls = {10, 100};
        for (const IntPoly& f : polys) {
            for (u64 ell : {2, 3, 5, 7}) {
                try {
                    auto r = verify_congruence_lemmas(f, ell, 3, Ls);
                    rec.record(r.all_pass, "congruence count failed for " + f.to_string() + " at l=" + std::to_string(ell));
                } catch (const PreconditionViolated&) {
                    // l divides the content; the hypotheses do not apply.
                } catch (const Error& e) {
                    rec.record(false, std::string(e.what()) + " for " + f.to_string());
                }
            }
        }
    }

    // W(L) >= (L/5)^{dL/18} for L past the explicit threshold.
    rec.begin("product-lower-bound");
    {
        std::vector<IntPoly> polys = {IntPoly({0, 1})};
        if (full) {
            polys.push_back(IntPoly({1, 0, 1}));
            polys.push_back(IntPoly({-2, 0, 1}));
        }
        for (const IntPoly& f : polys) {
            long L = 51 * (2 * static_cast<long>(f.degree()) + 1);
            try {
                auto r = verify_product_and_omega_lemmas(f, mpz_class(L), 1.0, 1.0);
                rec.record(r.hypothesis_met && r.product_bound_ok, "product bound failed for " + f.to_string());
            } catch (const Error& e) {
                rec.record(false, std::string(e.what()) + " for " + f.to_string());
            }
        }
    }

    // Random embedding instances: every returned valuation is zero.
    rec.begin("embedding-unit-valuations");
    {
        std::vector<FieldPtr> fields = {make_field(IntPoly({-2, 0, 1})), make_field(IntPoly({-2, 0, 0, 1})),
                                        make_field(cyclotomic(5)), make_field(IntPoly({-1, -1, 1}))};
        const int samples = full ? 20 : 3;
        for (int s = 0; s < samples; ++s) {
            const auto& K = fields[static_cast<std::size_t>(rand_range(state, 0, static_cast<long>(fields.size()) - 1))];
            int n = static_cast<int>(rand_range(state, 1, 3));
            std::vector<std::pair<std::string, FieldElement>> els;
            for (int i = 0; i < n; ++i) els.emplace_back("e" + std::to_string(i), random_element(state, K, 1000));
            EmbeddingOptions eo;
            eo.p_max = 1000000;
            eo.seed = opts.seed;
            try {
                auto emb = find_embedding(els, eo);
                bool ok = emb.p > 0;
                for (const auto& [name, v] : emb.element_valuations) ok = ok && (v == 0);
                rec.record(ok, "nonzero valuation in " + K->defining_poly().to_string());
            } catch (const Error& e) {
                rec.record(false, std::string(e.what()) + " in " + K->defining_poly().to_string());
            }
        }
    }

    return results;
}

bool suite_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (r.failures > 0) return false;
    return true;
}

} // namespace pembed
