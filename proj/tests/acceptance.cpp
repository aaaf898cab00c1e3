// Acceptance harness: every criterion prints one PASS/FAIL line and the
// binary exits nonzero if any fail. Oracles here are written directly
// against definitions (modular scans, direct products, trial division)
// rather than through the library paths they validate.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pembed/bounds.hpp"
#include "pembed/error.hpp"
#include "pembed/heights.hpp"
#include "pembed/modular.hpp"
#include "pembed/numfield.hpp"
#include "pembed/padic.hpp"
#include "pembed/verify.hpp"

using namespace pembed;

namespace {

int g_failures = 0;

template <typename Fn>
void criterion(const std::string& name, double time_limit_s, Fn&& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > time_limit_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("time limit exceeded");
    }
    std::printf("%s %-34s (%.2fs / limit %.0fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs, time_limit_s,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

// --- small independent helpers (oracle side) -----------------------------

bool oracle_is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

unsigned long mod_eval(const IntPoly& f, unsigned long a, unsigned long p) {
    unsigned long acc = 0;
    for (int i = f.degree(); i >= 0; --i) {
        mpz_class c = f.coeff(i) % static_cast<long>(p);
        if (c < 0) c += static_cast<long>(p);
        acc = (acc * a + c.get_ui()) % p;
    }
    return acc;
}

// First prime admitted by the embedding conditions, computed by raw scans:
// skip p dividing `avoid`, require a residue a with f(a)=0, f'(a)!=0 mod p
// and every numerator polynomial nonzero at a mod p.
unsigned long oracle_embedding_prime(const IntPoly& f, const mpz_class& avoid,
                                     const std::vector<IntPoly>& numerators) {
    IntPoly fp = derivative(f);
    for (unsigned long p = 2; p < 100000; ++p) {
        if (!oracle_is_prime(p)) continue;
        if (mpz_divisible_ui_p(avoid.get_mpz_t(), p)) continue;
        for (unsigned long a = 0; a < p; ++a) {
            if (mod_eval(f, a, p) != 0) continue;
            if (mod_eval(fp, a, p) == 0) continue;
            bool all_units = true;
            for (const IntPoly& num : numerators)
                if (mod_eval(num, a, p) == 0) all_units = false;
            if (all_units) return p;
        }
    }
    return 0;
}

const double kEps = 1e-6;

} // namespace

// --- criteria -------------------------------------------------------------

static void run_all() {
    criterion("constructive-prime-case-bounds", 30, [](std::string& detail) {
        std::uint64_t state = 1001;
        for (int s = 0; s < 100; ++s) {
            int d = 2 + static_cast<int>(state % 3);
            IntPoly f = random_irreducible_poly(state, d, 100);
            auto g = generic_prime(f);
            unsigned long p = static_cast<unsigned long>(g.witness.p);
            if (!oracle_is_prime(p) || mod_eval(f, g.witness.a % p, p) != 0 ||
                mod_eval(derivative(f), g.witness.a % p, p) == 0) {
                detail = "bad witness for " + f.to_string();
                return false;
            }
            // Recompute the case bound from first principles.
            mpz_class H = height(f), M = g.radical_M, bound;
            if (g.case_tag == 1) {
                bound = H;
            } else {
                mpz_class base = (g.case_tag == 2) ? mpz_class(d * M) : mpz_class(d * H * M);
                mpz_class pw;
                mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(d));
                bound = 2 * H * pw;
            }
            if (bound != g.bound || mpz_class(p) > bound) {
                detail = "case bound mismatch for " + f.to_string();
                return false;
            }
        }
        return true;
    });

    criterion("height-mahler-sandwich", 10, [](std::string& detail) {
        std::uint64_t state = 2002;
        for (int s = 0; s < 100; ++s) {
            int d = 1 + static_cast<int>(state % 8);
            IntPoly f = random_poly(state, d, 1000000);
            double H = height(f).get_d();
            double M = mahler_measure(f).value;
            if (!(H * std::pow(2.0, -d) <= M + kEps && M <= H * std::sqrt(d + 1.0) + kEps)) {
                detail = "sandwich failed for " + f.to_string();
                return false;
            }
        }
        return true;
    });

    criterion("primitive-element-certificate", 20, [](std::string& detail) {
        // Exact worked case: Q(sqrt2, sqrt3).
        auto K = std::make_shared<const NumberField>(IntPoly::parse("[1, 0, -10, 0, 1]"), true);
        FieldElement g = FieldElement::generator(K);
        FieldElement s2 = (g.pow(3) - g * mpq_class(9)) * mpq_class(1, 2);
        FieldElement s3 = g - s2;
        auto prim = primitive_from_generators({s2, s3});
        double bound = std::log(4.0) + 0.5 * std::log(2.0) + 0.5 * std::log(3.0);
        if (!(std::abs(prim.height - 0.5731) < 5e-4 && prim.height <= bound + kEps && std::abs(bound - 2.282) < 5e-3)) {
            detail = "worked biquadratic case failed";
            return false;
        }
        // 20 random biquadratic cases.
        const long sf[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23};
        std::uint64_t state = 3003;
        for (int s = 0; s < 20; ++s) {
            long a = sf[state % std::size(sf)];
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            long b = sf[state % std::size(sf)];
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            if (a == b) {
                --s;
                continue;
            }
            IntPoly f({(a - b) * (a - b), 0, -2 * (a + b), 0, 1});
            auto Kab = std::make_shared<const NumberField>(f, true);
            FieldElement gamma = FieldElement::generator(Kab);
            mpq_class inv2ba(1, 2 * (b - a));
            inv2ba.canonicalize();
            FieldElement sa = (gamma.pow(3) - gamma * mpq_class(3 * a + b)) * inv2ba;
            FieldElement sb = gamma - sa;
            auto pr = primitive_from_generators({sa, sb});
            // Independent bound: log(m floor(d/2)) + h(sqrt a) + h(sqrt b).
            double rhs = std::log(4.0) + 0.5 * std::log(static_cast<double>(a)) + 0.5 * std::log(static_cast<double>(b));
            if (pr.height > rhs + kEps) {
                detail = "certificate failed for a=" + std::to_string(a) + " b=" + std::to_string(b);
                return false;
            }
        }
        return true;
    });

    criterion("coefficient-height-bounds", 30, [](std::string& detail) {
        std::vector<FieldPtr> fields = {std::make_shared<const NumberField>(IntPoly::parse("[-2, 0, 1]")),
                                        std::make_shared<const NumberField>(IntPoly::parse("[-2, 0, 0, 1]")),
                                        std::make_shared<const NumberField>(cyclotomic(5)),
                                        std::make_shared<const NumberField>(IntPoly::parse("[-1, -1, 1]")),
                                        std::make_shared<const NumberField>(IntPoly::parse("[1, 1, 0, 1]"))};
        std::uint64_t state = 4004;
        int tested = 0;
        for (const auto& K : fields) {
            const int d = K->degree();
            const double h_alpha = K->generator_height();
            for (int s = 0; s < 12; ++s) {
                std::vector<mpq_class> coords(d);
                bool nz = false;
                for (int i = 0; i < d; ++i) {
                    long num = static_cast<long>(state % 2001) - 1000;
                    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                    long den = 1 + static_cast<long>(state % 1000);
                    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                    coords[i] = mpq_class(num, den);
                    coords[i].canonicalize();
                    if (num != 0) nz = true;
                }
                if (!nz) coords[0] = 1;
                FieldElement beta(K, coords);
                // Independent restatement of the uniform bound.
                double rhs = d * element_height(beta) + 3.0 * d * d * h_alpha + 2.0 * d * d;
                auto pc = power_basis_coords(beta);
                double b_abs = mpz_class(abs(pc.b)).get_d();
                double log_b = std::log(b_abs);
                if (log_b >= rhs + kEps) {
                    detail = "log b bound failed";
                    return false;
                }
                for (const auto& ai : pc.a) {
                    mpz_class num_abs = abs(ai);
                    double h_coeff = std::log(std::max(num_abs.get_d(), b_abs));
                    if (ai == 0) h_coeff = 0.0;
                    if (h_coeff >= rhs + kEps) {
                        detail = "coefficient height bound failed";
                        return false;
                    }
                }
                ++tested;
            }
        }
        if (tested < 50) {
            detail = "corpus too small";
            return false;
        }
        return true;
    });

    criterion("congruence-count-inequalities", 10, [](std::string& detail) {
        std::vector<IntPoly> polys = {IntPoly::parse("[1, 0, 1]"), IntPoly::parse("[-2, 0, 0, 1]"), cyclotomic(12)};
        std::uint64_t state = 5005;
        while (polys.size() < 13) {
            IntPoly f = primitive_part(random_poly(state, 2 + static_cast<int>(state % 3), 50));
            if (f.degree() >= 2) polys.push_back(f);
        }
        for (const IntPoly& f : polys) {
            const int d = f.degree();
            const long m = distinct_root_count(f);
            for (unsigned long ell : {2UL, 3UL, 5UL, 7UL}) {
                if (mpz_divisible_ui_p(content(f).get_mpz_t(), ell)) continue;
                unsigned long q = 1;
                for (unsigned k = 1; k <= 3; ++k) {
                    q *= ell;
                    // Oracle count by direct scan of one period.
                    long N = 0;
                    for (unsigned long j = 1; j <= q; ++j) {
                        mpz_class v = evaluate(f, mpz_class(j));
                        if (mpz_divisible_ui_p(v.get_mpz_t(), q)) ++N;
                    }
                    // (a) N(l^k) <= m l^{k-1}
                    mpz_class lk1;
                    mpz_ui_pow_ui(lk1.get_mpz_t(), ell, k - 1);
                    if (mpz_class(N) > m * lk1) {
                        detail = "count bound failed for " + f.to_string();
                        return false;
                    }
                    // (b) N^d <= 2^d l^{k(d-1)}
                    mpz_class lhs, rhs;
                    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(d));
                    mpz_ui_pow_ui(rhs.get_mpz_t(), ell, k * static_cast<unsigned long>(d - 1));
                    if (lhs > (mpz_class(1) << d) * rhs) {
                        detail = "power bound failed for " + f.to_string();
                        return false;
                    }
                    // (c) |q N(L,q) - L N(q)| < d q for L in {10, 100}
                    for (long L : {10L, 100L}) {
                        long NL = 0;
                        for (long j = 1; j <= L; ++j) {
                            mpz_class v = evaluate(f, mpz_class(j));
                            if (mpz_divisible_ui_p(v.get_mpz_t(), q)) ++NL;
                        }
                        long drift = static_cast<long>(q) * NL - L * N;
                        if (std::abs(drift) >= d * static_cast<long>(q)) {
                            detail = "equidistribution drift failed for " + f.to_string();
                            return false;
                        }
                    }
                    // Library agreement.
                    auto rep = verify_congruence_lemmas(f, ell, 3, {mpz_class(10), mpz_class(100)});
                    if (!rep.all_pass || rep.checks[k - 1].count != N) {
                        detail = "library disagrees with oracle for " + f.to_string();
                        return false;
                    }
                }
            }
        }
        return true;
    });

    criterion("value-product-lower-bound", 60, [](std::string& detail) {
        for (const IntPoly& f : {IntPoly::x(), IntPoly::parse("[1, 0, 1]"), IntPoly::parse("[-2, 0, 1]")}) {
            const unsigned long d = static_cast<unsigned long>(f.degree());
            const unsigned long L = 51 * (2 * d + 1);
            // Oracle: direct product, exact 18th-power comparison
            // 5^{dL} W^18 >= L^{dL}.
            mpz_class W = 1;
            for (unsigned long j = 1; j <= L; ++j) {
                mpz_class v = abs(evaluate(f, mpz_class(j)));
                if (v > 1) W *= v;
            }
            mpz_class lhs, w18, rhs;
            mpz_ui_pow_ui(lhs.get_mpz_t(), 5, d * L);
            mpz_pow_ui(w18.get_mpz_t(), W.get_mpz_t(), 18);
            lhs *= w18;
            mpz_ui_pow_ui(rhs.get_mpz_t(), L, d * L);
            if (lhs < rhs) {
                detail = "product bound failed for " + f.to_string();
                return false;
            }
            auto rep = verify_product_and_omega_lemmas(f, mpz_class(L), 1.0, 1.0);
            if (!rep.hypothesis_met || !rep.product_bound_ok) {
                detail = "library product check failed for " + f.to_string();
                return false;
            }
        }
        return true;
    });

    criterion("end-to-end-embeddings", 5, [](std::string& detail) {
        // Q(sqrt 2), S = {alpha}: inverse is alpha/2, numerators x and x.
        {
            IntPoly f = IntPoly::parse("[-2, 0, 1]");
            mpz_class avoid = abs(discriminant(f)) * 2; // disc * lc * prod b_i (b = 1, 2)
            unsigned long expected = oracle_embedding_prime(f, avoid, {IntPoly::x(), IntPoly::x()});
            auto K = std::make_shared<const NumberField>(f);
            auto emb = find_embedding({{"alpha", FieldElement::generator(K)}});
            if (expected != 7 || emb.p != expected) {
                detail = "sqrt2 oracle mismatch: oracle " + std::to_string(expected) + " lib " + std::to_string(emb.p);
                return false;
            }
            for (const auto& [name, v] : emb.element_valuations)
                if (v != 0) {
                    detail = "nonzero valuation";
                    return false;
                }
        }
        // Q(zeta_5), S = {1 + zeta}: (1+zeta)^-1 = (1 - x + x^2 - x^3 + x^4)/2.
        {
            IntPoly f = cyclotomic(5);
            mpz_class avoid = abs(discriminant(f)) * 2;
            unsigned long expected =
                oracle_embedding_prime(f, avoid, {IntPoly::parse("[1, 1]"), IntPoly::parse("[1, -1, 1, -1, 1]")});
            auto K = std::make_shared<const NumberField>(f);
            FieldElement b = FieldElement::one(K) + FieldElement::generator(K);
            auto emb = find_embedding({{"b", b}});
            if (expected != 11 || emb.p != expected) {
                detail = "zeta5 oracle mismatch: oracle " + std::to_string(expected) + " lib " + std::to_string(emb.p);
                return false;
            }
            for (const auto& [name, v] : emb.element_valuations)
                if (v != 0) {
                    detail = "nonzero valuation";
                    return false;
                }
        }
        return true;
    });

    criterion("embedding-soundness-random", 120, [](std::string& detail) {
        std::uint64_t state = 6006;
        for (int s = 0; s < 50; ++s) {
            int d = 2 + static_cast<int>(state % 3);
            IntPoly fpoly = random_irreducible_poly(state, d, 50);
            auto K = std::make_shared<const NumberField>(fpoly);
            int n = 1 + static_cast<int>(state % 3);
            std::vector<std::pair<std::string, FieldElement>> els;
            for (int i = 0; i < n; ++i) {
                std::vector<mpq_class> coords(d);
                bool nz = false;
                for (int j = 0; j < d; ++j) {
                    long num = static_cast<long>(state % 2001) - 1000;
                    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                    long den = 1 + static_cast<long>(state % 1000);
                    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                    coords[j] = mpq_class(num, den);
                    coords[j].canonicalize();
                    if (num != 0) nz = true;
                }
                if (!nz) coords[0] = 1;
                els.emplace_back("e" + std::to_string(i), FieldElement(K, coords));
            }
            EmbeddingOptions opts;
            opts.p_max = 1000000;
            EmbeddingResult emb;
            try {
                emb = find_embedding(els, opts);
            } catch (const Error& e) {
                detail = std::string(e.what()) + " for " + fpoly.to_string();
                return false;
            }
            // Cross-check at doubled precision from a fresh lift.
            auto eta2 = hensel_lift(fpoly, emb.p, emb.eta.digits()[0], 2 * emb.eta.k);
            for (const auto& [name, beta] : els) {
                for (const FieldElement& e : {beta, beta.inverse()}) {
                    auto sigma = embed_element(e, eta2);
                    if (!sigma.valuation_known || sigma.valuation != 0) {
                        detail = "doubled-precision valuation nonzero for " + fpoly.to_string();
                        return false;
                    }
                }
            }
            for (const auto& [name, v] : emb.element_valuations)
                if (v != 0) {
                    detail = "reported valuation nonzero";
                    return false;
                }
        }
        return true;
    });

    criterion("cyclotomic-correction-factors", 30, [](std::string& detail) {
        // Oracle delta by trial-division factoring.
        for (unsigned long m = 2; m <= 10000; ++m) {
            unsigned long rest = m, ell = 0, lpow = 1;
            unsigned long mm = m;
            for (unsigned long p = 2; p * p <= mm; ++p) {
                while (mm % p == 0) {
                    mm /= p;
                    ell = p;
                }
            }
            if (mm > 1) ell = mm;
            lpow = 1;
            rest = m;
            while (rest % ell == 0) {
                rest /= ell;
                lpow *= ell;
            }
            unsigned long expected = 1;
            if (rest == 1 || ell % rest == 1) {
                // phi(rest) by trial division
                unsigned long phi = rest, r = rest;
                for (unsigned long p = 2; p * p <= r; ++p) {
                    if (r % p == 0) {
                        phi -= phi / p;
                        while (r % p == 0) r /= p;
                    }
                }
                if (r > 1) phi -= phi / r;
                expected = phi;
            }
            if (delta(mpz_class(m)) != expected) {
                detail = "delta mismatch at m=" + std::to_string(m);
                return false;
            }
        }
        // Case-table root counts vs direct scans.
        for (unsigned long m = 1; m <= 60; ++m) {
            IntPoly phi_m = cyclotomic(m);
            for (unsigned long ell = 2; ell <= 100; ++ell) {
                if (!oracle_is_prime(ell)) continue;
                long brute = 0;
                for (unsigned long j = 1; j <= ell; ++j)
                    if (mod_eval(phi_m, j % ell, ell) == 0) ++brute;
                mpz_class table = cyclotomic_root_count(mpz_class(m), mpz_class(ell), 1);
                mpz_class lib = count_roots_N(phi_m, mpz_class(ell), mpz_class(ell));
                if (table != brute || lib != brute) {
                    detail = "root count mismatch at m=" + std::to_string(m) + " l=" + std::to_string(ell);
                    return false;
                }
            }
        }
        return true;
    });

    criterion("sharpness-constructions", 20, [](std::string& detail) {
        for (unsigned n = 1; n <= 200; ++n) {
            for (unsigned R = 1; n * R <= 200; ++R) {
                auto rep = sharpness_primes(n, R);
                if (!rep.exceeds_p_nR) {
                    detail = "p <= p_nR at n=" + std::to_string(n) + " R=" + std::to_string(R);
                    return false;
                }
            }
        }
        auto rq = sharpness_quadratic(15, 2, 200, 0);
        if (!rq.asserted || !rq.all_above || !(rq.min_height > 5)) {
            detail = "quadratic sharpness failed";
            return false;
        }
        return true;
    });
}

int main() {
    run_all();
    if (g_failures == 0) {
        std::printf("ALL ACCEPTANCE CRITERIA PASSED\n");
        return 0;
    }
    std::printf("%d ACCEPTANCE CRITERIA FAILED\n", g_failures);
    return 1;
}
