#include "pembed/modular.hpp"

#include <algorithm>
#include <cmath>

#include "pembed/error.hpp"
#include "pembed/fp_poly.hpp"
#include "pembed/heights.hpp"

namespace pembed {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic for all 64-bit inputs with these bases.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = fp::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = fp::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(const mpz_class& n) {
    if (n.fits_ulong_p()) return is_prime(static_cast<u64>(n.get_ui()));
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

void for_each_prime(u64 limit, const std::function<bool(u64)>& fn) {
    if (limit < 2) return;
    const u64 kSegment = 1u << 20;
    // base primes up to sqrt(limit)
    u64 sq = static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 2;
    std::vector<char> base(sq + 1, 1);
    std::vector<u64> base_primes;
    for (u64 i = 2; i <= sq; ++i)
        if (base[i]) {
            base_primes.push_back(i);
            for (u64 j = i * i; j <= sq; j += i) base[j] = 0;
        }
    for (u64 lo = 2; lo <= limit; lo += kSegment) {
        u64 hi = std::min(limit, lo + kSegment - 1);
        std::vector<char> seg(hi - lo + 1, 1);
        for (u64 p : base_primes) {
            if (p * p > hi) break;
            u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (u64 j = start; j <= hi; j += p) seg[j - lo] = 0;
        }
        for (u64 i = lo; i <= hi; ++i)
            if (seg[i - lo] && i >= 2)
                if (!fn(i)) return;
    }
}

namespace {

// Pollard-Brent rho; returns a nontrivial factor of odd composite n,
// or 0 when the round budget runs out.
mpz_class pollard_brent(const mpz_class& n, unsigned long c, unsigned long max_steps) {
    mpz_class y = 2, g = 1, q = 1, x, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                mpz_class diff = x - y;
                q = (q * abs(diff)) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
        }
        r <<= 1;
        if (r > max_steps) return 0;
    }
    if (g == n) {
        // backtrack
        g = 1;
        while (g == 1) {
            ys = (ys * ys + c) % n;
            mpz_class diff = x - ys;
            mpz_class ad = abs(diff);
            mpz_gcd(g.get_mpz_t(), ad.get_mpz_t(), n.get_mpz_t());
        }
        if (g == n) return 0;
    }
    return g;
}

void factor_rec(const mpz_class& n, unsigned max_rho_rounds, std::map<mpz_class, unsigned long>& primes,
                std::vector<mpz_class>& uncertified) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++primes[n];
        return;
    }
    for (unsigned round = 0; round < max_rho_rounds; ++round) {
        mpz_class g = pollard_brent(n, round + 1, 1UL << 22);
        if (g != 0 && g != n) {
            factor_rec(g, max_rho_rounds, primes, uncertified);
            factor_rec(n / g, max_rho_rounds, primes, uncertified);
            return;
        }
    }
    uncertified.push_back(n);
}

} // namespace

std::vector<Factor> factorize(const mpz_class& n, unsigned max_rho_rounds) {
    mpz_class v = abs(n);
    if (v == 0) throw PreconditionViolated("cannot factor 0");
    std::map<mpz_class, unsigned long> primes;
    std::vector<mpz_class> uncert;
    // trial division to 10^6
    for (u64 p = 2; p <= 1000000 && v > 1; p = (p == 2 ? 3 : p + 2)) {
        if (p * p > v) break;
        while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
            ++primes[mpz_class(static_cast<unsigned long>(p))];
            v /= static_cast<unsigned long>(p);
        }
    }
    if (v > 1) factor_rec(v, max_rho_rounds, primes, uncert);
    std::vector<Factor> out;
    for (const auto& [p, e] : primes) out.push_back({p, static_cast<unsigned>(e), true});
    std::map<mpz_class, unsigned long> uc;
    for (const auto& c : uncert) ++uc[c];
    for (const auto& [c, e] : uc) out.push_back({c, static_cast<unsigned>(e), false});
    return out;
}

mpz_class radical(const mpz_class& n, unsigned max_rho_rounds) {
    mpz_class r = 1;
    for (const auto& f : factorize(n, max_rho_rounds)) r *= f.prime;
    return r;
}

std::vector<u64> roots_mod_p(const IntPoly& f, u64 p, u64 seed) {
    fp::Poly fb = fp::reduce(f, p);
    if (fb.empty()) throw ZeroReduction{};
    std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ULL));
    return fp::roots(fb, p, rng);
}

std::optional<SimpleRootWitness> simple_root_mod_p(const IntPoly& f, u64 p, u64 seed) {
    auto rts = roots_mod_p(f, p, seed);
    fp::Poly df = fp::reduce(derivative(f), p);
    for (u64 a : rts)
        if (!df.empty() && fp::eval(df, a, p) != 0) return SimpleRootWitness{p, a, true};
    return std::nullopt;
}

SimpleRootWitness smallest_simple_root_prime(const IntPoly& f, const mpz_class& Q, u64 p_max, u64 seed) {
    if (Q < 1) throw PreconditionViolated("Q must be >= 1");
    std::optional<SimpleRootWitness> found;
    for_each_prime(p_max, [&](u64 p) {
        if (mpz_divisible_ui_p(Q.get_mpz_t(), static_cast<unsigned long>(p))) return true;
        fp::Poly fb = fp::reduce(f, p);
        if (fb.empty()) return true; // content divisible by p
        auto w = simple_root_mod_p(f, p, seed);
        if (w) {
            found = w;
            return false;
        }
        return true;
    });
    if (!found) throw SearchExhausted(p_max);
    return *found;
}

namespace {

// Smallest certified prime factor, or -1 if the number cannot be certified.
mpz_class smallest_prime_factor(const mpz_class& n, unsigned max_rho_rounds = 8) {
    mpz_class v = abs(n);
    if (v <= 1) return -1;
    // The smallest factor is found first by trial division; return immediately.
    if (mpz_divisible_ui_p(v.get_mpz_t(), 2)) return 2;
    for (u64 p = 3; p <= 1000000; p += 2) {
        if (mpz_cmp_ui(v.get_mpz_t(), static_cast<unsigned long>(p * p)) < 0) return v; // v is prime
        if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p)))
            return mpz_class(static_cast<unsigned long>(p));
    }
    if (is_prime(v)) return v;
    // No factor below 10^6: split the remainder and take the least certified prime.
    std::map<mpz_class, unsigned long> primes;
    std::vector<mpz_class> uncert;
    factor_rec(v, max_rho_rounds, primes, uncert);
    return primes.empty() ? mpz_class(-1) : primes.begin()->first;
}

} // namespace

GenericPrimeResult generic_prime(const IntPoly& f) {
    const int d = f.degree();
    if (d < 2) throw DegreeTooSmall{};
    const mpz_class H = height(f);
    const mpz_class a0 = f.coeff(0);
    const mpz_class disc = discriminant(f);
    if (disc == 0) throw PreconditionViolated("discriminant is zero (f not squarefree)");
    const mpz_class M = radical(disc);

    GenericPrimeResult res;
    res.radical_M = M;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a0.get_mpz_t(), M.get_mpz_t());

    mpz_class chosen_p = -1;
    mpz_class root_point = 0;
    if (g == 1 && abs(a0) > 1) {
        res.case_tag = 1;
        res.bound = H;
        chosen_p = smallest_prime_factor(a0);
        root_point = 0;
    } else if (abs(a0) == 1) {
        res.case_tag = 2;
        mpz_class dM;
        mpz_pow_ui(dM.get_mpz_t(), mpz_class(d * M).get_mpz_t(), static_cast<unsigned long>(d));
        res.bound = 2 * H * dM;
        for (int i = 0; i <= d && chosen_p < 0; ++i) {
            for (int sign : {+1, -1}) {
                mpz_class x = sign * i * M;
                mpz_class v = evaluate(f, x);
                if (abs(v) == 1 || v == 0) continue;
                mpz_class p = smallest_prime_factor(v);
                if (p > 0) {
                    chosen_p = p;
                    root_point = x;
                    break;
                }
            }
        }
    } else {
        res.case_tag = 3;
        mpz_class dHM;
        mpz_pow_ui(dHM.get_mpz_t(), mpz_class(d * H * M).get_mpz_t(), static_cast<unsigned long>(d));
        res.bound = 2 * H * dHM;
        for (int i = 0; i <= d && chosen_p < 0; ++i) {
            for (int sign : {+1, -1}) {
                mpz_class x = sign * i * a0 * M;
                mpz_class fv = evaluate(f, x);
                mpz_class v = fv / a0; // exact: f(i a0 M) = a0 (1 + M t)
                if (v * a0 != fv) throw InternalAssertionFailed("case-3 value not divisible by a0");
                if (abs(v) == 1 || v == 0) continue;
                mpz_class p = smallest_prime_factor(v);
                if (p > 0) {
                    chosen_p = p;
                    root_point = x;
                    break;
                }
            }
        }
    }
    if (chosen_p < 1) throw InternalAssertionFailed("generic prime construction found no candidate");
    if (chosen_p > res.bound) throw InternalAssertionFailed("generic prime exceeds its case bound");
    if (!chosen_p.fits_ulong_p()) throw InternalAssertionFailed("generic prime does not fit a machine word");

    const u64 p = chosen_p.get_ui();
    mpz_class a_mod = root_point % chosen_p;
    if (a_mod < 0) a_mod += chosen_p;
    const u64 a = a_mod.get_ui();
    // Verify the witness: f(a) = 0 and f'(a) != 0 mod p.
    fp::Poly fb = fp::reduce(f, p);
    fp::Poly db = fp::reduce(derivative(f), p);
    if (fb.empty() || fp::eval(fb, a, p) != 0) throw InternalAssertionFailed("constructed point is not a root mod p");
    if (db.empty() || fp::eval(db, a, p) == 0) throw InternalAssertionFailed("constructed root is not simple mod p");
    res.witness = SimpleRootWitness{p, a, true};
    return res;
}

mpz_class count_roots_N(const IntPoly& f, const mpz_class& L, const mpz_class& q) {
    if (q < 1 || L < 1) throw PreconditionViolated("L and q must be >= 1");
    if (!q.fits_ulong_p() || q > 100000000) throw PreconditionViolated("modulus too large for an exact scan");
    const unsigned long qu = q.get_ui();
    // f(j) mod q is periodic in j with period q.
    std::vector<mpz_class> coeffs_mod;
    for (const auto& c : f.coeffs()) {
        mpz_class r = c % q;
        if (r < 0) r += q;
        coeffs_mod.push_back(r);
    }
    auto eval_mod = [&](unsigned long j) {
        mpz_class r = 0;
        for (auto it = coeffs_mod.rbegin(); it != coeffs_mod.rend(); ++it) r = (r * j + *it) % q;
        return r;
    };
    if (L <= q) {
        unsigned long Lu = L.get_ui();
        mpz_class count = 0;
        for (unsigned long j = 1; j <= Lu; ++j)
            if (eval_mod(j) == 0) ++count;
        return count;
    }
    mpz_class full = L / q, rem = L % q;
    unsigned long remu = rem.get_ui();
    mpz_class per_period = 0, in_tail = 0;
    for (unsigned long j = 1; j <= qu; ++j)
        if (eval_mod(j) == 0) {
            ++per_period;
            if (j <= remu) ++in_tail;
        }
    return full * per_period + in_tail;
}

CongruenceLemmaReport verify_congruence_lemmas(const IntPoly& f, u64 ell, unsigned k_max,
                                               const std::vector<mpz_class>& L_list) {
    if (!is_prime(ell)) throw PreconditionViolated("ell must be prime");
    if (mpz_divisible_ui_p(content(f).get_mpz_t(), static_cast<unsigned long>(ell)))
        throw PreconditionViolated("content of f shares a factor with ell");
    const int d = f.degree();
    CongruenceLemmaReport rep;
    rep.distinct_roots = distinct_root_count(f);
    for (unsigned k = 1; k <= k_max; ++k) {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(ell), k);
        CongruenceLemmaCheck chk;
        chk.k = k;
        chk.count = count_roots_N(f, q, q);
        // N(l^k) <= m l^{k-1}
        mpz_class lag;
        mpz_ui_pow_ui(lag.get_mpz_t(), static_cast<unsigned long>(ell), k - 1);
        chk.lagrange_ok = chk.count <= rep.distinct_roots * lag;
        // N(l^k) <= 2 l^{k(1-1/d)}  <=>  N^d <= 2^d l^{k(d-1)}
        mpz_class lhs, rhs, lp;
        mpz_pow_ui(lhs.get_mpz_t(), chk.count.get_mpz_t(), static_cast<unsigned long>(d));
        mpz_ui_pow_ui(lp.get_mpz_t(), static_cast<unsigned long>(ell), k * static_cast<unsigned>(d - 1));
        mpz_ui_pow_ui(rhs.get_mpz_t(), 2, static_cast<unsigned long>(d));
        rhs *= lp;
        chk.konyagin_power_ok = lhs <= rhs;
        // |N(L, l^k) - (L / l^k) N(l^k)| < d  <=>  |l^k N(L,l^k) - L N(l^k)| < d l^k
        for (const auto& L : L_list) {
            mpz_class nl = count_roots_N(f, L, q);
            mpz_class diff = q * nl - L * chk.count;
            chk.drift_ok.push_back(abs(diff) < d * q);
        }
        bool ok = chk.lagrange_ok && chk.konyagin_power_ok &&
                  std::all_of(chk.drift_ok.begin(), chk.drift_ok.end(), [](bool b) { return b; });
        rep.all_pass = rep.all_pass && ok;
        rep.checks.push_back(std::move(chk));
    }
    return rep;
}

DivisorProfile divisor_profile(const IntPoly& f, const mpz_class& L, unsigned max_rho_rounds) {
    if (L < 1) throw PreconditionViolated("L must be >= 1");
    if (f.is_zero()) throw ZeroPolynomial{};
    if (!L.fits_ulong_p() || L > 10000000) throw PreconditionViolated("L too large for a full profile");
    DivisorProfile prof;
    prof.f = f;
    prof.L = L;
    prof.W = 1;
    const unsigned long Lu = L.get_ui();
    for (unsigned long j = 1; j <= Lu; ++j) {
        mpz_class v = abs(evaluate(f, mpz_class(j)));
        if (v <= 1) continue;
        prof.W *= v;
        for (const auto& fac : factorize(v, max_rho_rounds)) {
            if (!fac.is_certified) {
                prof.uncertified.push_back(fac.prime);
                continue;
            }
            prof.exponents[fac.prime] += fac.exponent;
            auto& kp = prof.max_power[fac.prime];
            kp = std::max(kp, static_cast<unsigned long>(fac.exponent));
        }
    }
    std::sort(prof.uncertified.begin(), prof.uncertified.end());
    prof.uncertified.erase(std::unique(prof.uncertified.begin(), prof.uncertified.end()), prof.uncertified.end());
    prof.omega = prof.exponents.size() + prof.uncertified.size();

    // Cross-check r_l(L) = sum_k N(L, l^k) on a sample of profiled primes.
    unsigned checked = 0;
    for (const auto& [p, r] : prof.exponents) {
        if (checked >= 5) break;
        if (!p.fits_ulong_p() || p > 1000000) continue;
        mpz_class sum = 0;
        mpz_class q = p;
        for (unsigned long k = 1; k <= prof.max_power.at(p); ++k) {
            sum += count_roots_N(f, L, q);
            q *= p;
        }
        // Only exact when no f(j) in range is zero (zero values contribute no factors).
        bool has_zero = false;
        for (unsigned long j = 1; j <= Lu && !has_zero; ++j) has_zero = evaluate(f, mpz_class(j)) == 0;
        if (!has_zero && sum != static_cast<long>(r))
            throw InternalAssertionFailed("divisor profile exponent cross-check for prime " + p.get_str());
        ++checked;
    }
    return prof;
}

ProductOmegaReport verify_product_and_omega_lemmas(const IntPoly& f, const mpz_class& L, double c1, double c2,
                                                   unsigned max_rho_rounds) {
    const int d = f.degree();
    if (d < 1) throw DegreeTooSmall{};
    if (abs(f.leading()) < 1) throw PreconditionViolated("leading coefficient must have modulus >= 1");
    ProductOmegaReport rep;
    DivisorProfile prof = divisor_profile(f, L, max_rho_rounds);
    rep.omega = prof.omega;
    rep.hypothesis_met = L >= 51 * (2 * d + 1);
    if (rep.hypothesis_met) {
        // W(L) >= (L/5)^{dL/18}  <=>  5^{dL} W^{18} >= L^{dL}
        unsigned long dL = static_cast<unsigned long>(d) * L.get_ui();
        mpz_class lhs, rhs, w18;
        mpz_ui_pow_ui(lhs.get_mpz_t(), 5, dL);
        mpz_pow_ui(w18.get_mpz_t(), prof.W.get_mpz_t(), 18);
        lhs *= w18;
        mpz_pow_ui(rhs.get_mpz_t(), L.get_mpz_t(), dL);
        rep.product_bound_ok = lhs >= rhs;
        if (!rep.product_bound_ok)
            throw InequalityViolated("W(L) >= (L/5)^{dL/18} for " + f.to_string());
    }
    const double Ld = L.get_d();
    const double logH = std::max(1.0, std::log(height(f).get_d()));
    rep.omega_bound = std::min(c1 * Ld / logH, std::pow(Ld, c2 / d));
    rep.omega_margin = rep.omega_bound > 0 ? static_cast<double>(rep.omega) / rep.omega_bound : 0.0;
    return rep;
}

LargestPrimePower largest_prime_power(const mpz_class& m) {
    if (m < 2) throw PreconditionViolated("m must be >= 2");
    auto factors = factorize(m);
    for (const auto& f : factors)
        if (!f.is_certified) throw FactorizationTimeout{};
    const auto& top = factors.back(); // factorize returns primes ascending
    return {top.prime, top.exponent};
}

mpz_class euler_phi(const mpz_class& n) {
    mpz_class r = 1;
    for (const auto& f : factorize(n)) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent - 1);
        r *= pe * (f.prime - 1);
    }
    return r;
}

mpz_class delta(const mpz_class& m) {
    if (m < 2) throw PreconditionViolated("m must be >= 2");
    auto [P, e] = largest_prime_power(m);
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), P.get_mpz_t(), e);
    mpz_class cof = m / pe;
    if (cof == 1) return 1; // prime power
    return P % cof == 1 ? euler_phi(cof) : mpz_class(1);
}

bool cyclotomic_splitting_criterion(const mpz_class& m, const mpz_class& ell) {
    if (m < 1) throw PreconditionViolated("m must be >= 1");
    if (!is_prime(ell)) throw PreconditionViolated("ell must be prime");
    mpz_class cof = m;
    while (cof % ell == 0) cof /= ell;
    return (ell - 1) % cof == 0;
}

mpz_class cyclotomic_root_count(const mpz_class& m, const mpz_class& ell, unsigned k) {
    if (!cyclotomic_splitting_criterion(m, ell)) return 0;
    mpz_class cof = m;
    while (cof % ell == 0) cof /= ell;
    mpz_class base = euler_phi(cof);
    if (k <= 1) return base;
    mpz_class lk;
    mpz_pow_ui(lk.get_mpz_t(), ell.get_mpz_t(), k - 1);
    return base * lk;
}

} // namespace pembed
