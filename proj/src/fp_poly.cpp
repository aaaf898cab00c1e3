#include "pembed/fp_poly.hpp"

#include <algorithm>

#include "pembed/error.hpp"

namespace pembed::fp {

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    return powmod(a % p, p - 2, p);
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(const IntPoly& f, u64 p) {
    Poly r(f.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        mpz_class m = f.coeff(i) % static_cast<unsigned long>(p);
        long v = m.get_si();
        r[i] = v < 0 ? static_cast<u64>(v + static_cast<long>(p)) : static_cast<u64>(v);
    }
    trim(r);
    return r;
}

u64 eval(const Poly& f, u64 x, u64 p) {
    u64 r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = (mulmod(r, x, p) + *it) % p;
    return r;
}

Poly mul(const Poly& f, const Poly& g, u64 p) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i]) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(f[i], g[j], p)) % p;
    }
    trim(r);
    return r;
}

Poly rem(Poly f, const Poly& g, u64 p) {
    const int dg = deg(g);
    if (dg < 0) throw ZeroPolynomial{};
    const u64 linv = invmod(g.back(), p);
    while (deg(f) >= dg) {
        u64 c = mulmod(f.back(), linv, p);
        int shift = deg(f) - dg;
        for (int i = 0; i <= dg; ++i)
            f[shift + i] = submod(f[shift + i], mulmod(c, g[i], p), p);
        trim(f);
    }
    return f;
}

Poly make_monic(Poly f, u64 p) {
    trim(f);
    if (f.empty()) return f;
    u64 inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    return f;
}

Poly gcd(Poly f, Poly g, u64 p) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        Poly r = rem(std::move(f), g, p);
        f = std::move(g);
        g = std::move(r);
    }
    return make_monic(std::move(f), p);
}

Poly powmod_poly(const Poly& base, u64 e, const Poly& f, u64 p) {
    Poly r{1 % p};
    trim(r);
    Poly b = rem(base, f, p);
    while (e) {
        if (e & 1) r = rem(mul(r, b, p), f, p);
        b = rem(mul(b, b, p), f, p);
        e >>= 1;
    }
    return r;
}

namespace {

// Split a monic product of distinct linear factors into roots.
void split_linear(const Poly& g, u64 p, std::mt19937_64& rng, std::vector<u64>& out) {
    const int d = deg(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(submod(0, g[0], p)); // x + g0 -> root -g0
        return;
    }
    std::uniform_int_distribution<u64> dist(0, p - 1);
    while (true) {
        u64 a = dist(rng);
        // gcd(g, (x+a)^((p-1)/2) - 1) separates quadratic residues of the
        // shifted roots.
        Poly w = powmod_poly(Poly{a, 1}, (p - 1) / 2, g, p);
        if (w.empty())
            w = Poly{p - 1};
        else {
            w[0] = submod(w[0], 1, p);
            trim(w);
        }
        if (w.empty()) continue;
        Poly h = gcd(g, w, p);
        int dh = deg(h);
        if (dh <= 0 || dh >= d) continue;
        Poly q = g;
        // q = g / h by repeated remainder-free division
        {
            Poly quot(deg(g) - dh + 1, 0);
            Poly r = g;
            u64 linv = invmod(h.back(), p);
            while (deg(r) >= dh) {
                u64 c = mulmod(r.back(), linv, p);
                int shift = deg(r) - dh;
                quot[shift] = c;
                for (int i = 0; i <= dh; ++i)
                    r[shift + i] = submod(r[shift + i], mulmod(c, h[i], p), p);
                trim(r);
            }
            q = std::move(quot);
            trim(q);
        }
        split_linear(h, p, rng, out);
        split_linear(q, p, rng, out);
        return;
    }
}

} // namespace

std::vector<u64> roots(const Poly& f, u64 p, std::mt19937_64& rng) {
    Poly fb = f;
    trim(fb);
    if (fb.empty()) throw ZeroReduction{};
    std::vector<u64> out;
    if (p < 10000) {
        for (u64 a = 0; a < p; ++a)
            if (eval(fb, a, p) == 0) out.push_back(a);
        return out;
    }
    // g = gcd(x^p - x, f): the product of the distinct linear factors.
    Poly xp = powmod_poly(Poly{0, 1}, p, fb, p);
    // xp - x
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = submod(xp[1], 1, p);
    trim(xp);
    if (xp.empty()) {
        // f divides x^p - x: all roots distinct, f itself splits into linears.
        split_linear(make_monic(fb, p), p, rng, out);
        std::sort(out.begin(), out.end());
        return out;
    }
    Poly g = gcd(fb, xp, p);
    if (deg(g) >= 1) split_linear(g, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Quotient f / g assuming the division is exact over F_p.
Poly quotient_exact(const Poly& f, const Poly& g, u64 p) {
    Poly r = f, quot(deg(f) - deg(g) + 1, 0);
    u64 linv = invmod(g.back(), p);
    while (deg(r) >= deg(g)) {
        u64 c = mulmod(r.back(), linv, p);
        int shift = deg(r) - deg(g);
        quot[shift] = c;
        for (int i = 0; i <= deg(g); ++i)
            r[shift + i] = submod(r[shift + i], mulmod(c, g[i], p), p);
        trim(r);
    }
    trim(quot);
    return quot;
}

} // namespace

std::vector<int> factor_degrees_squarefree(Poly f, u64 p) {
    std::vector<int> degs;
    f = make_monic(std::move(f), p);
    Poly xq{0, 1}; // running x^{p^k} mod f
    int k = 0;
    while (deg(f) >= 2 * (k + 1)) {
        ++k;
        xq = powmod_poly(xq, p, f, p);
        Poly diff = xq;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = submod(diff[1], 1, p);
        trim(diff);
        Poly g = gcd(f, diff, p); // product of the degree-k factors
        if (deg(g) >= 1) {
            for (int i = 0; i < deg(g) / k; ++i) degs.push_back(k);
            f = quotient_exact(f, g, p);
            if (deg(f) >= 1) xq = rem(xq, f, p);
        }
    }
    if (deg(f) >= 1) degs.push_back(deg(f)); // irreducible tail
    std::sort(degs.begin(), degs.end());
    return degs;
}

} // namespace pembed::fp
