#include "pembed/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include "pembed/error.hpp"
#include "pembed/fp_poly.hpp"

namespace pembed {

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long a : coeffs) c_.emplace_back(a);
    trim();
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(mpz_class a) {
    IntPoly f;
    if (a != 0) f.c_.push_back(std::move(a));
    return f;
}

IntPoly IntPoly::monomial(unsigned k, mpz_class c) {
    IntPoly f;
    if (c != 0) {
        f.c_.assign(k + 1, mpz_class(0));
        f.c_[k] = std::move(c);
    }
    return f;
}

const mpz_class& IntPoly::coeff(std::size_t i) const {
    static const mpz_class kZero = 0;
    return i < c_.size() ? c_[i] : kZero;
}

const mpz_class& IntPoly::leading() const {
    if (c_.empty()) throw ZeroPolynomial{};
    return c_.back();
}

IntPoly IntPoly::operator-() const {
    IntPoly g = *this;
    for (auto& a : g.c_) a = -a;
    return g;
}

IntPoly& IntPoly::operator+=(const IntPoly& g) {
    if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), mpz_class(0));
    for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] += g.c_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& g) {
    if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), mpz_class(0));
    for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] -= g.c_[i];
    trim();
    return *this;
}

IntPoly operator*(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return IntPoly{};
    std::vector<mpz_class> r(f.c_.size() + g.c_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < f.c_.size(); ++i)
        for (std::size_t j = 0; j < g.c_.size(); ++j) r[i + j] += f.c_[i] * g.c_[j];
    return IntPoly(std::move(r));
}

IntPoly operator*(const mpz_class& a, const IntPoly& f) {
    if (a == 0) return IntPoly{};
    IntPoly g = f;
    for (auto& c : g.c_) c *= a;
    return g;
}

std::string IntPoly::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i].get_str();
    }
    os << ']';
    return os.str();
}

IntPoly IntPoly::parse(const std::string& text) {
    std::vector<mpz_class> coeffs;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i >= text.size() || text[i] != '[') throw ParseError("polynomial must be a [a0, a1, ...] array");
    ++i;
    skip_ws();
    if (i < text.size() && text[i] == ']') return IntPoly(std::move(coeffs));
    while (true) {
        skip_ws();
        std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw ParseError("expected integer coefficient");
        coeffs.emplace_back(text.substr(start, i - start));
        skip_ws();
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        if (i < text.size() && text[i] == ']') break;
        throw ParseError("malformed coefficient array");
    }
    return IntPoly(std::move(coeffs));
}

mpz_class evaluate(const IntPoly& f, const mpz_class& x) {
    mpz_class r = 0;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) r = r * x + *it;
    return r;
}

mpz_class content(const IntPoly& f) {
    mpz_class g = 0;
    for (const auto& a : f.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    return g;
}

mpz_class height(const IntPoly& f) {
    mpz_class h = 0;
    for (const auto& a : f.coeffs()) {
        mpz_class v = abs(a);
        if (v > h) h = v;
    }
    return h;
}

mpz_class length(const IntPoly& f) {
    mpz_class s = 0;
    for (const auto& a : f.coeffs()) s += abs(a);
    return s;
}

IntPoly derivative(const IntPoly& f) {
    if (f.degree() < 1) return IntPoly{};
    std::vector<mpz_class> r(f.degree());
    for (int i = 1; i <= f.degree(); ++i) r[i - 1] = mpz_class(i) * f.coeff(i);
    return IntPoly(std::move(r));
}

IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero()) return f;
    mpz_class c = content(f);
    std::vector<mpz_class> r;
    r.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) r.push_back(a / c);
    return IntPoly(std::move(r));
}

IntPoly divide_exact(const IntPoly& f, const IntPoly& g) {
    if (g.is_zero()) throw ZeroPolynomial{};
    if (f.is_zero()) return IntPoly{};
    if (f.degree() < g.degree()) throw InternalAssertionFailed("inexact polynomial division");
    std::vector<mpz_class> rem(f.coeffs());
    std::vector<mpz_class> q(f.degree() - g.degree() + 1, mpz_class(0));
    for (int k = f.degree() - g.degree(); k >= 0; --k) {
        mpz_class& top = rem[k + g.degree()];
        if (top == 0) continue;
        mpz_class quot, r;
        mpz_tdiv_qr(quot.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), g.leading().get_mpz_t());
        if (r != 0) throw InternalAssertionFailed("inexact polynomial division");
        q[k] = quot;
        for (int i = 0; i <= g.degree(); ++i) rem[k + i] -= quot * g.coeff(i);
    }
    for (const auto& a : rem)
        if (a != 0) throw InternalAssertionFailed("inexact polynomial division");
    return IntPoly(std::move(q));
}

namespace {

// Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g, fraction-free.
IntPoly pseudo_rem(IntPoly f, const IntPoly& g) {
    const int dg = g.degree();
    const mpz_class& lg = g.leading();
    int e = f.degree() - dg + 1;
    while (!f.is_zero() && f.degree() >= dg) {
        int shift = f.degree() - dg;
        mpz_class lf = f.leading();
        f = lg * f - lf * (g * IntPoly::monomial(static_cast<unsigned>(shift)));
        --e;
    }
    if (e > 0 && !f.is_zero()) {
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), lg.get_mpz_t(), static_cast<unsigned long>(e));
        f = scale * f;
    }
    return f;
}

// Subresultant PRS; returns the sequence of nonzero remainders along with the
// resultant bookkeeping. Used by both poly_gcd and resultant.
struct PrsResult {
    IntPoly last_nonzero;   // last nonzero remainder (up to content)
    mpz_class resultant;    // valid only when computed_res is true
    bool computed_res = false;
};

} // namespace

IntPoly poly_gcd(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero()) return g.is_zero() ? IntPoly{} : mpz_class(sgn(g.leading())) * primitive_part(g);
    if (g.is_zero()) return mpz_class(sgn(f.leading())) * primitive_part(f);
    mpz_class cont;
    mpz_gcd(cont.get_mpz_t(), content(f).get_mpz_t(), content(g).get_mpz_t());
    IntPoly a = primitive_part(f), b = primitive_part(g);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = primitive_part(pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    IntPoly result = cont * a;
    if (sgn(result.leading()) < 0) result = -result;
    return result;
}

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw ZeroPolynomial{};
    // Degree-zero cases first: Res(c, g) = c^{deg g}.
    if (f.degree() == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), f.leading().get_mpz_t(), static_cast<unsigned long>(g.degree()));
        return r;
    }
    if (g.degree() == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), g.leading().get_mpz_t(), static_cast<unsigned long>(f.degree()));
        return r;
    }

    // Cohen, Algorithm 3.3.7.
    IntPoly A = f, B = g;
    int s = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        std::swap(A, B);
    }
    mpz_class ca = content(A), cb = content(B);
    A = primitive_part(A);
    B = primitive_part(B);
    mpz_class t, tb;
    mpz_pow_ui(t.get_mpz_t(), ca.get_mpz_t(), static_cast<unsigned long>(B.degree()));
    mpz_pow_ui(tb.get_mpz_t(), cb.get_mpz_t(), static_cast<unsigned long>(A.degree()));
    t *= tb;
    mpz_class gg = 1, h = 1;
    while (true) {
        int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        IntPoly R = pseudo_rem(A, B);
        A = B;
        // B = R / (g * h^delta)
        mpz_class hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
        mpz_class div = gg * hd;
        if (!R.is_zero()) {
            std::vector<mpz_class> rc;
            rc.reserve(R.coeffs().size());
            for (const auto& c : R.coeffs()) {
                mpz_class q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
                if (r != 0) throw InternalAssertionFailed("subresultant division not exact");
                rc.push_back(std::move(q));
            }
            B = IntPoly(std::move(rc));
        } else {
            B = IntPoly{};
        }
        if (B.is_zero()) return 0; // f, g share a factor
        gg = A.leading();
        // h = g^delta / h^{delta-1}
        mpz_class gd;
        mpz_pow_ui(gd.get_mpz_t(), gg.get_mpz_t(), static_cast<unsigned long>(delta));
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = gd;
        } else {
            mpz_class hq, hr, hp;
            mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
            mpz_tdiv_qr(hq.get_mpz_t(), hr.get_mpz_t(), gd.get_mpz_t(), hp.get_mpz_t());
            if (hr != 0) throw InternalAssertionFailed("subresultant h-update not exact");
            h = hq;
        }
        if (B.degree() == 0) break;
    }
    // h = lc(B)^{deg A} / h^{deg A - 1}
    mpz_class lb_pow, h_pow, q, r;
    mpz_pow_ui(lb_pow.get_mpz_t(), B.leading().get_mpz_t(), static_cast<unsigned long>(A.degree()));
    mpz_pow_ui(h_pow.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(A.degree() - 1));
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), lb_pow.get_mpz_t(), h_pow.get_mpz_t());
    if (r != 0) throw InternalAssertionFailed("subresultant final division not exact");
    return s < 0 ? mpz_class(-t * q) : mpz_class(t * q);
}

mpz_class discriminant(const IntPoly& f) {
    const int d = f.degree();
    if (d < 1) throw DegreeTooSmall{};
    if (d == 1) return 1;
    mpz_class res = resultant(f, derivative(f));
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), res.get_mpz_t(), f.leading().get_mpz_t());
    if (r != 0) throw InternalAssertionFailed("Res(f, f') not divisible by lc(f)");
    return (static_cast<long>(d) * (d - 1) / 2) % 2 ? mpz_class(-q) : q;
}

namespace {

IntPoly cyclotomic_uncached(unsigned long m, std::map<unsigned long, IntPoly>& cache) {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // x^m - 1 divided by Phi_e over proper divisors e of m.
    std::vector<mpz_class> xm(m + 1, mpz_class(0));
    xm[0] = -1;
    xm[m] = 1;
    IntPoly f{std::vector<mpz_class>(std::move(xm))};
    for (unsigned long e = 1; e < m; ++e)
        if (m % e == 0) f = divide_exact(f, cyclotomic_uncached(e, cache));
    cache.emplace(m, f);
    return f;
}

} // namespace

IntPoly cyclotomic(unsigned long m) {
    static std::mutex mu;
    static std::map<unsigned long, IntPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    return cyclotomic_uncached(m, cache);
}

std::vector<IntPoly> squarefree_decomposition(const IntPoly& f) {
    if (f.degree() < 1) return {};
    // Yun's algorithm on the primitive part.
    IntPoly p = primitive_part(f);
    if (sgn(p.leading()) < 0) p = -p;
    IntPoly d = derivative(p);
    IntPoly a = poly_gcd(p, d);
    IntPoly b = divide_exact(p, a);
    IntPoly c = divide_exact(d, a);
    std::vector<IntPoly> out;
    while (true) {
        IntPoly diff = c - derivative(b);
        if (diff.is_zero()) {
            out.push_back(b);
            break;
        }
        IntPoly g = poly_gcd(b, diff);
        out.push_back(g);
        b = divide_exact(b, g);
        c = divide_exact(diff, g);
    }
    return out;
}

IntPoly squarefree_part(const IntPoly& f) {
    if (f.degree() < 1) return f.is_zero() ? f : IntPoly{{1}};
    IntPoly p = primitive_part(f);
    IntPoly g = poly_gcd(p, derivative(p));
    IntPoly sf = divide_exact(p, g);
    sf = primitive_part(sf);
    if (sgn(sf.leading()) < 0) sf = -sf;
    return sf;
}

int distinct_root_count(const IntPoly& f) {
    if (f.degree() < 1) return 0;
    return squarefree_part(f).degree();
}

Irreducibility check_irreducible(const IntPoly& f) {
    const int d = f.degree();
    if (d < 1) throw DegreeTooSmall{};
    if (content(f) != 1) throw NotPrimitiveContent{};
    if (d == 1) return Irreducibility::Proven;

    mpz_class disc = discriminant(f);
    if (disc == 0) return Irreducibility::Unknown; // repeated factor over Q

    // Achievable proper factor degrees, intersected over good primes.
    // Bit i of the mask = "a factor of degree i over Q is consistent".
    static const int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    unsigned long long mask = ~0ULL;
    for (int p : kPrimes) {
        if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        fp::Poly fb = fp::reduce(f, static_cast<fp::u64>(p));
        auto degs = fp::factor_degrees_squarefree(fp::make_monic(std::move(fb), p), p);
        if (degs.size() == 1) return Irreducibility::Proven;
        // Subset sums of the factor degrees.
        unsigned long long sums = 1;
        for (int e : degs) sums |= sums << e;
        mask &= sums;
        unsigned long long forced = (1ULL << 0) | (1ULL << d);
        if ((mask & ~forced) == 0) return Irreducibility::Proven;
    }
    return Irreducibility::Unknown;
}

} // namespace pembed
