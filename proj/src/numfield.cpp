#include "pembed/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "pembed/error.hpp"
#include "pembed/heights.hpp"

namespace pembed {

namespace {

using QPoly = std::vector<mpq_class>; // little-endian, trailing nonzero

void qtrim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int qdeg(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

QPoly q_from_int(const IntPoly& f) {
    QPoly r(f.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(i);
    return r;
}

QPoly qmul(const QPoly& f, const QPoly& g) {
    if (f.empty() || g.empty()) return {};
    QPoly r(f.size() + g.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    qtrim(r);
    return r;
}

// Remainder of f by g over Q; g nonzero.
QPoly qrem(QPoly f, const QPoly& g) {
    const int dg = qdeg(g);
    mpq_class linv = 1 / g.back();
    while (qdeg(f) >= dg) {
        mpq_class c = f.back() * linv;
        int shift = qdeg(f) - dg;
        for (int i = 0; i <= dg; ++i) f[shift + i] -= c * g[i];
        qtrim(f);
    }
    return f;
}

QPoly qdivmod(QPoly f, const QPoly& g, QPoly& quot) {
    const int dg = qdeg(g);
    quot.assign(std::max(0, qdeg(f) - dg + 1), mpq_class(0));
    mpq_class linv = 1 / g.back();
    while (qdeg(f) >= dg) {
        mpq_class c = f.back() * linv;
        int shift = qdeg(f) - dg;
        quot[shift] = c;
        for (int i = 0; i <= dg; ++i) f[shift + i] -= c * g[i];
        qtrim(f);
    }
    qtrim(quot);
    return f;
}

QPoly qmonic(QPoly f) {
    qtrim(f);
    if (f.empty()) return f;
    mpq_class linv = 1 / f.back();
    for (auto& c : f) c *= linv;
    return f;
}

QPoly qgcd(QPoly f, QPoly g) {
    qtrim(f);
    qtrim(g);
    while (!g.empty()) {
        QPoly r = qrem(std::move(f), g);
        f = std::move(g);
        g = std::move(r);
    }
    return qmonic(std::move(f));
}

QPoly qderivative(const QPoly& f) {
    if (qdeg(f) < 1) return {};
    QPoly r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = mpq_class(static_cast<long>(i)) * f[i];
    return r;
}

// Extended Euclid: returns u with u*g == 1 (mod f); g invertible mod f.
QPoly qinvert_mod(const QPoly& g, const QPoly& f) {
    QPoly r0 = f, r1 = g;
    QPoly u0{}, u1{mpq_class(1)};
    qtrim(r1);
    while (!r1.empty()) {
        QPoly quot;
        QPoly r2 = qdivmod(std::move(r0), r1, quot);
        // u2 = u0 - quot*u1
        QPoly qu = qmul(quot, u1);
        QPoly u2 = u0;
        if (u2.size() < qu.size()) u2.resize(qu.size(), mpq_class(0));
        for (std::size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
        qtrim(u2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (qdeg(r0) != 0) throw DivisionByZero{};
    mpq_class scale = 1 / r0[0];
    for (auto& c : u0) c *= scale;
    qtrim(u0);
    return u0;
}

// Clears denominators and content: content-1 integer polynomial with
// positive leading coefficient, equal to f up to a positive rational factor.
IntPoly q_to_primitive_int(const QPoly& f) {
    mpz_class den = 1;
    for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ic(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        mpq_class v = f[i] * mpq_class(den);
        ic[i] = v.get_num();
    }
    IntPoly g{std::move(ic)};
    g = primitive_part(g);
    if (!g.is_zero() && sgn(g.leading()) < 0) g = -g;
    return g;
}

// Fraction-free (Bareiss) solve of A x = b over Q: rows are scaled to
// integers, eliminated without fractions, then back-substituted exactly.
std::vector<mpq_class> solve_linear_bareiss(std::vector<std::vector<mpq_class>> aug) {
    const std::size_t n = aug.size();
    // Scale each row to integers.
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (const auto& v : aug[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
        for (std::size_t j = 0; j <= n; ++j) {
            mpq_class v = aug[i][j] * mpq_class(l);
            m[i][j] = v.get_num();
        }
    }
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // pivot
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) throw InternalAssertionFailed("singular change-of-basis system");
        if (piv != k) std::swap(m[piv], m[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                mpz_class num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_class q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (r != 0) throw InternalAssertionFailed("Bareiss division not exact");
                m[i][j] = std::move(q);
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    if (m[n - 1][n - 1] == 0) throw InternalAssertionFailed("singular change-of-basis system");
    std::vector<mpq_class> x(n);
    for (std::size_t i = n; i-- > 0;) {
        mpq_class s = m[i][n];
        for (std::size_t j = i + 1; j < n; ++j) s -= mpq_class(m[i][j]) * x[j];
        x[i] = s / mpq_class(m[i][i]);
        x[i].canonicalize();
    }
    return x;
}

} // namespace

NumberField::NumberField(IntPoly defining_poly, bool assert_irreducible) : f_(std::move(defining_poly)) {
    if (f_.degree() < 1) throw DegreeTooSmall{};
    if (content(f_) != 1) throw NotPrimitiveContent{};
    if (sgn(f_.leading()) < 0) f_ = -f_;
    if (!assert_irreducible && check_irreducible(f_) != Irreducibility::Proven)
        throw PreconditionViolated("defining polynomial not proven irreducible; pass assert_irreducible to accept it");
    disc_ = discriminant(f_);
    if (disc_ == 0) throw PreconditionViolated("defining polynomial has a repeated factor");
}

double NumberField::generator_height() const {
    if (gen_height_ < 0.0) gen_height_ = abs_log_height(f_);
    return gen_height_;
}

FieldElement::FieldElement(FieldPtr field, std::vector<mpq_class> coords)
    : field_(std::move(field)), c_(std::move(coords)) {
    const std::size_t d = static_cast<std::size_t>(field_->degree());
    if (c_.size() != d) throw PreconditionViolated("coordinate vector length != field degree");
    for (auto& v : c_) v.canonicalize();
}

FieldElement FieldElement::zero(FieldPtr field) {
    std::size_t d = static_cast<std::size_t>(field->degree());
    return FieldElement(std::move(field), std::vector<mpq_class>(d, mpq_class(0)));
}

FieldElement FieldElement::one(FieldPtr field) {
    return rational(std::move(field), 1);
}

FieldElement FieldElement::rational(FieldPtr field, const mpq_class& r) {
    std::size_t d = static_cast<std::size_t>(field->degree());
    std::vector<mpq_class> c(d, mpq_class(0));
    c[0] = r;
    return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::generator(FieldPtr field) {
    std::size_t d = static_cast<std::size_t>(field->degree());
    if (d < 2) {
        // Degree-1 field: alpha is the rational root of the defining poly.
        mpq_class r(-field->defining_poly().coeff(0), field->defining_poly().coeff(1));
        r.canonicalize();
        return rational(std::move(field), r);
    }
    std::vector<mpq_class> c(d, mpq_class(0));
    c[1] = 1;
    return FieldElement(std::move(field), std::move(c));
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return v == 0; });
}

bool FieldElement::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

void FieldElement::check_same_field(const FieldElement& o) const {
    if (!(*field_ == *o.field_)) throw FieldMismatch{};
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_field(o);
    std::vector<mpq_class> r = c_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same_field(o);
    std::vector<mpq_class> r = c_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    std::vector<mpq_class> r = c_;
    for (auto& v : r) v = -v;
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const mpq_class& s) const {
    std::vector<mpq_class> r = c_;
    for (auto& v : r) v *= s;
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(o);
    QPoly prod = qmul(c_, o.c_);
    QPoly red = qrem(std::move(prod), q_from_int(field_->defining_poly()));
    red.resize(static_cast<std::size_t>(field_->degree()), mpq_class(0));
    return FieldElement(field_, std::move(red));
}

bool FieldElement::operator==(const FieldElement& o) const {
    return *field_ == *o.field_ && c_ == o.c_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero{};
    QPoly g = c_;
    qtrim(g);
    QPoly inv = qinvert_mod(g, q_from_int(field_->defining_poly()));
    inv.resize(static_cast<std::size_t>(field_->degree()), mpq_class(0));
    return FieldElement(field_, std::move(inv));
}

FieldElement FieldElement::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    FieldElement r = one(field_);
    FieldElement b = *this;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

IntPoly min_poly_of_element(const FieldElement& beta) {
    const int d = beta.field()->degree();
    if (beta.is_zero()) return IntPoly{{0, 1}}; // x
    if (beta.is_rational()) {
        // r -> den*x - num
        const mpq_class& r = beta.coords()[0];
        return IntPoly{{mpz_class(-r.get_num()), mpz_class(r.get_den())}};
    }
    // Multiplication-by-beta matrix on the power basis.
    std::vector<std::vector<mpq_class>> M(static_cast<std::size_t>(d),
                                          std::vector<mpq_class>(static_cast<std::size_t>(d), mpq_class(0)));
    FieldElement col = beta;
    const FieldElement gen = FieldElement::generator(beta.field());
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.coords()[static_cast<std::size_t>(i)];
        if (j + 1 < d) col = col * gen;
    }
    // Characteristic polynomial by Faddeev-LeVerrier.
    auto matmul = [d](const std::vector<std::vector<mpq_class>>& A, const std::vector<std::vector<mpq_class>>& B) {
        std::vector<std::vector<mpq_class>> C(static_cast<std::size_t>(d),
                                              std::vector<mpq_class>(static_cast<std::size_t>(d), mpq_class(0)));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const mpq_class& a = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                if (a == 0) continue;
                for (int j = 0; j < d; ++j)
                    C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        a * B[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
        return C;
    };
    std::vector<mpq_class> charpoly(static_cast<std::size_t>(d) + 1, mpq_class(0));
    charpoly[static_cast<std::size_t>(d)] = 1;
    std::vector<std::vector<mpq_class>> Mk = M;
    for (int k = 1; k <= d; ++k) {
        mpq_class tr = 0;
        for (int i = 0; i < d; ++i) tr += Mk[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        mpq_class ck = -tr / k;
        charpoly[static_cast<std::size_t>(d - k)] = ck;
        if (k < d) {
            for (int i = 0; i < d; ++i) Mk[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += ck;
            Mk = matmul(M, Mk);
        }
    }
    // charpoly = minpoly^{d/deg}; the squarefree part is the minimal polynomial.
    QPoly cp(charpoly.begin(), charpoly.end());
    QPoly g = qgcd(cp, qderivative(cp));
    QPoly quot;
    QPoly r = qdivmod(std::move(cp), g, quot);
    qtrim(r);
    if (!r.empty()) throw InternalAssertionFailed("squarefree reduction of characteristic polynomial");
    IntPoly mp = q_to_primitive_int(quot);
    if (mp.degree() < 1 || d % mp.degree() != 0)
        throw InternalAssertionFailed("minimal polynomial degree does not divide field degree");
    return mp;
}

double element_height(const FieldElement& beta) {
    if (beta.is_zero()) return 0.0;
    if (beta.is_rational()) return rational_height(beta.coords()[0]);
    return abs_log_height(min_poly_of_element(beta));
}

namespace {

// Shell enumeration values: 0, 1, -1, 2, -2, ..., limited to |v| <= n.
std::vector<long> shell_values(long n) {
    std::vector<long> vals{0};
    for (long v = 1; v <= n; ++v) {
        vals.push_back(v);
        vals.push_back(-v);
    }
    return vals;
}

} // namespace

PrimitiveResult primitive_from_generators(const std::vector<FieldElement>& generators) {
    if (generators.empty()) throw PreconditionViolated("no generators given");
    const FieldPtr field = generators.front().field();
    for (const auto& g : generators)
        if (!(*g.field() == *field)) throw FieldMismatch{};
    const int d = field->degree();
    if (d < 2) throw DegreeTooSmall{};
    const std::size_t m = generators.size();

    double height_sum = 0.0;
    for (const auto& g : generators) {
        IntPoly mp = min_poly_of_element(g);
        if (mp.degree() < 2) throw PreconditionViolated("generator of degree < 2 over Q");
        height_sum += abs_log_height(mp);
    }

    const long half_d = d / 2;
    for (long shell = 0; shell <= half_d; ++shell) {
        const auto vals = shell_values(shell);
        std::vector<std::size_t> idx(m, 0);
        while (true) {
            long maxabs = 0;
            for (std::size_t i = 0; i < m; ++i) maxabs = std::max(maxabs, std::labs(vals[idx[i]]));
            if (maxabs == shell) {
                FieldElement cand = FieldElement::zero(field);
                std::vector<long> bs(m);
                for (std::size_t i = 0; i < m; ++i) {
                    bs[i] = vals[idx[i]];
                    if (bs[i] != 0) cand = cand + generators[i] * mpq_class(bs[i]);
                }
                if (!cand.is_zero()) {
                    IntPoly mp = min_poly_of_element(cand);
                    if (mp.degree() == d) {
                        PrimitiveResult res{cand, std::move(bs), mp, abs_log_height(mp),
                                            std::log(static_cast<double>(m) * static_cast<double>(half_d)) + height_sum};
                        if (res.height > res.height_bound + kHeightSlack)
                            throw InequalityViolated("primitive element height certificate");
                        return res;
                    }
                }
            }
            // advance mixed-radix counter (last coordinate fastest)
            std::size_t pos = m;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < vals.size()) break;
                idx[pos] = 0;
                if (pos == 0) {
                    pos = static_cast<std::size_t>(-1);
                    break;
                }
            }
            if (pos == static_cast<std::size_t>(-1)) break;
        }
    }
    throw NotGenerating{};
}

PowerBasisCoords power_basis_coords(const FieldElement& beta) {
    if (beta.is_zero()) throw ZeroElement{};
    PowerBasisCoords out;
    out.b = 1;
    for (const auto& c : beta.coords()) mpz_lcm(out.b.get_mpz_t(), out.b.get_mpz_t(), c.get_den().get_mpz_t());
    out.a.resize(beta.coords().size());
    for (std::size_t j = 0; j < out.a.size(); ++j) {
        mpq_class v = beta.coords()[j] * mpq_class(out.b);
        out.a[j] = v.get_num();
    }
    // gcd of the numerators is automatically coprime to b.
    mpz_class g = 0;
    for (const auto& a : out.a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    mpz_class gg;
    mpz_gcd(gg.get_mpz_t(), g.get_mpz_t(), out.b.get_mpz_t());
    if (gg != 1) throw InternalAssertionFailed("power-basis normalization");
    return out;
}

CoefficientHeightReport coefficient_height_certificate(const FieldElement& beta) {
    if (beta.is_zero()) throw ZeroElement{};
    const int d = beta.field()->degree();
    if (d < 2) throw DegreeTooSmall{};
    const double h_beta = element_height(beta);
    const double h_alpha = beta.field()->generator_height();
    const PowerBasisCoords pb = power_basis_coords(beta);

    CoefficientHeightReport rep;
    rep.uniform_bound = d * h_beta + 3.0 * d * d * h_alpha + 2.0 * d * d;
    {
        signed long exp;
        double mant = mpz_get_d_2exp(&exp, pb.b.get_mpz_t());
        rep.log_b = std::log(mant) + exp * std::log(2.0);
    }
    const double dd = d;
    for (int i = 0; i < d; ++i) {
        mpq_class ai_over_b(pb.a[static_cast<std::size_t>(i)], pb.b);
        ai_over_b.canonicalize();
        double hi = rational_height(ai_over_b);
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(d - 1), static_cast<unsigned long>(i));
        double bound = dd * h_beta + 3.0 * dd * (dd - 1.0) * h_alpha + dd * std::log(binom.get_d()) +
                       dd * (dd - 1.0) * std::log(2.0) + std::log(dd);
        rep.coeff_heights.push_back(hi);
        rep.per_index_bounds.push_back(bound);
        if (hi > bound + kHeightSlack || hi > rep.uniform_bound + kHeightSlack)
            throw InequalityViolated("coefficient height bound at index " + std::to_string(i));
    }
    if (rep.log_b > rep.uniform_bound + kHeightSlack)
        throw InequalityViolated("log b bound");
    rep.pass = true;
    return rep;
}

namespace {

VandermondeReport vandermonde_impl(const FieldElement& beta, double tol) {
    using C = std::complex<double>;
    const int d = beta.field()->degree();
    auto roots = complex_roots(beta.field()->defining_poly(), 1e-12);
    // Conjugate values of beta.
    std::vector<C> bconj(static_cast<std::size_t>(d), C(0));
    for (int i = 0; i < d; ++i) {
        C pow = 1;
        for (int j = 0; j < d; ++j) {
            bconj[static_cast<std::size_t>(i)] += beta.coords()[static_cast<std::size_t>(j)].get_d() * pow;
            pow *= roots[static_cast<std::size_t>(i)];
        }
    }
    VandermondeReport rep;
    rep.reconstructed.resize(static_cast<std::size_t>(d));
    rep.exact.resize(static_cast<std::size_t>(d));
    for (int j = 1; j <= d; ++j) {
        C sum = 0;
        for (int i = 1; i <= d; ++i) {
            // elementary symmetric functions of the roots without root i
            std::vector<C> esym{1};
            for (int k = 1; k <= d; ++k) {
                if (k == i) continue;
                esym.push_back(0);
                for (std::size_t t = esym.size() - 1; t >= 1; --t)
                    esym[t] += esym[t - 1] * roots[static_cast<std::size_t>(k - 1)];
            }
            C denom = 1;
            for (int mm = 1; mm < i; ++mm) denom *= roots[static_cast<std::size_t>(i - 1)] - roots[static_cast<std::size_t>(mm - 1)];
            for (int k = i + 1; k <= d; ++k) denom *= roots[static_cast<std::size_t>(k - 1)] - roots[static_cast<std::size_t>(i - 1)];
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            sum += bconj[static_cast<std::size_t>(i - 1)] * sign * esym[static_cast<std::size_t>(d - j)] / denom;
        }
        rep.reconstructed[static_cast<std::size_t>(j - 1)] = sum.real();
        rep.exact[static_cast<std::size_t>(j - 1)] = beta.coords()[static_cast<std::size_t>(j - 1)].get_d();
    }
    double scale = 1.0;
    for (int j = 0; j < d; ++j) scale = std::max(scale, std::abs(rep.exact[static_cast<std::size_t>(j)]));
    for (int j = 0; j < d; ++j)
        rep.max_abs_diff = std::max(rep.max_abs_diff,
                                    std::abs(rep.reconstructed[static_cast<std::size_t>(j)] - rep.exact[static_cast<std::size_t>(j)]));
    rep.pass = rep.max_abs_diff <= tol * scale;
    return rep;
}

} // namespace

VandermondeReport vandermonde_solve_check(const FieldElement& beta, double tol) {
    return vandermonde_impl(beta, tol);
}

std::vector<mpq_class> rebase_coords(const FieldElement& beta, const FieldElement& new_gen) {
    if (!(*beta.field() == *new_gen.field())) throw FieldMismatch{};
    const int d = beta.field()->degree();
    std::vector<std::vector<mpq_class>> aug(static_cast<std::size_t>(d),
                                            std::vector<mpq_class>(static_cast<std::size_t>(d) + 1, mpq_class(0)));
    FieldElement col = FieldElement::one(beta.field());
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.coords()[static_cast<std::size_t>(i)];
        if (j + 1 < d) col = col * new_gen;
    }
    for (int i = 0; i < d; ++i) aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] = beta.coords()[static_cast<std::size_t>(i)];
    return solve_linear_bareiss(std::move(aug));
}

} // namespace pembed
