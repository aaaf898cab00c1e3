#include "pembed/heights.hpp"

#include <algorithm>
#include <cmath>

#include "pembed/error.hpp"

namespace pembed {

namespace {

template <typename Real>
std::complex<Real> horner(const std::vector<std::complex<Real>>& coeffs, std::complex<Real> z) {
    std::complex<Real> r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
    return r;
}

// Durand-Kerner simultaneous iteration on a squarefree polynomial.
// Returns false if the a-posteriori certificate d*max|w_i| <= tol fails
// within the iteration cap.
template <typename Real>
bool durand_kerner(const IntPoly& f, Real tol, std::vector<std::complex<Real>>& out) {
    const int d = f.degree();
    std::vector<std::complex<Real>> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<Real>(f.coeff(i).get_d());
    const std::complex<Real> lead = c.back();

    // Cauchy bound on root moduli.
    Real radius = 0;
    for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(c[i] / lead));
    radius = Real(1) + radius;

    std::vector<std::complex<Real>> z(d);
    const Real pi = Real(3.14159265358979323846264338327950288L);
    for (int i = 0; i < d; ++i) {
        Real ang = Real(2) * pi * (Real(i) + Real(0.25)) / Real(d);
        z[i] = Real(0.7) * radius * std::complex<Real>(std::cos(ang), std::sin(ang));
    }

    const int kMaxIter = 2000;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        Real max_w = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<Real> denom = lead;
            for (int j = 0; j < d; ++j)
                if (j != i) denom *= z[i] - z[j];
            std::complex<Real> w = horner(c, z[i]) / denom;
            z[i] -= w;
            max_w = std::max(max_w, std::abs(w));
        }
        if (Real(d) * max_w <= tol) {
            out.assign(z.begin(), z.end());
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<std::complex<double>> complex_roots(const IntPoly& f, double tol) {
    if (f.degree() < 1) throw DegreeTooSmall{};
    std::vector<std::complex<double>> roots;
    // Exact squarefree split first: Durand-Kerner then always runs on
    // simple roots (quadratic convergence), and multiplicities come out
    // exact instead of from cluster counting.
    auto factors = squarefree_decomposition(f);
    for (std::size_t mult = 1; mult <= factors.size(); ++mult) {
        const IntPoly& g = factors[mult - 1];
        if (g.degree() < 1) continue;
        std::vector<std::complex<double>> zs;
        if (!durand_kerner<double>(g, tol, zs)) {
            std::vector<std::complex<long double>> zl;
            if (!durand_kerner<long double>(g, static_cast<long double>(tol), zl))
                throw NoConvergence("a-posteriori certificate not reached at extended precision");
            zs.clear();
            for (auto& z : zl) zs.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
        }
        for (auto& z : zs)
            for (std::size_t k = 0; k < mult; ++k) roots.push_back(z);
    }
    return roots;
}

MahlerEstimate mahler_measure(const IntPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial{};
    MahlerEstimate est;
    est.source_poly = f;
    if (f.degree() == 0) {
        est.value = std::abs(f.leading().get_d());
        est.abs_error = 0.0;
        return est;
    }
    // Retry ladder: huge roots can make the absolute certificate at 1e-12
    // unreachable in hardware floats; a coarser certificate still leaves the
    // propagated error orders of magnitude below the comparison slack.
    std::vector<std::complex<double>> roots;
    double tol = 1e-12;
    for (;; tol *= 100.0) {
        try {
            roots = complex_roots(f, tol);
            break;
        } catch (const NoConvergence&) {
            if (tol >= 1e-8) throw;
        }
    }
    // Interval product over [max(1,|z|-tol), max(1,|z|+tol)].
    double lo = std::abs(f.leading().get_d());
    double hi = lo;
    for (const auto& z : roots) {
        double m = std::abs(z);
        lo *= std::max(1.0, m - tol);
        hi *= std::max(1.0, m + tol);
    }
    est.value = 0.5 * (lo + hi);
    est.abs_error = 0.5 * (hi - lo) + 1e-15 * hi;
    return est;
}

double abs_log_height(const IntPoly& min_poly) {
    if (min_poly.degree() < 1) throw DegreeTooSmall{};
    MahlerEstimate m = mahler_measure(min_poly);
    return std::log(m.value) / min_poly.degree();
}

double rational_height(const mpq_class& x) {
    if (x == 0) return 0.0;
    mpq_class r = x;
    r.canonicalize();
    mpz_class num = abs(r.get_num());
    const mpz_class& den = r.get_den();
    const mpz_class& m = num > den ? num : den;
    signed long exp;
    double mant = mpz_get_d_2exp(&exp, m.get_mpz_t());
    return std::log(mant) + exp * std::log(2.0);
}

HeightMahlerReport check_height_mahler_inequality(const IntPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial{};
    const int d = std::max(0, f.degree());
    const double H = height(f).get_d();
    MahlerEstimate m = mahler_measure(f);
    HeightMahlerReport rep;
    rep.lower = H * std::ldexp(1.0, -d);
    rep.mahler = m.value;
    rep.upper = H * std::sqrt(static_cast<double>(d) + 1.0);
    const double err = m.abs_error + kHeightSlack * std::max(1.0, m.value);
    rep.pass = rep.lower <= m.value + err && m.value - err <= rep.upper;
    if (!rep.pass) throw InequalityViolated("H(f)2^{-d} <= M(f) <= H(f)sqrt(d+1) failed for " + f.to_string());
    return rep;
}

} // namespace pembed
