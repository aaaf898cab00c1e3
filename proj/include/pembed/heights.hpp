#ifndef PEMBED_HEIGHTS_HPP
#define PEMBED_HEIGHTS_HPP

#include <complex>
#include <vector>

#include "pembed/intpoly.hpp"

namespace pembed {

/// Mahler measure of a polynomial with a propagated error bound.
struct MahlerEstimate {
    double value = 0.0;
    double abs_error = 0.0;
    IntPoly source_poly;
};

/// Result of the H(f) 2^{-d} <= M(f) <= H(f) sqrt(d+1) sandwich check.
struct HeightMahlerReport {
    double lower = 0.0;  // H * 2^{-d}
    double mahler = 0.0; // M(f)
    double upper = 0.0;  // H * sqrt(d+1)
    bool pass = false;
};

/// Additive slack absorbing floating error in height comparisons.
inline constexpr double kHeightSlack = 1e-6;

/// Approximations to all d complex roots of f (with multiplicity), each
/// within tol of a true root. Durand-Kerner on the squarefree part with a
/// double-precision pass and a long-double fallback; multiple roots are
/// repeated according to the exact squarefree decomposition.
std::vector<std::complex<double>> complex_roots(const IntPoly& f, double tol = 1e-12);

/// M(f) = |a_d| prod max{1, |root_i|}; |a_d| for constant f.
MahlerEstimate mahler_measure(const IntPoly& f);

/// h(alpha) = deg^{-1} log M(min poly). The caller asserts irreducibility.
double abs_log_height(const IntPoly& min_poly);

/// Height of a rational number: log max(|num|, |den|).
double rational_height(const mpq_class& x);

/// Checks the sandwich inequality; throws InequalityViolated on failure
/// (a failure signals a root-finding bug, not a property of f).
HeightMahlerReport check_height_mahler_inequality(const IntPoly& f);

} // namespace pembed

#endif
