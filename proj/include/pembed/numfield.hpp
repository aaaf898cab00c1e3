#ifndef PEMBED_NUMFIELD_HPP
#define PEMBED_NUMFIELD_HPP

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "pembed/intpoly.hpp"

namespace pembed {

/// K = Q[x]/(f) for an irreducible, content-1 defining polynomial f with
/// positive leading coefficient. alpha denotes the class of x.
class NumberField {
public:
    /// assert_irreducible skips check_irreducible (for polynomials that are
    /// irreducible but whose degree patterns never force a proof).
    explicit NumberField(IntPoly defining_poly, bool assert_irreducible = false);

    const IntPoly& defining_poly() const { return f_; }
    int degree() const { return f_.degree(); }
    const mpz_class& disc() const { return disc_; }
    /// h(alpha) for the power-basis generator.
    double generator_height() const;

    bool operator==(const NumberField& o) const { return f_ == o.f_; }

private:
    IntPoly f_;
    mpz_class disc_;
    mutable double gen_height_ = -1.0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of K as rational coordinates in the power basis 1, alpha, ...,
/// alpha^{d-1} (each coordinate kept canonical).
class FieldElement {
public:
    FieldElement(FieldPtr field, std::vector<mpq_class> coords);
    static FieldElement zero(FieldPtr field);
    static FieldElement one(FieldPtr field);
    static FieldElement generator(FieldPtr field);
    static FieldElement rational(FieldPtr field, const mpq_class& r);

    const FieldPtr& field() const { return field_; }
    const std::vector<mpq_class>& coords() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator*(const mpq_class& s) const;
    FieldElement operator-() const;
    bool operator==(const FieldElement& o) const;

    /// Multiplicative inverse; throws DivisionByZero for zero.
    FieldElement inverse() const;
    FieldElement pow(long n) const;

private:
    void check_same_field(const FieldElement& o) const;
    FieldPtr field_;
    std::vector<mpq_class> c_;
};

/// Monic-over-Q minimal polynomial of beta, returned as a content-1 integer
/// polynomial with positive leading coefficient (min poly of 0 is x).
IntPoly min_poly_of_element(const FieldElement& beta);

/// h(beta) via its minimal polynomial.
double element_height(const FieldElement& beta);

/// Result of the primitive-element search.
struct PrimitiveResult {
    FieldElement element;          // alpha' = sum b_i alpha_i
    std::vector<long> multipliers; // the b_i
    IntPoly min_poly;              // of alpha', degree d
    double height;                 // h(alpha')
    double height_bound;           // log(m floor(d/2)) + sum h(alpha_i)
};

/// Finds alpha' = b_1 alpha_1 + ... + b_m alpha_m with coefficients in
/// {-floor(d/2), ..., floor(d/2)} generating the ambient field, enumerated
/// by max|b_i| ascending (positive before negative within a shell, then
/// lexicographic). Throws NotGenerating if no tuple attains degree d.
PrimitiveResult primitive_from_generators(const std::vector<FieldElement>& generators);

/// beta = (1/b) sum a_j alpha^j with b = lcm of coordinate denominators;
/// gcd(a_0..a_{d-1}) is automatically coprime to b.
struct PowerBasisCoords {
    mpz_class b;
    std::vector<mpz_class> a;
};
PowerBasisCoords power_basis_coords(const FieldElement& beta);

/// Per-coefficient height data checked against the explicit coefficient
/// bounds; throws InequalityViolated on any failure.
struct CoefficientHeightReport {
    std::vector<double> coeff_heights;     // h(a_i / b)
    std::vector<double> per_index_bounds;  // d h(beta) + 3d(d-1) h(alpha) + d log C(d-1,i) + d(d-1)log2 + log d
    double uniform_bound;                  // d h(beta) + 3d^2 h(alpha) + 2d^2
    double log_b;
    bool pass = false;
};
CoefficientHeightReport coefficient_height_certificate(const FieldElement& beta);

/// Numerically reconstructs the power-basis coordinates through the
/// Vandermonde inverse (conjugate sums with symmetric functions) and
/// compares against the exact coordinates.
struct VandermondeReport {
    std::vector<double> reconstructed;
    std::vector<double> exact;
    double max_abs_diff = 0.0;
    bool pass = false;
};
VandermondeReport vandermonde_solve_check(const FieldElement& beta, double tol = 1e-6);

/// Exact solve of the change-of-basis system: expresses beta in the power
/// basis of new_gen (an element of the same field whose minimal polynomial
/// has full degree d). Returns coordinates w.r.t. 1, new_gen, ...,
/// new_gen^{d-1}.
std::vector<mpq_class> rebase_coords(const FieldElement& beta, const FieldElement& new_gen);

} // namespace pembed

#endif
