#ifndef PEMBED_INTPOLY_HPP
#define PEMBED_INTPOLY_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace pembed {

/// Univariate polynomial with arbitrary-precision integer coefficients.
/// Coefficients are stored little-endian (index = exponent); the zero
/// polynomial is the empty sequence.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly zero() { return IntPoly{}; }
    static IntPoly constant(mpz_class a);
    /// c * x^k
    static IntPoly monomial(unsigned k, mpz_class c = 1);
    static IntPoly x() { return monomial(1); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    /// Coefficient of x^i (0 beyond the degree).
    const mpz_class& coeff(std::size_t i) const;
    const mpz_class& leading() const;

    IntPoly operator-() const;
    IntPoly& operator+=(const IntPoly& g);
    IntPoly& operator-=(const IntPoly& g);
    friend IntPoly operator+(IntPoly f, const IntPoly& g) { return f += g; }
    friend IntPoly operator-(IntPoly f, const IntPoly& g) { return f -= g; }
    friend IntPoly operator*(const IntPoly& f, const IntPoly& g);
    friend IntPoly operator*(const mpz_class& a, const IntPoly& f);
    bool operator==(const IntPoly& g) const { return c_ == g.c_; }

    /// "[a0, a1, ..., ad]" with decimal-string coefficients.
    std::string to_string() const;
    static IntPoly parse(const std::string& text);

private:
    void trim();
    std::vector<mpz_class> c_;
};

/// Horner evaluation of f at an integer point.
mpz_class evaluate(const IntPoly& f, const mpz_class& x);

/// gcd of all coefficients; 0 for the zero polynomial.
mpz_class content(const IntPoly& f);

/// H(f) = max |a_i|.
mpz_class height(const IntPoly& f);

/// L(f) = sum of |a_i|.
mpz_class length(const IntPoly& f);

IntPoly derivative(const IntPoly& f);

/// f with content divided out (sign of leading coefficient preserved);
/// zero stays zero.
IntPoly primitive_part(const IntPoly& f);

/// Exact quotient f / g in Z[x]; throws InternalAssertionFailed if the
/// division is not exact.
IntPoly divide_exact(const IntPoly& f, const IntPoly& g);

/// Primitive gcd in Z[x] (positive leading coefficient), via a
/// subresultant remainder sequence.
IntPoly poly_gcd(const IntPoly& f, const IntPoly& g);

/// Res(f, g) by the subresultant PRS algorithm. Throws ZeroPolynomial
/// if either argument is zero.
mpz_class resultant(const IntPoly& f, const IntPoly& g);

/// (-1)^{d(d-1)/2} Res(f, f') / lc(f). Requires deg f >= 1.
mpz_class discriminant(const IntPoly& f);

/// The m-th cyclotomic polynomial, m >= 1.
IntPoly cyclotomic(unsigned long m);

/// Yun squarefree decomposition: returns g_1, g_2, ... with
/// primitive_part(f) = +- prod g_i^i and each g_i squarefree.
std::vector<IntPoly> squarefree_decomposition(const IntPoly& f);

/// f / gcd(f, f'), primitive; its roots are the distinct roots of f.
IntPoly squarefree_part(const IntPoly& f);

/// Number of distinct complex roots of f (degree of the squarefree part).
int distinct_root_count(const IntPoly& f);

enum class Irreducibility { Proven, Unknown };

/// Sound best-effort irreducibility test over Q: Proven only when a
/// good-reduction prime yields an irreducible factorization mod p, or the
/// intersected factor-degree patterns over the tested primes force it.
/// Requires content(f) = 1 and deg f >= 1.
Irreducibility check_irreducible(const IntPoly& f);

} // namespace pembed

#endif
