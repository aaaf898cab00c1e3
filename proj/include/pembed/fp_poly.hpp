#ifndef PEMBED_FP_POLY_HPP
#define PEMBED_FP_POLY_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "pembed/intpoly.hpp"

// Dense polynomials over F_p for word-sized p. Shared by the mod-p root
// machinery and the irreducibility tester.

namespace pembed::fp {

using u64 = std::uint64_t;

inline u64 addmod(u64 a, u64 b, u64 p) { return (a + b) % p; }
inline u64 submod(u64 a, u64 b, u64 p) { return (a + p - b % p) % p; }
inline u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}
u64 powmod(u64 a, u64 e, u64 p);
/// Inverse of a mod p, p prime, a != 0 mod p.
u64 invmod(u64 a, u64 p);

/// Little-endian coefficient vector, no trailing zeros; empty = zero.
using Poly = std::vector<u64>;

void trim(Poly& f);
inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly reduce(const IntPoly& f, u64 p);
u64 eval(const Poly& f, u64 x, u64 p);
Poly mul(const Poly& f, const Poly& g, u64 p);
/// Remainder of f by g (g nonzero).
Poly rem(Poly f, const Poly& g, u64 p);
/// Monic gcd.
Poly gcd(Poly f, Poly g, u64 p);
Poly make_monic(Poly f, u64 p);
/// base^e mod (f, p).
Poly powmod_poly(const Poly& base, u64 e, const Poly& f, u64 p);

/// All roots of f in F_p, ascending. f must be nonzero mod p.
std::vector<u64> roots(const Poly& f, u64 p, std::mt19937_64& rng);

/// Degrees (with multiplicity) of the irreducible factors of a squarefree
/// monic f over F_p, via distinct-degree factorization.
std::vector<int> factor_degrees_squarefree(Poly f, u64 p);

} // namespace pembed::fp

#endif
