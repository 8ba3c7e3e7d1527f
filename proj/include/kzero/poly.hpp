#pragma once

// Dense univariate polynomial arithmetic over a prime field F_p.
//
// A polynomial is a coefficient vector, lowest degree first, with no trailing
// zeros; the zero polynomial is the empty vector. Every function expects and
// returns this canonical form. Coefficients live in [0, p).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace kzero::poly {

using Coeffs = std::vector<std::int64_t>;

inline int deg(const Coeffs& a) { return static_cast<int>(a.size()) - 1; } // deg 0 == -1
inline bool is_zero(const Coeffs& a) { return a.empty(); }

void trim(Coeffs& a);
Coeffs canon(Coeffs a, std::int64_t p); // reduce mod p and trim

bool is_monic(const Coeffs& a);
Coeffs make_monic(const Coeffs& a, std::int64_t p);

Coeffs add(const Coeffs& a, const Coeffs& b, std::int64_t p);
Coeffs sub(const Coeffs& a, const Coeffs& b, std::int64_t p);
Coeffs neg(const Coeffs& a, std::int64_t p);
Coeffs mul(const Coeffs& a, const Coeffs& b, std::int64_t p);
Coeffs scale(const Coeffs& a, std::int64_t c, std::int64_t p);

// Division with remainder; b must be nonzero. deg r < deg b.
std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, std::int64_t p);
Coeffs rem(const Coeffs& a, const Coeffs& b, std::int64_t p);

Coeffs gcd(const Coeffs& a, const Coeffs& b, std::int64_t p); // monic (or zero)
// g = gcd(a,b) monic, with x*a + y*b = g.
Coeffs ext_gcd(const Coeffs& a, const Coeffs& b, std::int64_t p, Coeffs& x, Coeffs& y);
// Inverse of a modulo f, if gcd(a, f) = 1.
std::optional<Coeffs> inv_mod(const Coeffs& a, const Coeffs& f, std::int64_t p);

Coeffs derivative(const Coeffs& a, std::int64_t p);

std::int64_t inv_scalar(std::int64_t c, std::int64_t p);

// Deterministic trial-division primality check, desk scale.
bool is_prime(std::int64_t n);

// All monic polynomials of the given degree, lexicographic in the coefficient
// vector (constant term varies fastest). Guarded by `cap` candidates.
std::vector<Coeffs> monics_of_degree(std::int64_t p, int d, std::int64_t cap = (1 << 20));

// Monic irreducibles of each degree 1..d, built by sieving with trial division.
std::vector<std::vector<Coeffs>> irreducibles_up_to(std::int64_t p, int d, std::int64_t cap = (1 << 20));

bool is_irreducible(const Coeffs& a, std::int64_t p);

struct Factor {
    Coeffs base; // monic irreducible
    int mult;
};

// Squarefree decomposition a = lead * prod part_i^i (chars p handled).
std::vector<Factor> squarefree_decomposition(const Coeffs& a, std::int64_t p);

// Full factorization of a nonzero polynomial into monic irreducibles, sorted
// by (degree, coefficient vector). `lead` is the leading unit.
struct Factorization {
    std::int64_t lead;
    std::vector<Factor> factors;
};
Factorization factor(const Coeffs& a, std::int64_t p);

// Multiplicity of the irreducible q in a (ord_q).
int ord_at(const Coeffs& a, const Coeffs& q, std::int64_t p);

} // namespace kzero::poly
