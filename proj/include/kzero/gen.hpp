#pragma once

// Seeded instance generation. Reproducibility is part of the public contract:
// the same seed yields the same instances on every platform, so failures
// reported by the verification suites can be replayed bit-for-bit.

#include <cstdint>
#include <vector>

#include "kzero/matrix.hpp"
#include "kzero/rings.hpp"

namespace kzero::gen {

// splitmix64; fixed algorithm, never std:: distributions (those vary by
// implementation).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    std::int64_t range(std::int64_t lo, std::int64_t hi) { // inclusive
        if (hi <= lo) return lo;
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool coin() { return next() & 1; }

    Rng fork() { return Rng(next()); }

private:
    std::uint64_t state_;
};

// Random element; over Z and F_p[t] the size is bounded (|x| <= mag, degree
// <= mag) so downstream integer arithmetic stays at desk scale.
rings::RingElem ring_elem(Rng& rng, const rings::Ring& r, int mag = 3);
rings::RingElem unit(Rng& rng, const rings::Ring& r);
rings::RingElem nonzero_elem(Rng& rng, const rings::Ring& r, int mag = 3);

rings::MatrixMorphism matrix(Rng& rng, const rings::Ring& r, int rows, int cols, int mag = 3);

// Single transvection 1 + c*E_ij, i != j.
rings::MatrixMorphism transvection(Rng& rng, const rings::Ring& r, int n);

// Invertible matrix built as a product of transvections, unit row scalings
// and signed swaps; determinant is a unit by construction.
rings::MatrixMorphism invertible(Rng& rng, const rings::Ring& r, int n, int steps = 0);

// Invertible with determinant 1 (product of transvections only).
rings::MatrixMorphism special_linear(Rng& rng, const rings::Ring& r, int n, int steps = 0);

// A commutator g h g^-1 h^-1 of invertibles.
rings::MatrixMorphism commutator(Rng& rng, const rings::Ring& r, int n);

} // namespace kzero::gen
