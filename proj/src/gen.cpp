#include "kzero/gen.hpp"

#include "kzero/errors.hpp"
#include "kzero/linalg.hpp"

namespace kzero::gen {

using rings::MatrixMorphism;
using rings::Ring;
using rings::RingElem;
using rings::RingKind;

RingElem ring_elem(Rng& rng, const Ring& r, int mag) {
    switch (r.kind()) {
    case RingKind::Integers: return r.from_int(rng.range(-mag, mag));
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return r.from_int(static_cast<std::int64_t>(rng.below(r.characteristic_modulus())));
    case RingKind::PolyRing: {
        int d = static_cast<int>(rng.below(mag + 1));
        poly::Coeffs c(d + 1);
        for (auto& x : c) x = static_cast<std::int64_t>(rng.below(r.characteristic_modulus()));
        return r.from_coeffs(std::move(c));
    }
    case RingKind::PolyQuot: {
        int d = poly::deg(r.quot_modulus());
        poly::Coeffs c(d);
        for (auto& x : c) x = static_cast<std::int64_t>(rng.below(r.characteristic_modulus()));
        return r.from_coeffs(std::move(c));
    }
    }
    throw InternalError("bad ring kind");
}

RingElem unit(Rng& rng, const Ring& r) {
    if (r.kind() == RingKind::Integers) return r.from_int(rng.coin() ? 1 : -1);
    if (r.kind() == RingKind::PolyRing)
        return r.from_int(1 + static_cast<std::int64_t>(rng.below(r.characteristic_modulus() - 1)));
    for (int tries = 0; tries < 1000; ++tries) {
        RingElem x = ring_elem(rng, r);
        if (r.is_unit(x)) return x;
    }
    throw InternalError("unit sampling failed");
}

RingElem nonzero_elem(Rng& rng, const Ring& r, int mag) {
    for (int tries = 0; tries < 1000; ++tries) {
        RingElem x = ring_elem(rng, r, mag);
        if (!x.is_zero()) return x;
    }
    throw InternalError("nonzero sampling failed");
}

MatrixMorphism matrix(Rng& rng, const Ring& r, int rows, int cols, int mag) {
    MatrixMorphism m(r, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, ring_elem(rng, r, mag));
    return m;
}

MatrixMorphism transvection(Rng& rng, const Ring& r, int n) {
    MatrixMorphism m = MatrixMorphism::identity(r, n);
    if (n < 2) return m;
    int i = static_cast<int>(rng.below(n));
    int j = static_cast<int>(rng.below(n - 1));
    if (j >= i) ++j;
    m.set(i, j, ring_elem(rng, r, 2));
    return m;
}

MatrixMorphism special_linear(Rng& rng, const Ring& r, int n, int steps) {
    if (steps <= 0) steps = 2 * n + 2;
    MatrixMorphism m = MatrixMorphism::identity(r, n);
    for (int s = 0; s < steps; ++s) m = m * transvection(rng, r, n);
    return m;
}

MatrixMorphism invertible(Rng& rng, const Ring& r, int n, int steps) {
    if (steps <= 0) steps = 2 * n + 2;
    MatrixMorphism m = MatrixMorphism::identity(r, n);
    for (int s = 0; s < steps; ++s) {
        switch (rng.below(3)) {
        case 0: m = m * transvection(rng, r, n); break;
        case 1: { // scale one row by a unit
            if (n == 0) break;
            int i = static_cast<int>(rng.below(n));
            MatrixMorphism d = MatrixMorphism::identity(r, n);
            d.set(i, i, unit(rng, r));
            m = m * d;
            break;
        }
        default: { // signed swap keeps the determinant a unit
            if (n < 2) break;
            int i = static_cast<int>(rng.below(n));
            int j = static_cast<int>(rng.below(n - 1));
            if (j >= i) ++j;
            MatrixMorphism w(r, n, n);
            for (int k = 0; k < n; ++k)
                if (k != i && k != j) w.set(k, k, r.one());
            w.set(i, j, r.one());
            w.set(j, i, -r.one());
            m = m * w;
            break;
        }
        }
    }
    return m;
}

MatrixMorphism commutator(Rng& rng, const Ring& r, int n) {
    MatrixMorphism g = invertible(rng, r, n);
    MatrixMorphism h = invertible(rng, r, n);
    auto gi = rings::inverse(g), hi = rings::inverse(h);
    if (!gi || !hi) throw InternalError("generated invertible failed to invert");
    return g * h * *gi * *hi;
}

} // namespace kzero::gen
