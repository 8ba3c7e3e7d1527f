#include "kzero/linalg.hpp"

#include <algorithm>

#include "kzero/errors.hpp"

namespace kzero::rings {

namespace {

// Size measure used to pick small pivots: |x| over Z, degree over F_p[t],
// 0/1 over fields.
std::int64_t euclid_size(const RingElem& e) {
    if (e.is_zero()) return -1;
    switch (e.ring().kind()) {
    case RingKind::Integers: {
        std::int64_t v = e.payload()[0];
        return v < 0 ? -v : v;
    }
    case RingKind::PolyRing: return e.poly_degree();
    default: return 1;
    }
}

void swap_rows(MatrixMorphism& m, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols(); ++c) {
        RingElem t = m.at(i, c);
        m.set(i, c, m.at(j, c));
        m.set(j, c, t);
    }
}

void swap_cols(MatrixMorphism& m, int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m.rows(); ++r) {
        RingElem t = m.at(r, i);
        m.set(r, i, m.at(r, j));
        m.set(r, j, t);
    }
}

// row_i += c * row_j
void add_row(MatrixMorphism& m, int i, int j, const RingElem& c) {
    for (int k = 0; k < m.cols(); ++k) m.set(i, k, m.at(i, k) + c * m.at(j, k));
}

// col_i += c * col_j
void add_col(MatrixMorphism& m, int i, int j, const RingElem& c) {
    for (int k = 0; k < m.rows(); ++k) m.set(k, i, m.at(k, i) + c * m.at(k, j));
}

void scale_row(MatrixMorphism& m, int i, const RingElem& c) {
    for (int k = 0; k < m.cols(); ++k) m.set(i, k, c * m.at(i, k));
}

} // namespace

SmithResult smith_normal_form(const MatrixMorphism& m) {
    const Ring& R = m.ring();
    if (!R.is_euclidean()) throw UsageError("smith_normal_form requires a Euclidean ring");
    MatrixMorphism a = m;
    MatrixMorphism u = MatrixMorphism::identity(R, m.rows());
    MatrixMorphism v = MatrixMorphism::identity(R, m.cols());
    const int nmin = std::min(m.rows(), m.cols());

    for (int t = 0; t < nmin; ++t) {
        // pick the nonzero entry of smallest size in the trailing block
        int pi = -1, pj = -1;
        std::int64_t best = -1;
        for (int i = t; i < a.rows(); ++i)
            for (int j = t; j < a.cols(); ++j) {
                std::int64_t s = euclid_size(a.at(i, j));
                if (s >= 0 && (pi < 0 || s < best)) {
                    pi = i;
                    pj = j;
                    best = s;
                }
            }
        if (pi < 0) break; // trailing block zero

        swap_rows(a, t, pi);
        swap_rows(u, t, pi);
        swap_cols(a, t, pj);
        swap_cols(v, t, pj);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            // clear column t by division
            for (int i = t + 1; i < a.rows(); ++i) {
                if (a.at(i, t).is_zero()) continue;
                auto [q, r] = R.divmod(a.at(i, t), a.at(t, t));
                add_row(a, i, t, -q);
                add_row(u, i, t, -q);
                if (!r.is_zero()) {
                    swap_rows(a, t, i);
                    swap_rows(u, t, i);
                    dirty = true;
                }
            }
            // clear row t by division
            for (int j = t + 1; j < a.cols(); ++j) {
                if (a.at(t, j).is_zero()) continue;
                auto [q, r] = R.divmod(a.at(t, j), a.at(t, t));
                add_col(a, j, t, -q);
                add_col(v, j, t, -q);
                if (!r.is_zero()) {
                    swap_cols(a, t, j);
                    swap_cols(v, t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // pivot must divide every remaining entry; fold a bad row in and retry
            for (int i = t + 1; i < a.rows() && !dirty; ++i)
                for (int j = t + 1; j < a.cols() && !dirty; ++j) {
                    auto [q, r] = R.divmod(a.at(i, j), a.at(t, t));
                    (void)q;
                    if (!r.is_zero()) {
                        add_row(a, t, i, R.one());
                        add_row(u, t, i, R.one());
                        dirty = true;
                    }
                }
        }
    }

    // normalize diagonal units: positive over Z, monic over F_p[t], 1 over fields
    for (int t = 0; t < nmin; ++t) {
        const RingElem& d = a.at(t, t);
        if (d.is_zero()) continue;
        RingElem unit = R.one();
        switch (R.kind()) {
        case RingKind::Integers:
            if (d.payload()[0] < 0) unit = R.from_int(-1);
            break;
        case RingKind::PolyRing: unit = R.from_coeffs({poly::inv_scalar(d.payload().back(), R.characteristic_modulus())}); break;
        default: unit = *R.inv(d); break;
        }
        if (!unit.is_one()) {
            scale_row(a, t, unit);
            scale_row(u, t, unit);
        }
    }
    return {std::move(u), std::move(a), std::move(v)};
}

namespace {

// Solve over a Euclidean ring through the Smith form; also exposes the kernel.
struct EuclideanSystem {
    SmithResult snf;
    int rank;

    explicit EuclideanSystem(const MatrixMorphism& m) : snf(smith_normal_form(m)) {
        rank = 0;
        int nmin = std::min(m.rows(), m.cols());
        while (rank < nmin && !snf.d.at(rank, rank).is_zero()) ++rank;
    }

    std::optional<Column> solve(const Column& b) const {
        const Ring& R = snf.d.ring();
        Column c = snf.u * b;
        Column y;
        y.reserve(snf.d.cols());
        for (int i = 0; i < snf.d.cols(); ++i) {
            if (i < rank) {
                auto [q, r] = R.divmod(c[i], snf.d.at(i, i));
                if (!r.is_zero()) return std::nullopt;
                y.push_back(q);
            } else {
                y.push_back(R.zero());
            }
        }
        for (int i = rank; i < snf.d.rows(); ++i)
            if (!c[i].is_zero()) return std::nullopt;
        return snf.v * y;
    }

    std::vector<Column> kernel() const {
        std::vector<Column> out;
        for (int j = rank; j < snf.d.cols(); ++j) out.push_back(snf.v.col(j));
        return out;
    }
};

// Diagonalization over Z/n and F_p[t]/f, all arithmetic reduced in the ring.
// Pivot steps are 2x2 extended-gcd transforms computed on lifts in the
// Euclidean cover and reduced back; their determinant is 1, so u and v stay
// invertible. Running the Smith elimination on whole lifted matrices instead
// would blow up integer entries.
struct QuotientDiag {
    MatrixMorphism u, d, v; // u*m*v = d, d diagonal
    int rank;               // number of nonzero diagonal entries
};

QuotientDiag diagonalize_quotient(const MatrixMorphism& m) {
    const Ring& R = m.ring();
    const Ring cov = R.cover();
    RingElem modulus = R.cover_modulus();

    MatrixMorphism a = m;
    MatrixMorphism u = MatrixMorphism::identity(R, m.rows());
    MatrixMorphism v = MatrixMorphism::identity(R, m.cols());
    const int nmin = std::min(m.rows(), m.cols());

    auto swap_rows2 = [](MatrixMorphism& x, int i, int j) {
        for (int k = 0; k < x.cols(); ++k) {
            RingElem t = x.at(i, k);
            x.set(i, k, x.at(j, k));
            x.set(j, k, t);
        }
    };
    auto swap_cols2 = [](MatrixMorphism& x, int i, int j) {
        for (int k = 0; k < x.rows(); ++k) {
            RingElem t = x.at(k, i);
            x.set(k, i, x.at(k, j));
            x.set(k, j, t);
        }
    };
    struct GcdStep {
        bool divides; // lb is a multiple of la: plain subtraction, pivot kept
        RingElem q, s, w, adg, bdg;
    };
    auto gcd_step = [&](const RingElem& pa, const RingElem& pb) -> GcdStep {
        RingElem la = R.lift(pa), lb = R.lift(pb);
        auto [q0, r0q] = cov.divmod(lb, la);
        if (r0q.is_zero()) return {true, R.reduce_from_cover(q0), R.zero(), R.zero(), R.zero(), R.zero()};
        RingElem r0 = la, r1 = lb, s0 = cov.one(), s1 = cov.zero(), t0 = cov.zero(), t1 = cov.one();
        while (!r1.is_zero()) {
            auto [q, r] = cov.divmod(r0, r1);
            r0 = r1;
            r1 = r;
            RingElem stmp = s0 - q * s1;
            s0 = s1;
            s1 = stmp;
            RingElem ttmp = t0 - q * t1;
            t0 = t1;
            t1 = ttmp;
        }
        RingElem adg = cov.divmod(la, r0).first, bdg = cov.divmod(lb, r0).first;
        return {false, R.zero(), R.reduce_from_cover(s0), R.reduce_from_cover(t0), R.reduce_from_cover(adg),
                R.reduce_from_cover(bdg)};
    };
    // rows (t, i) <- [[s, w],[-b/g, a/g]] . rows, or row_i -= q row_t
    auto gcd_rows = [&](int t, int i) {
        GcdStep st = gcd_step(a.at(t, t), a.at(i, t));
        if (st.divides) {
            for (int k = 0; k < a.cols(); ++k) a.set(i, k, a.at(i, k) - st.q * a.at(t, k));
            for (int k = 0; k < u.cols(); ++k) u.set(i, k, u.at(i, k) - st.q * u.at(t, k));
            return;
        }
        for (int k = 0; k < a.cols(); ++k) {
            RingElem x = a.at(t, k), y = a.at(i, k);
            a.set(t, k, st.s * x + st.w * y);
            a.set(i, k, st.adg * y - st.bdg * x);
        }
        for (int k = 0; k < u.cols(); ++k) {
            RingElem x = u.at(t, k), y = u.at(i, k);
            u.set(t, k, st.s * x + st.w * y);
            u.set(i, k, st.adg * y - st.bdg * x);
        }
    };
    auto gcd_cols = [&](int t, int j) {
        GcdStep st = gcd_step(a.at(t, t), a.at(t, j));
        if (st.divides) {
            for (int k = 0; k < a.rows(); ++k) a.set(k, j, a.at(k, j) - st.q * a.at(k, t));
            for (int k = 0; k < v.rows(); ++k) v.set(k, j, v.at(k, j) - st.q * v.at(k, t));
            return;
        }
        for (int k = 0; k < a.rows(); ++k) {
            RingElem x = a.at(k, t), y = a.at(k, j);
            a.set(k, t, st.s * x + st.w * y);
            a.set(k, j, st.adg * y - st.bdg * x);
        }
        for (int k = 0; k < v.rows(); ++k) {
            RingElem x = v.at(k, t), y = v.at(k, j);
            v.set(k, t, st.s * x + st.w * y);
            v.set(k, j, st.adg * y - st.bdg * x);
        }
    };

    int rank = 0;
    for (int t = 0; t < nmin; ++t) {
        int pi = -1, pj = -1;
        for (int i = t; i < a.rows() && pi < 0; ++i)
            for (int j = t; j < a.cols(); ++j)
                if (!a.at(i, j).is_zero()) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != t) {
            swap_rows2(a, t, pi);
            swap_rows2(u, t, pi);
        }
        if (pj != t) {
            swap_cols2(a, t, pj);
            swap_cols2(v, t, pj);
        }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < a.rows(); ++i)
                if (!a.at(i, t).is_zero()) gcd_rows(t, i);
            for (int j = t + 1; j < a.cols(); ++j)
                if (!a.at(t, j).is_zero()) {
                    gcd_cols(t, j);
                    dirty = true;
                }
            if (dirty) {
                dirty = false;
                for (int i = t + 1; i < a.rows(); ++i)
                    if (!a.at(i, t).is_zero()) dirty = true;
            }
        }
        ++rank;
    }
    (void)modulus;
    return {std::move(u), std::move(a), std::move(v), rank};
}

// Solve d*y = c for one diagonal entry over Z/n or F_p[t]/f via cover gcds.
std::optional<RingElem> solve_diag_entry(const Ring& R, const RingElem& d, const RingElem& c) {
    if (d.is_zero()) {
        if (c.is_zero()) return R.zero();
        return std::nullopt;
    }
    const Ring cov = R.cover();
    RingElem ld = R.lift(d), lc = R.lift(c), lm = R.cover_modulus();
    // g = gcd(ld, lm)
    RingElem g = ld, b = lm;
    while (!b.is_zero()) {
        auto [q, r] = cov.divmod(g, b);
        (void)q;
        g = b;
        b = r;
    }
    auto [cq, cr] = cov.divmod(lc, g);
    if (!cr.is_zero()) return std::nullopt;
    // invert ld/g modulo lm/g: extended euclid
    RingElem dd = cov.divmod(ld, g).first;
    RingElem mm = cov.divmod(lm, g).first;
    RingElem r0 = mm, r1 = dd, s0 = cov.zero(), s1 = cov.one();
    while (!r1.is_zero()) {
        auto [q, r] = cov.divmod(r0, r1);
        r0 = r1;
        r1 = r;
        RingElem stmp = s0 - q * s1;
        s0 = s1;
        s1 = stmp;
    }
    // r0 is a unit of the cover now (gcd(dd, mm) = 1 up to unit)
    auto r0inv = cov.inv(r0);
    if (!r0inv) throw InternalError("diagonal solve: gcd not a unit");
    RingElem inv_dd = s0 * *r0inv;
    RingElem y = cq * inv_dd;
    if (!mm.is_zero() && !mm.is_one()) y = cov.divmod(y, mm).second;
    return R.reduce_from_cover(y);
}

// Generator of the annihilator of d in Z/n or F_p[t]/f.
RingElem annihilator_gen(const Ring& R, const RingElem& d) {
    const Ring cov = R.cover();
    RingElem lm = R.cover_modulus();
    if (d.is_zero()) return R.one();
    RingElem g = R.lift(d), b = lm;
    while (!b.is_zero()) {
        auto [q, r] = cov.divmod(g, b);
        (void)q;
        g = b;
        b = r;
    }
    return R.reduce_from_cover(cov.divmod(lm, g).first);
}

struct QuotientSystem {
    QuotientDiag diag;

    explicit QuotientSystem(const MatrixMorphism& m) : diag(diagonalize_quotient(m)) {}

    std::optional<Column> solve(const Column& b) const {
        const Ring& R = diag.d.ring();
        Column c = diag.u * b;
        Column y;
        y.reserve(diag.d.cols());
        int nmin = std::min(diag.d.rows(), diag.d.cols());
        for (int i = 0; i < diag.d.cols(); ++i) {
            if (i < nmin) {
                auto yi = solve_diag_entry(R, diag.d.at(i, i), c[i]);
                if (!yi) return std::nullopt;
                y.push_back(std::move(*yi));
            } else {
                y.push_back(R.zero());
            }
        }
        for (int i = nmin; i < diag.d.rows(); ++i)
            if (!c[i].is_zero()) return std::nullopt;
        return diag.v * y;
    }

    std::vector<Column> kernel() const {
        const Ring& R = diag.d.ring();
        std::vector<Column> out;
        int nmin = std::min(diag.d.rows(), diag.d.cols());
        for (int i = 0; i < diag.d.cols(); ++i) {
            RingElem gen = i < nmin ? annihilator_gen(R, diag.d.at(i, i)) : R.one();
            if (gen.is_zero()) continue;
            Column k;
            k.reserve(diag.d.cols());
            for (int r = 0; r < diag.v.rows(); ++r) k.push_back(diag.v.at(r, i) * gen);
            bool zero = true;
            for (const auto& e : k) zero = zero && e.is_zero();
            if (!zero) out.push_back(std::move(k));
        }
        return out;
    }
};

} // namespace

MatrixMorphism lift_matrix(const MatrixMorphism& m) {
    const Ring cov = m.ring().cover();
    MatrixMorphism r(cov, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.set(i, j, m.ring().lift(m.at(i, j)));
    return r;
}

MatrixMorphism reduce_matrix(const Ring& quot, const MatrixMorphism& m) {
    MatrixMorphism r(quot, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.set(i, j, quot.reduce_from_cover(m.at(i, j)));
    return r;
}

MatrixMorphism reduce_matrix(const Surjection& f, const MatrixMorphism& m) {
    MatrixMorphism r(f.target(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.set(i, j, f.reduce(m.at(i, j)));
    return r;
}

std::optional<Column> solve_linear(const MatrixMorphism& m, const Column& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw UsageError("solve_linear shape mismatch");
    const Ring& R = m.ring();
    for (const auto& e : b)
        if (e.ring() != R) throw UsageError("mixed-ring operands");
    if (R.is_euclidean()) return EuclideanSystem(m).solve(b);
    return QuotientSystem(m).solve(b);
}

std::vector<Column> kernel_basis(const MatrixMorphism& m) {
    if (m.ring().is_euclidean()) return EuclideanSystem(m).kernel();
    return QuotientSystem(m).kernel();
}

std::optional<MatrixMorphism> solve_matrix(const MatrixMorphism& m, const MatrixMorphism& rhs) {
    if (rhs.rows() != m.rows()) throw UsageError("solve_matrix shape mismatch");
    if (m.ring() != rhs.ring()) throw UsageError("mixed-ring matrices");
    MatrixMorphism x(m.ring(), m.cols(), rhs.cols());

    auto fill = [&](auto& sys) -> bool {
        for (int j = 0; j < rhs.cols(); ++j) {
            auto col = sys.solve(rhs.col(j));
            if (!col) return false;
            for (int i = 0; i < m.cols(); ++i) x.set(i, j, (*col)[i]);
        }
        return true;
    };
    if (m.ring().is_euclidean()) {
        EuclideanSystem sys(m);
        if (!fill(sys)) return std::nullopt;
        return x;
    }
    QuotientSystem sys(m);
    if (!fill(sys)) return std::nullopt;
    return x;
}

std::optional<MatrixMorphism> inverse(const MatrixMorphism& m) {
    if (!m.is_square()) return std::nullopt;
    auto x = solve_matrix(m, MatrixMorphism::identity(m.ring(), m.rows()));
    if (!x) return std::nullopt;
    if (!(m * *x).is_identity() || !(*x * m).is_identity()) return std::nullopt;
    return x;
}

MatrixMorphism adjugate(const MatrixMorphism& m) {
    if (!m.is_square()) throw UsageError("adjugate of a non-square matrix");
    int n = m.rows();
    MatrixMorphism adj(m.ring(), n, n);
    if (n == 0) return adj;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            MatrixMorphism minor(m.ring(), n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.set(rr, cc, m.at(r, c));
                    ++cc;
                }
                ++rr;
            }
            RingElem cof = det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            adj.set(j, i, cof);
        }
    return adj;
}

} // namespace kzero::rings
