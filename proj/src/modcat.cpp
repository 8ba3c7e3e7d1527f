#include "kzero/modcat.hpp"

#include <algorithm>

#include "kzero/errors.hpp"

namespace kzero::modcat {

using rings::RingKind;

MatrixMorphism ElementaryFactor::realize(int n) const {
    MatrixMorphism m = MatrixMorphism::identity(block.ring(), n);
    for (size_t a = 0; a < top.size(); ++a)
        for (size_t b = 0; b < bot.size(); ++b) m.set(top[a], bot[b], block.at(static_cast<int>(a), static_cast<int>(b)));
    return m;
}

ElementaryFactor ElementaryFactor::inverted() const { return {top, bot, -block}; }

ElementaryFactor single_transvection(const Ring& r, int i, int j, RingElem c) {
    if (i == j) throw UsageError("transvection needs distinct indices");
    MatrixMorphism b(r, 1, 1);
    b.set(0, 0, std::move(c));
    return {{i}, {j}, std::move(b)};
}

ElementaryWitness ElementaryWitness::make(const MatrixMorphism& automorphism, std::vector<ElementaryFactor> factors) {
    if (!automorphism.is_square()) throw UsageError("elementary witness on a non-square matrix");
    const int n = automorphism.rows();
    MatrixMorphism prod = MatrixMorphism::identity(automorphism.ring(), n);
    for (const auto& f : factors) {
        for (int i : f.top)
            if (std::find(f.bot.begin(), f.bot.end(), i) != f.bot.end())
                throw UsageError("elementary factor with overlapping blocks");
        prod = prod * f.realize(n);
    }
    if (prod != automorphism) throw UsageError("elementary factors do not reproduce the automorphism");
    return ElementaryWitness(automorphism, std::move(factors));
}

ElementaryWitness ElementaryWitness::identity(const Ring& r, int n) {
    return ElementaryWitness(MatrixMorphism::identity(r, n), {});
}

namespace {

bool pivot_elimination_supported(const Ring& r) { return r.is_field() || r.is_local() || r.is_finite(); }

void swap_rows_tracked(MatrixMorphism& a, MatrixMorphism& u, int i, int j) {
    if (i == j) return;
    for (int k = 0; k < a.cols(); ++k) {
        RingElem x = a.at(i, k);
        a.set(i, k, a.at(j, k));
        a.set(j, k, x);
    }
    for (int k = 0; k < u.cols(); ++k) {
        RingElem x = u.at(i, k);
        u.set(i, k, u.at(j, k));
        u.set(j, k, x);
    }
}

void swap_cols_tracked(MatrixMorphism& a, MatrixMorphism& v, int i, int j) {
    if (i == j) return;
    for (int k = 0; k < a.rows(); ++k) {
        RingElem x = a.at(k, i);
        a.set(k, i, a.at(k, j));
        a.set(k, j, x);
    }
    for (int k = 0; k < v.rows(); ++k) {
        RingElem x = v.at(k, i);
        v.set(k, i, v.at(k, j));
        v.set(k, j, x);
    }
}

// Move a unit of the trailing block into position (t,t), tracking the row side
// in u and the column side in v. Over a field or local ring a split epi block
// always holds a unit. Over a general finite ring the pivot row of the block
// is unimodular, so the solver produces combination coefficients and a scan
// over scalars c finds column additions that turn the pivot into a unit.
bool secure_unit_pivot(MatrixMorphism& a, MatrixMorphism& u, MatrixMorphism& v, int t) {
    const Ring& R = a.ring();
    for (int i = t; i < a.rows(); ++i)
        for (int j = t; j < a.cols(); ++j)
            if (R.is_unit(a.at(i, j))) {
                swap_rows_tracked(a, u, t, i);
                swap_cols_tracked(a, v, t, j);
                return true;
            }
    if (!R.is_finite()) return false;

    // subrow (t, t..c-1) as a 1 x m system: nu with sum nu_j * a(t,j) = 1
    const int m = a.cols() - t;
    MatrixMorphism subrow(R, 1, m);
    for (int j = 0; j < m; ++j) subrow.set(0, j, a.at(t, t + j));
    auto nu = rings::solve_linear(subrow, {R.one()});
    if (!nu) return false;
    for (const auto& c : R.elements()) {
        RingElem pivot = a.at(t, t);
        for (int j = 1; j < m; ++j) pivot = pivot + c * (*nu)[j] * a.at(t, t + j);
        if (!R.is_unit(pivot)) continue;
        for (int j = 1; j < m; ++j) {
            RingElem coeff = c * (*nu)[j];
            if (coeff.is_zero()) continue;
            for (int k = 0; k < a.rows(); ++k) a.set(k, t, a.at(k, t) + coeff * a.at(k, t + j));
            for (int k = 0; k < v.rows(); ++k) v.set(k, t, v.at(k, t) + coeff * v.at(k, t + j));
        }
        return true;
    }
    return false;
}

} // namespace

std::optional<EpiNormalForm> epi_normal_form(const MatrixMorphism& g) {
    const Ring& R = g.ring();
    const int r = g.rows(), c = g.cols();
    if (r > c) return std::nullopt;

    if (R.is_euclidean() && !R.is_field() && !R.is_finite()) {
        // Z or F_p[t]: split surjective iff every invariant factor is a unit
        auto s = rings::smith_normal_form(g);
        for (int i = 0; i < r; ++i)
            if (!R.is_unit(s.d.at(i, i))) return std::nullopt;
        MatrixMorphism scale = MatrixMorphism::identity(R, r);
        for (int i = 0; i < r; ++i) scale.set(i, i, *R.inv(s.d.at(i, i)));
        MatrixMorphism u = scale * s.u;
        auto ui = rings::inverse(u);
        auto vi = rings::inverse(s.v);
        if (!ui || !vi) throw InternalError("smith transforms must be invertible");
        return EpiNormalForm{u, *ui, s.v, *vi};
    }

    if (!pivot_elimination_supported(R)) return std::nullopt;

    MatrixMorphism a = g;
    MatrixMorphism u = MatrixMorphism::identity(R, r);
    MatrixMorphism v = MatrixMorphism::identity(R, c);
    for (int t = 0; t < r; ++t) {
        if (!secure_unit_pivot(a, u, v, t)) return std::nullopt;
        RingElem inv = *R.inv(a.at(t, t));
        for (int k = 0; k < c; ++k) a.set(t, k, inv * a.at(t, k));
        for (int k = 0; k < r; ++k) u.set(t, k, inv * u.at(t, k));
        for (int i = 0; i < r; ++i) {
            if (i == t || a.at(i, t).is_zero()) continue;
            RingElem m = -a.at(i, t);
            for (int k = 0; k < c; ++k) a.set(i, k, a.at(i, k) + m * a.at(t, k));
            for (int k = 0; k < r; ++k) u.set(i, k, u.at(i, k) + m * u.at(t, k));
        }
        for (int j = 0; j < c; ++j) {
            if (j == t || a.at(t, j).is_zero()) continue;
            RingElem m = -a.at(t, j);
            for (int k = 0; k < r; ++k) a.set(k, j, a.at(k, j) + m * a.at(k, t));
            for (int k = 0; k < c; ++k) v.set(k, j, v.at(k, j) + m * v.at(k, t));
        }
    }
    // a must now be exactly [I | 0]
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            bool want_one = i == j;
            if (want_one && !a.at(i, j).is_one()) return std::nullopt;
            if (!want_one && !a.at(i, j).is_zero()) return std::nullopt;
        }
    auto ui = rings::inverse(u);
    auto vi = rings::inverse(v);
    if (!ui || !vi) throw InternalError("elimination transforms must be invertible");
    return EpiNormalForm{u, *ui, v, *vi};
}

KernelResult kernel_of_surjection(const MatrixMorphism& g, const std::optional<MatrixMorphism>& section_hint) {
    const Ring& R = g.ring();
    const int r = g.rows(), c = g.cols();

    auto nf = epi_normal_form(g);
    if (!nf) {
        // diagnostic: over solvable rings, name a basis vector missing from the image
        std::string diag = "no section found; g is not a split surjection";
        for (int i = 0; i < r; ++i) {
            rings::Column e(r, R.zero());
            e[i] = R.one();
            if (!rings::solve_linear(g, e)) {
                diag = "basis vector e_" + std::to_string(i) + " is not in the image";
                break;
            }
        }
        return {std::nullopt, diag};
    }

    // U g V = [I | 0]; columns r..c-1 of V span the kernel.
    const int k = c - r;
    MatrixMorphism incl = nf->v.block(0, r, c, k);
    MatrixMorphism proj = nf->v_inv.block(r, 0, k, c);
    MatrixMorphism section = nf->v.block(0, 0, c, r) * nf->u;

    if (section_hint) {
        if (section_hint->rows() != c || section_hint->cols() != r) return {std::nullopt, "section hint shape mismatch"};
        if (!(g * *section_hint).is_identity()) return {std::nullopt, "section hint is not a section"};
        section = *section_hint;
        // rebuild proj against the hint: incl*proj = 1 - section*g
        auto p = rings::solve_matrix(incl, MatrixMorphism::identity(R, c) - section * g);
        if (!p) throw InternalError("kernel inclusion must split");
        proj = *p;
    }

    KernelSplit split{FreeModule{R, k}, incl, proj, section};
    if (!(g * split.incl).is_zero()) throw InternalError("kernel inclusion not annihilated");
    if (!(g * split.section).is_identity()) throw InternalError("section failed");
    if (split.incl * split.proj + split.section * g != MatrixMorphism::identity(R, c))
        throw InternalError("split identity failed");
    if (!(split.proj * split.incl).is_identity()) throw InternalError("kernel projection failed");
    return {split, ""};
}

std::optional<ElementaryWitness> elementary_decompose(const MatrixMorphism& alpha) {
    const Ring& R = alpha.ring();
    if (!alpha.is_square()) throw UsageError("elementary_decompose needs a square matrix");
    if (!(R.is_field() || R.is_local() || R.is_finite()))
        throw UsageError("elementary_decompose requires a local or finite ring");
    if (!det(alpha).is_one()) throw UsageError("elementary_decompose requires determinant 1");

    const int n = alpha.rows();
    MatrixMorphism a = alpha;
    std::vector<ElementaryFactor> ops; // applied on the left, in order

    auto apply_left = [&](const ElementaryFactor& f) {
        a = f.realize(n) * a;
        ops.push_back(f);
    };

    for (int t = 0; t < n; ++t) {
        if (!R.is_unit(a.at(t, t))) {
            bool fixed = false;
            for (int i = t + 1; i < n && !fixed; ++i)
                if (R.is_unit(a.at(i, t))) {
                    // local ring: non-unit + unit is a unit
                    if (R.is_unit(a.at(t, t) + a.at(i, t))) {
                        apply_left(single_transvection(R, t, i, R.one()));
                        fixed = true;
                    }
                }
            if (!fixed && R.is_finite()) {
                // pivot column is unimodular; combine rows below with solver
                // coefficients, scanning the scalar multiple
                const int m = n - t;
                MatrixMorphism subcol(R, 1, m);
                for (int i = 0; i < m; ++i) subcol.set(0, i, a.at(t + i, t));
                auto nu = rings::solve_linear(subcol, {R.one()});
                if (nu) {
                    for (const auto& c : R.elements()) {
                        RingElem pivot = a.at(t, t);
                        for (int i = 1; i < m; ++i) pivot = pivot + c * (*nu)[i] * a.at(t + i, t);
                        if (!R.is_unit(pivot)) continue;
                        for (int i = 1; i < m; ++i) {
                            RingElem coeff = c * (*nu)[i];
                            if (!coeff.is_zero()) apply_left(single_transvection(R, t, t + i, coeff));
                        }
                        fixed = true;
                        break;
                    }
                }
            }
            if (!fixed) return std::nullopt; // elimination stalled; reported to the caller
        }
        RingElem piv_inv = *R.inv(a.at(t, t));
        for (int i = 0; i < n; ++i) {
            if (i == t || a.at(i, t).is_zero()) continue;
            apply_left(single_transvection(R, i, t, -(a.at(i, t) * piv_inv)));
        }
    }
    // a is now diagonal with unit entries of product 1
    std::vector<RingElem> diag;
    for (int i = 0; i < n; ++i) diag.push_back(a.at(i, i));

    // (E_m ... E_1) alpha = diag, so alpha = E_1^-1 ... E_m^-1 diag
    std::vector<ElementaryFactor> factors;
    for (const auto& op : ops) factors.push_back(op.inverted());

    // diag(u_0..u_{n-1}) = prod_k S_k with S_k = diag(c_k, c_k^-1) at
    // (k, k+1), c_k the running product. Each S_k costs six transvections:
    // diag(u, u^-1) = E_ij(u) E_ji(-u^-1) E_ij(u) . E_ij(-1) E_ji(1) E_ij(-1)
    RingElem c = R.one();
    for (int t = 0; t + 1 < n; ++t) {
        c = c * diag[t];
        if (c.is_one()) continue;
        int i = t, j = t + 1;
        factors.push_back(single_transvection(R, i, j, c));
        factors.push_back(single_transvection(R, j, i, -*R.inv(c)));
        factors.push_back(single_transvection(R, i, j, c));
        factors.push_back(single_transvection(R, i, j, -R.one()));
        factors.push_back(single_transvection(R, j, i, R.one()));
        factors.push_back(single_transvection(R, i, j, -R.one()));
    }
    return ElementaryWitness::make(alpha, std::move(factors));
}

CommutatorPair commutator_witness(const ElementaryFactor& f, const Ring& r, int n) {
    // On P + P, with A1 = f.top, A2 = f.bot in the first copy and B2 = f.bot
    // shifted into the second copy:
    //   u = 1 + block on (A1 x B2),  v = 1 + identity block on (B2 x A2).
    MatrixMorphism u = MatrixMorphism::identity(r, 2 * n);
    MatrixMorphism v = MatrixMorphism::identity(r, 2 * n);
    for (size_t a = 0; a < f.top.size(); ++a)
        for (size_t b = 0; b < f.bot.size(); ++b)
            u.set(f.top[a], n + f.bot[b], f.block.at(static_cast<int>(a), static_cast<int>(b)));
    for (size_t b = 0; b < f.bot.size(); ++b) v.set(n + f.bot[b], f.bot[b], r.one());
    return {u, v};
}

std::vector<CommutatorPair> commutator_witnesses(const ElementaryWitness& w) {
    const Ring& R = w.automorphism().ring();
    const int n = w.rank();
    std::vector<CommutatorPair> out;
    MatrixMorphism prod = MatrixMorphism::identity(R, 2 * n);
    for (const auto& f : w.factors()) {
        CommutatorPair p = commutator_witness(f, R, n);
        auto ui = rings::inverse(p.u);
        auto vi = rings::inverse(p.v);
        if (!ui || !vi) throw InternalError("commutator parts must be invertible");
        prod = prod * (p.u * p.v * *ui * *vi);
        out.push_back(std::move(p));
    }
    MatrixMorphism expect = rings::diag_sum(w.automorphism(), MatrixMorphism::identity(R, n));
    if (prod != expect) throw InternalError("commutator product mismatch");
    return out;
}

} // namespace kzero::modcat
