#include "kzero/complexes.hpp"

#include <algorithm>

#include "kzero/errors.hpp"

namespace kzero::complexes {

// ---------------------------------------------------------------- complexes

BoundedComplex BoundedComplex::make(const Ring& ring, int lo, std::vector<int> ranks,
                                    std::vector<MatrixMorphism> diffs) {
    if (ranks.empty() ? !diffs.empty() : diffs.size() != ranks.size() - 1)
        throw UsageError("complex needs one differential per adjacent degree pair");
    for (auto r : ranks)
        if (r < 0) throw UsageError("negative rank");
    for (size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i].ring() != ring) throw UsageError("differential over the wrong ring");
        if (diffs[i].rows() != ranks[i] || diffs[i].cols() != ranks[i + 1])
            throw UsageError("differential shape mismatch at degree " + std::to_string(lo + static_cast<int>(i) + 1));
    }
    for (size_t i = 0; i + 1 < diffs.size(); ++i)
        if (!(diffs[i] * diffs[i + 1]).is_zero())
            throw UsageError("d.d != 0 at degree " + std::to_string(lo + static_cast<int>(i) + 2));

    // trim zero ranks at both ends
    size_t begin = 0, end = ranks.size();
    while (begin < end && ranks[begin] == 0) ++begin;
    while (end > begin && ranks[end - 1] == 0) --end;
    BoundedComplex c(ring, lo + static_cast<int>(begin));
    if (begin == end) {
        c.lo_ = 0;
        return c;
    }
    c.ranks_.assign(ranks.begin() + begin, ranks.begin() + end);
    c.diffs_.assign(diffs.begin() + begin, diffs.begin() + (end - 1));
    return c;
}

BoundedComplex BoundedComplex::empty(const Ring& ring) { return BoundedComplex(ring, 0); }

BoundedComplex BoundedComplex::concentrated(const Ring& ring, int degree, int rank) {
    return make(ring, degree, {rank}, {});
}

BoundedComplex BoundedComplex::two_term(const MatrixMorphism& m, int degree) {
    return make(m.ring(), degree, {m.rows(), m.cols()}, {m});
}

int BoundedComplex::rank(int n) const {
    int i = n - lo_;
    if (i < 0 || i >= static_cast<int>(ranks_.size())) return 0;
    return ranks_[i];
}

int BoundedComplex::total_rank() const {
    int t = 0;
    for (int r : ranks_) t += r;
    return t;
}

MatrixMorphism BoundedComplex::diff(int n) const {
    int i = n - lo_ - 1;
    if (i < 0 || i >= static_cast<int>(diffs_.size())) return MatrixMorphism(ring_, rank(n - 1), rank(n));
    return diffs_[i];
}

bool BoundedComplex::operator==(const BoundedComplex& o) const {
    return ring_ == o.ring_ && lo_ == o.lo_ && ranks_ == o.ranks_ && diffs_ == o.diffs_;
}

// ---------------------------------------------------------------- chain maps

ChainMap ChainMap::make(BoundedComplex src, BoundedComplex tgt, int lo, std::vector<MatrixMorphism> comps) {
    if (src.ring() != tgt.ring()) throw UsageError("chain map between different rings");
    ChainMap f(std::move(src), std::move(tgt));
    f.lo_ = lo;
    f.comps_ = std::move(comps);
    for (size_t i = 0; i < f.comps_.size(); ++i) {
        int n = lo + static_cast<int>(i);
        if (f.comps_[i].ring() != f.src_.ring()) throw UsageError("chain map component over the wrong ring");
        if (f.comps_[i].rows() != f.tgt_.rank(n) || f.comps_[i].cols() != f.src_.rank(n))
            throw UsageError("chain map component shape mismatch at degree " + std::to_string(n));
    }
    int a = std::min(f.src_.lo(), f.tgt_.lo());
    int b = std::max(f.src_.hi(), f.tgt_.hi());
    for (int n = a; n <= b + 1; ++n) {
        if (f.tgt_.diff(n) * f.comp(n) != f.comp(n - 1) * f.src_.diff(n))
            throw UsageError("chain map does not commute with differentials at degree " + std::to_string(n));
    }
    return f;
}

ChainMap ChainMap::identity(const BoundedComplex& c) {
    std::vector<MatrixMorphism> comps;
    for (int n = c.lo(); n <= c.hi(); ++n) comps.push_back(MatrixMorphism::identity(c.ring(), c.rank(n)));
    return make(c, c, c.lo(), std::move(comps));
}

ChainMap ChainMap::zero(BoundedComplex src, BoundedComplex tgt) { return make(std::move(src), std::move(tgt), 0, {}); }

MatrixMorphism ChainMap::comp(int n) const {
    int i = n - lo_;
    if (i < 0 || i >= static_cast<int>(comps_.size())) return MatrixMorphism(src_.ring(), tgt_.rank(n), src_.rank(n));
    return comps_[i];
}

bool ChainMap::operator==(const ChainMap& o) const {
    if (src_ != o.src_ || tgt_ != o.tgt_) return false;
    int a = std::min(src_.lo(), tgt_.lo());
    int b = std::max(src_.hi(), tgt_.hi());
    for (int n = a; n <= b; ++n)
        if (comp(n) != o.comp(n)) return false;
    return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.tgt() != g.src()) throw UsageError("chain map composition mismatch");
    int a = std::min(f.src().lo(), g.tgt().lo());
    int b = std::max(f.src().hi(), g.tgt().hi());
    std::vector<MatrixMorphism> comps;
    for (int n = a; n <= b; ++n) comps.push_back(g.comp(n) * f.comp(n));
    return ChainMap::make(f.src(), g.tgt(), a, std::move(comps));
}

ChainMap cm_add(const ChainMap& a, const ChainMap& b) {
    if (a.src() != b.src() || a.tgt() != b.tgt()) throw UsageError("chain map addition mismatch");
    int lo = std::min(a.src().lo(), a.tgt().lo());
    int hi = std::max(a.src().hi(), a.tgt().hi());
    std::vector<MatrixMorphism> comps;
    for (int n = lo; n <= hi; ++n) comps.push_back(a.comp(n) + b.comp(n));
    return ChainMap::make(a.src(), a.tgt(), lo, std::move(comps));
}

ChainMap cm_sub(const ChainMap& a, const ChainMap& b) { return cm_add(a, cm_neg(b)); }

ChainMap cm_neg(const ChainMap& a) {
    int lo = std::min(a.src().lo(), a.tgt().lo());
    int hi = std::max(a.src().hi(), a.tgt().hi());
    std::vector<MatrixMorphism> comps;
    for (int n = lo; n <= hi; ++n) comps.push_back(-a.comp(n));
    return ChainMap::make(a.src(), a.tgt(), lo, std::move(comps));
}

MatrixMorphism DegreeOneMaps::comp(int n) const {
    int i = n - lo;
    if (i < 0 || i >= static_cast<int>(comps.size())) return MatrixMorphism(src.ring(), tgt.rank(n + 1), src.rank(n));
    return comps[i];
}

ChainMap boundary_of(const DegreeOneMaps& s) {
    int a = std::min(s.src.lo(), s.tgt.lo());
    int b = std::max(s.src.hi(), s.tgt.hi());
    std::vector<MatrixMorphism> comps;
    for (int n = a; n <= b; ++n) comps.push_back(s.tgt.diff(n + 1) * s.comp(n) + s.comp(n - 1) * s.src.diff(n));
    return ChainMap::make(s.src, s.tgt, a, std::move(comps));
}

Homotopy Homotopy::make(ChainMap f, ChainMap g, DegreeOneMaps s) {
    if (f.src() != g.src() || f.tgt() != g.tgt()) throw UsageError("homotopy between mismatched chain maps");
    if (s.src != f.src() || s.tgt != f.tgt()) throw UsageError("homotopy components over the wrong complexes");
    for (size_t i = 0; i < s.comps.size(); ++i) {
        int n = s.lo + static_cast<int>(i);
        if (s.comps[i].rows() != s.tgt.rank(n + 1) || s.comps[i].cols() != s.src.rank(n))
            throw UsageError("homotopy component shape mismatch at degree " + std::to_string(n));
    }
    if (cm_sub(f, g) != boundary_of(s)) throw UsageError("homotopy identity f - g = ds + sd fails");
    return Homotopy(std::move(f), std::move(g), std::move(s));
}

StrictSplit StrictSplit::make(const BoundedComplex& c, DegreeOneMaps s) {
    if (s.src != c || s.tgt != c) throw UsageError("strict split components over the wrong complex");
    Homotopy::make(ChainMap::identity(c), ChainMap::zero(c, c), s); // sd + ds = 1
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (!(s.comp(n + 1) * s.comp(n)).is_zero())
            throw UsageError("strict split fails ss = 0 at degree " + std::to_string(n));
    return StrictSplit(std::move(s));
}

HtpyEquivWitness HtpyEquivWitness::make(ChainMap fwd, ChainMap bwd, DegreeOneMaps h, DegreeOneMaps k) {
    if (bwd.src() != fwd.tgt() || bwd.tgt() != fwd.src()) throw UsageError("witness backward map mismatched");
    Homotopy hh = Homotopy::make(ChainMap::identity(fwd.src()), compose(bwd, fwd), std::move(h));
    Homotopy kk = Homotopy::make(ChainMap::identity(fwd.tgt()), compose(fwd, bwd), std::move(k));
    return HtpyEquivWitness{std::move(fwd), std::move(bwd), std::move(hh), std::move(kk)};
}

// ------------------------------------------------------------ constructions

BoundedComplex shift(const BoundedComplex& c, int n) {
    std::vector<int> ranks;
    std::vector<MatrixMorphism> diffs;
    for (int m = c.lo(); m <= c.hi(); ++m) ranks.push_back(c.rank(m));
    bool negate = (n % 2) != 0;
    for (int m = c.lo() + 1; m <= c.hi(); ++m) diffs.push_back(negate ? -c.diff(m) : c.diff(m));
    return BoundedComplex::make(c.ring(), c.lo() + n, std::move(ranks), std::move(diffs));
}

ChainMap shift(const ChainMap& f, int n) {
    BoundedComplex s = shift(f.src(), n), t = shift(f.tgt(), n);
    int a = std::min(s.lo(), t.lo());
    int b = std::max(s.hi(), t.hi());
    std::vector<MatrixMorphism> comps;
    for (int m = a; m <= b; ++m) comps.push_back(f.comp(m - n));
    return ChainMap::make(std::move(s), std::move(t), a, std::move(comps));
}

HtpyEquivWitness shift(const HtpyEquivWitness& w, int n) {
    ChainMap fwd = shift(w.fwd, n), bwd = shift(w.bwd, n);
    bool negate = (n % 2) != 0;
    auto shift_s = [&](const DegreeOneMaps& s) {
        DegreeOneMaps out{shift(s.src, n), shift(s.tgt, n), s.lo + n, {}};
        for (const auto& m : s.comps) out.comps.push_back(negate ? -m : m);
        return out;
    };
    return HtpyEquivWitness::make(fwd, bwd, shift_s(w.h.s()), shift_s(w.k.s()));
}

ConeData cone(const ChainMap& f) {
    const BoundedComplex& x = f.src();
    const BoundedComplex& y = f.tgt();
    const Ring& R = x.ring();
    int lo = std::min(x.lo() + 1, y.lo());
    int hi = std::max(x.hi() + 1, y.hi());
    if (x.is_empty() && y.is_empty()) {
        BoundedComplex c = BoundedComplex::empty(R);
        return {c, ChainMap::zero(y, c), ChainMap::zero(c, shift(x, 1))};
    }
    std::vector<int> ranks;
    std::vector<MatrixMorphism> diffs;
    for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(n - 1) + y.rank(n));
    for (int n = lo + 1; n <= hi; ++n) {
        MatrixMorphism d(R, x.rank(n - 2) + y.rank(n - 1), x.rank(n - 1) + y.rank(n));
        d.set_block(0, 0, -x.diff(n - 1));
        d.set_block(x.rank(n - 2), 0, f.comp(n - 1));
        d.set_block(x.rank(n - 2), x.rank(n - 1), y.diff(n));
        diffs.push_back(std::move(d));
    }
    BoundedComplex c = BoundedComplex::make(R, lo, std::move(ranks), std::move(diffs));

    std::vector<MatrixMorphism> incl, proj;
    for (int n = lo; n <= hi; ++n) {
        MatrixMorphism in(R, x.rank(n - 1) + y.rank(n), y.rank(n));
        in.set_block(x.rank(n - 1), 0, MatrixMorphism::identity(R, y.rank(n)));
        incl.push_back(std::move(in));
        MatrixMorphism pr(R, x.rank(n - 1), x.rank(n - 1) + y.rank(n));
        pr.set_block(0, 0, MatrixMorphism::identity(R, x.rank(n - 1)));
        proj.push_back(std::move(pr));
    }
    // components must be restated against the trimmed cone
    std::vector<MatrixMorphism> incl2, proj2;
    for (int n = lo; n <= hi; ++n) {
        if (c.rank(n) == x.rank(n - 1) + y.rank(n)) {
            incl2.push_back(incl[n - lo]);
            proj2.push_back(proj[n - lo]);
        } else {
            incl2.push_back(MatrixMorphism(R, c.rank(n), y.rank(n)));
            proj2.push_back(MatrixMorphism(R, x.rank(n - 1), c.rank(n)));
        }
    }
    ChainMap incl_map = ChainMap::make(y, c, lo, std::move(incl2));
    ChainMap proj_map = ChainMap::make(c, shift(x, 1), lo, std::move(proj2));
    return {std::move(c), std::move(incl_map), std::move(proj_map)};
}

CylinderData cylinder(const BoundedComplex& c) {
    const Ring& R = c.ring();
    int lo = c.lo(), hi = c.hi() + 1;
    std::vector<int> ranks;
    std::vector<MatrixMorphism> diffs;
    for (int n = lo; n <= hi; ++n) ranks.push_back(c.rank(n) + c.rank(n - 1) + c.rank(n));
    for (int n = lo + 1; n <= hi; ++n) {
        int r0 = c.rank(n - 1), r1 = c.rank(n - 2), r2 = c.rank(n - 1);
        MatrixMorphism d(R, r0 + r1 + r2, c.rank(n) + c.rank(n - 1) + c.rank(n));
        d.set_block(0, 0, c.diff(n));
        d.set_block(0, c.rank(n), MatrixMorphism::identity(R, c.rank(n - 1)));
        d.set_block(r0, c.rank(n), -c.diff(n - 1));
        d.set_block(r0 + r1, c.rank(n), -MatrixMorphism::identity(R, c.rank(n - 1)));
        d.set_block(r0 + r1, c.rank(n) + c.rank(n - 1), c.diff(n));
        diffs.push_back(std::move(d));
    }
    BoundedComplex cyl = BoundedComplex::make(R, lo, std::move(ranks), std::move(diffs));

    std::vector<MatrixMorphism> e0, e1, pr, contr;
    for (int n = lo; n <= hi; ++n) {
        int rn = c.rank(n), rm = c.rank(n - 1);
        MatrixMorphism i0(R, cyl.rank(n), rn), i1(R, cyl.rank(n), rn), p(R, rn, cyl.rank(n));
        if (cyl.rank(n) == rn + rm + rn) {
            i0.set_block(0, 0, MatrixMorphism::identity(R, rn));
            i1.set_block(rn + rm, 0, MatrixMorphism::identity(R, rn));
            p.set_block(0, 0, MatrixMorphism::identity(R, rn));
            p.set_block(0, rn + rm, MatrixMorphism::identity(R, rn));
        }
        e0.push_back(std::move(i0));
        e1.push_back(std::move(i1));
        pr.push_back(std::move(p));
    }
    for (int n = lo; n <= hi; ++n) {
        // sigma(x, y, z) = (0, -z, 0) : cyl_n -> cyl_{n+1}
        MatrixMorphism s(R, cyl.rank(n + 1), cyl.rank(n));
        if (cyl.rank(n + 1) == c.rank(n + 1) + c.rank(n) + c.rank(n + 1) &&
            cyl.rank(n) == c.rank(n) + c.rank(n - 1) + c.rank(n))
            s.set_block(c.rank(n + 1), c.rank(n) + c.rank(n - 1), -MatrixMorphism::identity(R, c.rank(n)));
        contr.push_back(std::move(s));
    }
    ChainMap end0 = ChainMap::make(c, cyl, lo, std::move(e0));
    ChainMap end1 = ChainMap::make(c, cyl, lo, std::move(e1));
    ChainMap proj = ChainMap::make(cyl, c, lo, std::move(pr));
    Homotopy h = Homotopy::make(ChainMap::identity(cyl), compose(end0, proj),
                                DegreeOneMaps{cyl, cyl, lo, std::move(contr)});
    return {std::move(cyl), std::move(end0), std::move(end1), std::move(proj), std::move(h)};
}

BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b) {
    if (a.ring() != b.ring()) throw UsageError("direct sum over different rings");
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    std::vector<int> ranks;
    std::vector<MatrixMorphism> diffs;
    for (int n = lo; n <= hi; ++n) ranks.push_back(a.rank(n) + b.rank(n));
    for (int n = lo + 1; n <= hi; ++n) diffs.push_back(rings::diag_sum(a.diff(n), b.diff(n)));
    return BoundedComplex::make(a.ring(), lo, std::move(ranks), std::move(diffs));
}

ChainMap dsum_map(const ChainMap& a, const ChainMap& b) {
    BoundedComplex s = direct_sum(a.src(), b.src());
    BoundedComplex t = direct_sum(a.tgt(), b.tgt());
    int lo = std::min(s.lo(), t.lo());
    int hi = std::max(s.hi(), t.hi());
    std::vector<MatrixMorphism> comps;
    for (int n = lo; n <= hi; ++n) {
        MatrixMorphism m(s.ring(), t.rank(n), s.rank(n));
        m.set_block(0, 0, a.comp(n));
        m.set_block(a.tgt().rank(n), a.src().rank(n), b.comp(n));
        comps.push_back(std::move(m));
    }
    return ChainMap::make(std::move(s), std::move(t), lo, std::move(comps));
}

// ------------------------------------------------------------------ homology

std::vector<std::vector<RingElem>> homology(const BoundedComplex& c) {
    const Ring& R = c.ring();
    if (!R.is_euclidean()) throw UsageError("homology needs a Euclidean ring or field; use contracting_homotopy for acyclicity");
    std::vector<std::vector<RingElem>> out;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        auto kvecs = rings::kernel_basis(c.diff(n));
        MatrixMorphism k(R, c.rank(n), static_cast<int>(kvecs.size()));
        for (int j = 0; j < k.cols(); ++j)
            for (int i = 0; i < k.rows(); ++i) k.set(i, j, kvecs[j][i]);
        auto x = rings::solve_matrix(k, c.diff(n + 1));
        if (!x) throw InternalError("image does not lie in the kernel");
        auto s = rings::smith_normal_form(*x);
        std::vector<RingElem> factors;
        int nmin = std::min(s.d.rows(), s.d.cols());
        for (int i = 0; i < nmin; ++i) {
            const RingElem& d = s.d.at(i, i);
            if (R.is_unit(d)) continue;
            factors.push_back(d);
        }
        for (int i = nmin; i < k.cols(); ++i) factors.push_back(R.zero());
        out.push_back(std::move(factors));
    }
    return out;
}

bool is_acyclic_euclidean(const BoundedComplex& c) {
    for (const auto& h : homology(c))
        if (!h.empty()) return false;
    return true;
}

// ---------------------------------------------------- contracting homotopies

std::optional<Homotopy> contracting_homotopy(const BoundedComplex& c, gen::Rng* rng) {
    const Ring& R = c.ring();
    std::vector<MatrixMorphism> comps;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        MatrixMorphism rhs = MatrixMorphism::identity(R, c.rank(n));
        if (n > c.lo()) rhs = rhs - comps.back() * c.diff(n);
        auto h = rings::solve_matrix(c.diff(n + 1), rhs);
        if (!h) return std::nullopt;
        if (rng && h->cols() > 0) {
            auto kb = rings::kernel_basis(c.diff(n + 1));
            for (int j = 0; j < h->cols(); ++j)
                for (const auto& kv : kb) {
                    RingElem coeff = gen::ring_elem(*rng, R, 1);
                    for (int i = 0; i < h->rows(); ++i) h->set(i, j, h->at(i, j) + coeff * kv[i]);
                }
        }
        comps.push_back(std::move(*h));
    }
    DegreeOneMaps s{c, c, c.lo(), std::move(comps)};
    return Homotopy::make(ChainMap::identity(c), ChainMap::zero(c, c), std::move(s));
}

// -------------------------------------------------------------- strict split

StrictSplit strict_split(const BoundedComplex& c, const Homotopy& h) {
    const Ring& R = c.ring();
    if (h.f().src() != c) throw UsageError("homotopy is not on the given complex");
    if (c.is_empty()) return StrictSplit::make(c, DegreeOneMaps{c, c, 0, {}});

    // Z_lo = C_lo; inductively eps_n : Z_n -> C_n, delta_n : C_n ->> Z_{n-1},
    // sigma_n = h_{n-1} eps_{n-1} a section of delta_n, pi_n the projection.
    std::vector<MatrixMorphism> eps, delta, sigma, pi;
    eps.push_back(MatrixMorphism::identity(R, c.rank(c.lo())));
    delta.push_back(MatrixMorphism(R, 0, c.rank(c.lo()))); // to Z_{lo-1} = 0
    sigma.push_back(MatrixMorphism(R, c.rank(c.lo()), 0));
    for (int n = c.lo() + 1; n <= c.hi(); ++n) {
        const MatrixMorphism& e_prev = eps.back();
        auto d_in_z = rings::solve_matrix(e_prev, c.diff(n));
        if (!d_in_z) throw UsageError("strict split: differential does not factor at degree " + std::to_string(n));
        auto ks = modcat::kernel_of_surjection(*d_in_z);
        if (!ks.split)
            throw UsageError("strict split: kernel extraction failed at degree " + std::to_string(n) + " (" +
                             ks.diagnostic + ")");
        MatrixMorphism sig = h.s().comp(n - 1) * e_prev;
        if (*d_in_z * sig != MatrixMorphism::identity(R, e_prev.cols()))
            throw InternalError("contracting homotopy does not section the cycle tower");
        delta.push_back(*d_in_z);
        sigma.push_back(std::move(sig));
        eps.push_back(ks.split->incl);
    }
    if (eps.back().cols() != 0) throw UsageError("strict split: complex is not contractible (top cycles persist)");

    for (int n = c.lo(); n <= c.hi(); ++n) {
        int i = n - c.lo();
        MatrixMorphism rhs = MatrixMorphism::identity(R, c.rank(n)) - sigma[i] * delta[i];
        auto p = rings::solve_matrix(eps[i], rhs);
        if (!p) throw InternalError("cycle projection must exist");
        pi.push_back(std::move(*p));
    }

    std::vector<MatrixMorphism> comps;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        int i = n - c.lo();
        if (n == c.hi()) {
            comps.push_back(MatrixMorphism(R, 0, c.rank(n)));
        } else {
            comps.push_back(sigma[i + 1] * pi[i]);
        }
    }
    return StrictSplit::make(c, DegreeOneMaps{c, c, c.lo(), std::move(comps)});
}

PhiData phi(const BoundedComplex& c, const StrictSplit& s) {
    if (s.complex() != c) throw UsageError("strict split is not on the given complex");
    const Ring& R = c.ring();
    std::vector<int> odd, even;
    int odd_total = 0, even_total = 0;
    std::vector<int> odd_off, even_off;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        if (((n % 2) + 2) % 2 == 1) {
            odd.push_back(n);
            odd_off.push_back(odd_total);
            odd_total += c.rank(n);
        } else {
            even.push_back(n);
            even_off.push_back(even_total);
            even_total += c.rank(n);
        }
    }
    auto off_of = [&](const std::vector<int>& degs, const std::vector<int>& offs, int n) -> int {
        for (size_t i = 0; i < degs.size(); ++i)
            if (degs[i] == n) return offs[i];
        return -1;
    };
    MatrixMorphism ph(R, even_total, odd_total);
    for (size_t i = 0; i < odd.size(); ++i) {
        int n = odd[i];
        int up = off_of(even, even_off, n + 1);
        if (up >= 0) ph.set_block(up, odd_off[i], s.comp(n));
        int down = off_of(even, even_off, n - 1);
        if (down >= 0) ph.set_block(down, odd_off[i], c.diff(n));
    }
    MatrixMorphism ph_inv(R, odd_total, even_total);
    for (size_t i = 0; i < even.size(); ++i) {
        int n = even[i];
        int up = off_of(odd, odd_off, n + 1);
        if (up >= 0) ph_inv.set_block(up, even_off[i], s.comp(n));
        int down = off_of(odd, odd_off, n - 1);
        if (down >= 0) ph_inv.set_block(down, even_off[i], c.diff(n));
    }
    if (!(ph * ph_inv).is_identity() || !(ph_inv * ph).is_identity())
        throw InternalError("phi is not invertible against its mirror");
    return {std::move(ph), std::move(ph_inv), std::move(odd), std::move(even)};
}

std::optional<SplitComparison> strict_split_comparison(const BoundedComplex& c, const StrictSplit& s,
                                                       const StrictSplit& s_prime) {
    PhiData a = phi(c, s);
    PhiData b = phi(c, s_prime);
    MatrixMorphism gamma = a.phi * b.phi_inv;
    if (!det(gamma).is_one()) return std::nullopt;
    auto w = modcat::elementary_decompose(gamma);
    if (!w) return std::nullopt;
    if (gamma * b.phi != a.phi) throw InternalError("gamma does not relate the two phis");
    return SplitComparison{std::move(gamma), std::move(*w)};
}

// ----------------------------------------------------------------- reduction

BoundedComplex reduce(const Surjection& f, const BoundedComplex& c) {
    std::vector<int> ranks;
    std::vector<MatrixMorphism> diffs;
    for (int n = c.lo(); n <= c.hi(); ++n) ranks.push_back(c.rank(n));
    for (int n = c.lo() + 1; n <= c.hi(); ++n) diffs.push_back(rings::reduce_matrix(f, c.diff(n)));
    return BoundedComplex::make(f.target(), c.lo(), std::move(ranks), std::move(diffs));
}

ChainMap reduce(const Surjection& f, const ChainMap& m, const BoundedComplex& rsrc, const BoundedComplex& rtgt) {
    int lo = std::min(m.src().lo(), m.tgt().lo());
    int hi = std::max(m.src().hi(), m.tgt().hi());
    std::vector<MatrixMorphism> comps;
    for (int n = lo; n <= hi; ++n) comps.push_back(rings::reduce_matrix(f, m.comp(n)));
    return ChainMap::make(rsrc, rtgt, lo, std::move(comps));
}

HtpyEquivWitness reduce(const Surjection& f, const HtpyEquivWitness& w) {
    BoundedComplex rs = reduce(f, w.fwd.src());
    BoundedComplex rt = reduce(f, w.fwd.tgt());
    ChainMap fwd = reduce(f, w.fwd, rs, rt);
    ChainMap bwd = reduce(f, w.bwd, rt, rs);
    auto reduce_s = [&](const DegreeOneMaps& s, const BoundedComplex& a, const BoundedComplex& b) {
        DegreeOneMaps out{a, b, s.lo, {}};
        for (const auto& m : s.comps) out.comps.push_back(rings::reduce_matrix(f, m));
        return out;
    };
    return HtpyEquivWitness::make(fwd, bwd, reduce_s(w.h.s(), rs, rs), reduce_s(w.k.s(), rt, rt));
}

// ---------------------------------------------------------- witness algebra

namespace {

ChainMap invert_chain_iso(const ChainMap& f) {
    int lo = std::min(f.src().lo(), f.tgt().lo());
    int hi = std::max(f.src().hi(), f.tgt().hi());
    std::vector<MatrixMorphism> comps;
    for (int n = lo; n <= hi; ++n) {
        auto inv = rings::inverse(f.comp(n));
        if (!inv) throw UsageError("chain map is not a degreewise isomorphism");
        comps.push_back(std::move(*inv));
    }
    return ChainMap::make(f.tgt(), f.src(), lo, std::move(comps));
}

DegreeOneMaps zero_s(const BoundedComplex& a, const BoundedComplex& b) { return DegreeOneMaps{a, b, 0, {}}; }

} // namespace

HtpyEquivWitness identity_witness(const BoundedComplex& c) {
    ChainMap id = ChainMap::identity(c);
    return HtpyEquivWitness::make(id, id, zero_s(c, c), zero_s(c, c));
}

HtpyEquivWitness iso_witness(const ChainMap& f) {
    ChainMap inv = invert_chain_iso(f);
    return HtpyEquivWitness::make(f, inv, zero_s(f.src(), f.src()), zero_s(f.tgt(), f.tgt()));
}

HtpyEquivWitness compose_witness(const HtpyEquivWitness& xy, const HtpyEquivWitness& yz) {
    if (xy.fwd.tgt() != yz.fwd.src()) throw UsageError("witness composition mismatch");
    const BoundedComplex& x = xy.fwd.src();
    const BoundedComplex& z = yz.fwd.tgt();
    ChainMap fwd = compose(yz.fwd, xy.fwd);
    ChainMap bwd = compose(xy.bwd, yz.bwd);
    DegreeOneMaps h{x, x, x.lo(), {}};
    for (int n = x.lo(); n <= x.hi(); ++n)
        h.comps.push_back(xy.h.s().comp(n) + xy.bwd.comp(n + 1) * yz.h.s().comp(n) * xy.fwd.comp(n));
    DegreeOneMaps k{z, z, z.lo(), {}};
    for (int n = z.lo(); n <= z.hi(); ++n)
        k.comps.push_back(yz.k.s().comp(n) + yz.fwd.comp(n + 1) * xy.k.s().comp(n) * yz.bwd.comp(n));
    return HtpyEquivWitness::make(std::move(fwd), std::move(bwd), std::move(h), std::move(k));
}

HtpyEquivWitness dsum_witness(const HtpyEquivWitness& a, const HtpyEquivWitness& b) {
    ChainMap fwd = dsum_map(a.fwd, b.fwd);
    ChainMap bwd = dsum_map(a.bwd, b.bwd);
    const BoundedComplex& s = fwd.src();
    const BoundedComplex& t = fwd.tgt();
    DegreeOneMaps h{s, s, s.lo(), {}};
    for (int n = s.lo(); n <= s.hi(); ++n) {
        MatrixMorphism m(s.ring(), s.rank(n + 1), s.rank(n));
        m.set_block(0, 0, a.h.s().comp(n));
        m.set_block(a.fwd.src().rank(n + 1), a.fwd.src().rank(n), b.h.s().comp(n));
        h.comps.push_back(std::move(m));
    }
    DegreeOneMaps k{t, t, t.lo(), {}};
    for (int n = t.lo(); n <= t.hi(); ++n) {
        MatrixMorphism m(t.ring(), t.rank(n + 1), t.rank(n));
        m.set_block(0, 0, a.k.s().comp(n));
        m.set_block(a.fwd.tgt().rank(n + 1), a.fwd.tgt().rank(n), b.k.s().comp(n));
        k.comps.push_back(std::move(m));
    }
    return HtpyEquivWitness::make(std::move(fwd), std::move(bwd), std::move(h), std::move(k));
}

HtpyEquivWitness perturb_witness(const HtpyEquivWitness& w, const DegreeOneMaps& tau) {
    const BoundedComplex& x = w.fwd.src();
    const BoundedComplex& y = w.fwd.tgt();
    if (tau.src != x || tau.tgt != y) throw UsageError("perturbation over the wrong complexes");
    ChainMap fwd = cm_add(w.fwd, boundary_of(tau));
    DegreeOneMaps h{x, x, x.lo(), {}};
    for (int n = x.lo(); n <= x.hi(); ++n) h.comps.push_back(w.h.s().comp(n) - w.bwd.comp(n + 1) * tau.comp(n));
    DegreeOneMaps k{y, y, y.lo(), {}};
    for (int n = y.lo(); n <= y.hi(); ++n) k.comps.push_back(w.k.s().comp(n) - tau.comp(n) * w.bwd.comp(n));
    return HtpyEquivWitness::make(std::move(fwd), w.bwd, std::move(h), std::move(k));
}

HtpyEquivWitness conjugate_witness(const HtpyEquivWitness& w, const ChainMap& src_iso, const ChainMap& tgt_iso) {
    if (src_iso.tgt() != w.fwd.src() || tgt_iso.src() != w.fwd.tgt()) throw UsageError("conjugation mismatch");
    ChainMap src_inv = invert_chain_iso(src_iso);
    ChainMap tgt_inv = invert_chain_iso(tgt_iso);
    ChainMap fwd = compose(tgt_iso, compose(w.fwd, src_iso));
    ChainMap bwd = compose(src_inv, compose(w.bwd, tgt_inv));
    const BoundedComplex& xs = src_iso.src();
    const BoundedComplex& yt = tgt_iso.tgt();
    DegreeOneMaps h{xs, xs, xs.lo(), {}};
    for (int n = xs.lo(); n <= xs.hi(); ++n)
        h.comps.push_back(src_inv.comp(n + 1) * w.h.s().comp(n) * src_iso.comp(n));
    DegreeOneMaps k{yt, yt, yt.lo(), {}};
    for (int n = yt.lo(); n <= yt.hi(); ++n)
        k.comps.push_back(tgt_iso.comp(n + 1) * w.k.s().comp(n) * tgt_inv.comp(n));
    return HtpyEquivWitness::make(std::move(fwd), std::move(bwd), std::move(h), std::move(k));
}

HtpyEquivWitness to_zero_witness(const BoundedComplex& c, const Homotopy& contraction) {
    if (contraction.f().src() != c) throw UsageError("contraction is not on the given complex");
    BoundedComplex z = BoundedComplex::empty(c.ring());
    ChainMap fwd = ChainMap::zero(c, z);
    ChainMap bwd = ChainMap::zero(z, c);
    return HtpyEquivWitness::make(fwd, bwd, contraction.s(), zero_s(z, z));
}

HtpyEquivWitness from_zero_witness(const BoundedComplex& c, const Homotopy& contraction) {
    if (contraction.f().src() != c) throw UsageError("contraction is not on the given complex");
    BoundedComplex z = BoundedComplex::empty(c.ring());
    ChainMap fwd = ChainMap::zero(z, c);
    ChainMap bwd = ChainMap::zero(c, z);
    return HtpyEquivWitness::make(fwd, bwd, zero_s(z, z), contraction.s());
}

} // namespace kzero::complexes
