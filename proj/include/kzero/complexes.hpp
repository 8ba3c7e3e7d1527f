#pragma once

// Bounded chain complexes of finite free modules and the homotopy toolkit:
// shift, cone, cylinder, homology over Euclidean rings, contracting
// homotopies, strict splits, and the odd-to-even isomorphism assembled from
// a strict split.
//
// Sign conventions (fixed once, used everywhere): shift negates the
// differential; cone(f) has differential [[-d_src, 0], [f, d_tgt]] on
// src_{n-1} + tgt_n.

#include <optional>
#include <vector>

#include "kzero/gen.hpp"
#include "kzero/linalg.hpp"
#include "kzero/modcat.hpp"

namespace kzero::complexes {

using rings::MatrixMorphism;
using rings::Ring;
using rings::RingElem;
using rings::Surjection;

class BoundedComplex {
public:
    // ranks[i] is the rank in degree lo+i; diffs[i] maps degree lo+i+1 to
    // lo+i. Zero ranks at either end are trimmed; d.d = 0 is enforced.
    static BoundedComplex make(const Ring& ring, int lo, std::vector<int> ranks, std::vector<MatrixMorphism> diffs);
    static BoundedComplex empty(const Ring& ring);
    // A single free module placed in one degree.
    static BoundedComplex concentrated(const Ring& ring, int degree, int rank);
    // Two-term complex [R^k ->m R^k] in degrees (degree+1, degree).
    static BoundedComplex two_term(const MatrixMorphism& m, int degree);

    const Ring& ring() const { return ring_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    bool is_empty() const { return ranks_.empty(); }
    int rank(int n) const;
    int total_rank() const;
    // d_n : C_n -> C_{n-1}; a zero matrix of the right shape outside range.
    MatrixMorphism diff(int n) const;

    bool operator==(const BoundedComplex& o) const;
    bool operator!=(const BoundedComplex& o) const { return !(*this == o); }

private:
    BoundedComplex(Ring r, int lo) : ring_(std::move(r)), lo_(lo) {}
    Ring ring_;
    int lo_;
    std::vector<int> ranks_;
    std::vector<MatrixMorphism> diffs_;
};

class ChainMap {
public:
    // comps[i] maps src degree lo+i to tgt degree lo+i; omitted degrees are 0.
    static ChainMap make(BoundedComplex src, BoundedComplex tgt, int lo, std::vector<MatrixMorphism> comps);
    static ChainMap identity(const BoundedComplex& c);
    static ChainMap zero(BoundedComplex src, BoundedComplex tgt);

    const BoundedComplex& src() const { return src_; }
    const BoundedComplex& tgt() const { return tgt_; }
    MatrixMorphism comp(int n) const; // tgt.rank(n) x src.rank(n)

    bool operator==(const ChainMap& o) const;

private:
    ChainMap(BoundedComplex s, BoundedComplex t) : src_(std::move(s)), tgt_(std::move(t)) {}
    BoundedComplex src_, tgt_;
    int lo_ = 0;
    std::vector<MatrixMorphism> comps_;
    friend ChainMap compose(const ChainMap&, const ChainMap&);
};

ChainMap compose(const ChainMap& g, const ChainMap& f); // g after f
ChainMap cm_add(const ChainMap& a, const ChainMap& b);
ChainMap cm_sub(const ChainMap& a, const ChainMap& b);
ChainMap cm_neg(const ChainMap& a);

// Degree +1 components between two complexes (not required to satisfy any
// identity); the raw material for homotopies and perturbations.
struct DegreeOneMaps {
    BoundedComplex src, tgt;
    int lo; // comps[i]: src.rank(lo+i) -> tgt.rank(lo+i+1)
    std::vector<MatrixMorphism> comps;
    MatrixMorphism comp(int n) const;
};

// d_tgt s + s d_src as a chain map src -> tgt.
ChainMap boundary_of(const DegreeOneMaps& s);

class Homotopy {
public:
    // Witnesses f - g = d s + s d.
    static Homotopy make(ChainMap f, ChainMap g, DegreeOneMaps s);

    const ChainMap& f() const { return f_; }
    const ChainMap& g() const { return g_; }
    const DegreeOneMaps& s() const { return s_; }

private:
    Homotopy(ChainMap f, ChainMap g, DegreeOneMaps s) : f_(std::move(f)), g_(std::move(g)), s_(std::move(s)) {}
    ChainMap f_, g_;
    DegreeOneMaps s_;
};

// s with s d + d s = 1 and s s = 0 on a contractible complex.
class StrictSplit {
public:
    static StrictSplit make(const BoundedComplex& c, DegreeOneMaps s);
    const BoundedComplex& complex() const { return s_.src; }
    const DegreeOneMaps& s() const { return s_; }
    MatrixMorphism comp(int n) const { return s_.comp(n); }

private:
    explicit StrictSplit(DegreeOneMaps s) : s_(std::move(s)) {}
    DegreeOneMaps s_;
};

// alpha : src -> tgt a homotopy equivalence with inverse and both homotopies
// carried as exact witnesses.
struct HtpyEquivWitness {
    ChainMap fwd, bwd;
    Homotopy h; // id_src ≃ bwd.fwd
    Homotopy k; // id_tgt ≃ fwd.bwd
    static HtpyEquivWitness make(ChainMap fwd, ChainMap bwd, DegreeOneMaps h, DegreeOneMaps k);
};

// --- constructions ---

BoundedComplex shift(const BoundedComplex& c, int n);
ChainMap shift(const ChainMap& f, int n);
HtpyEquivWitness shift(const HtpyEquivWitness& w, int n);

struct ConeData {
    BoundedComplex cone;
    ChainMap incl_tgt; // tgt -> cone
    ChainMap proj_src; // cone -> src[1]
};
ConeData cone(const ChainMap& f);

struct CylinderData {
    BoundedComplex cyl;
    ChainMap end0, end1; // c -> cyl
    ChainMap proj;       // cyl -> c, proj.end_i = id
    Homotopy contraction; // id_cyl ≃ end0.proj
};
CylinderData cylinder(const BoundedComplex& c);

BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b);
ChainMap dsum_map(const ChainMap& a, const ChainMap& b);

// Invariant factors of H_n per degree; 0 entries are free summands, units are
// dropped. Euclidean rings and fields only.
std::vector<std::vector<RingElem>> homology(const BoundedComplex& c);
bool is_acyclic_euclidean(const BoundedComplex& c);

// Solve for d h + h d = 1 degree by degree; nullopt exactly when the complex
// is not contractible (complete over finite rings and fields). A generator
// randomizes the solution within the solution space, so independent runs give
// independent homotopies.
std::optional<Homotopy> contracting_homotopy(const BoundedComplex& c, gen::Rng* rng = nullptr);

// The kernel-splitting construction: compute the cycle tower Z_n with free
// bases, split each short exact sequence with sections derived from h, and
// assemble s = sigma . pi. Both strict-split identities then hold by the
// block decomposition.
StrictSplit strict_split(const BoundedComplex& c, const Homotopy& h);

struct PhiData {
    MatrixMorphism phi;     // direct sum of odd degrees -> even degrees
    MatrixMorphism phi_inv; // checked two-sided inverse
    std::vector<int> odd_degrees, even_degrees;
};
PhiData phi(const BoundedComplex& c, const StrictSplit& s);

// gamma with phi_s = gamma . phi_s' and its verified elementary factorization.
struct SplitComparison {
    MatrixMorphism gamma;
    modcat::ElementaryWitness witness;
};
std::optional<SplitComparison> strict_split_comparison(const BoundedComplex& c, const StrictSplit& s,
                                                       const StrictSplit& s_prime);

// --- reduction along a ring surjection ---

BoundedComplex reduce(const Surjection& f, const BoundedComplex& c);
ChainMap reduce(const Surjection& f, const ChainMap& m, const BoundedComplex& rsrc, const BoundedComplex& rtgt);
HtpyEquivWitness reduce(const Surjection& f, const HtpyEquivWitness& w);

// --- witness algebra (all identities maintained exactly) ---

HtpyEquivWitness identity_witness(const BoundedComplex& c);
// f degreewise invertible.
HtpyEquivWitness iso_witness(const ChainMap& f);
HtpyEquivWitness compose_witness(const HtpyEquivWitness& xy, const HtpyEquivWitness& yz);
HtpyEquivWitness dsum_witness(const HtpyEquivWitness& a, const HtpyEquivWitness& b);
// Replace fwd by fwd + d tau + tau d.
HtpyEquivWitness perturb_witness(const HtpyEquivWitness& w, const DegreeOneMaps& tau);
// new_src -iso-> src -w-> tgt -iso-> new_tgt.
HtpyEquivWitness conjugate_witness(const HtpyEquivWitness& w, const ChainMap& src_iso, const ChainMap& tgt_iso);
// C contractible (homotopy supplied): C ≃ 0 and 0 ≃ C.
HtpyEquivWitness to_zero_witness(const BoundedComplex& c, const Homotopy& contraction);
HtpyEquivWitness from_zero_witness(const BoundedComplex& c, const Homotopy& contraction);

} // namespace kzero::complexes
