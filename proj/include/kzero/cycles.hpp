#pragma once

// Zero-cycles with modulus on the affine line over a prime field, the cycle
// class map into the relative class group of F_p[t] ->> F_p[t]/f, a
// brute-force presentation of the cycle group by graph-curve relations,
// sheaf classes by invariant factors, trivializing loci, and transfer along
// finite free algebras.

#include <map>
#include <optional>

#include "kzero/relk0.hpp"

namespace kzero::cycles {

using poly::Coeffs;
using relk0::K0Class;
using relk0::RelContext;
using rings::MatrixMorphism;
using rings::Ring;
using rings::RingElem;

// X = affine line over F_p, D = V(f) with f monic nonconstant.
class ModulusPair {
public:
    ModulusPair(std::int64_t p, Coeffs f, std::string var = "t");

    std::int64_t p() const { return p_; }
    const Coeffs& f() const { return f_; }
    const std::string& var() const { return var_; }
    Ring line() const;  // F_p[t]
    Ring fiber() const; // F_p[t]/f
    rings::Surjection surjection() const;

private:
    std::int64_t p_;
    Coeffs f_;
    std::string var_;
};

// Finitely supported Z-combination of closed points (monic irreducibles).
class ZeroCycle {
public:
    explicit ZeroCycle(std::int64_t p) : p_(p) {}
    static ZeroCycle point(std::int64_t p, const Coeffs& g, std::int64_t mult = 1);

    std::int64_t p() const { return p_; }
    void add(const Coeffs& monic_irreducible, std::int64_t mult);
    const std::map<Coeffs, std::int64_t>& support() const { return m_; }
    bool is_zero() const { return m_.empty(); }
    ZeroCycle operator+(const ZeroCycle& o) const;
    ZeroCycle operator-() const;
    ZeroCycle operator-(const ZeroCycle& o) const { return *this + (-o); }
    bool operator==(const ZeroCycle& o) const { return p_ == o.p_ && m_ == o.m_; }

    // every support point coprime to f
    bool avoids(const Coeffs& f) const;

private:
    std::int64_t p_;
    std::map<Coeffs, std::int64_t> m_;
};

// Cycle of zeros of a polynomial, with multiplicities, by factorization.
ZeroCycle divisor_of(const ModulusPair& pair, const Coeffs& g);

// The modulus condition for the graph of g/h: after cancelling gcd(g, h),
// every irreducible divisor of f must appear in h to at least its order in f
// (equivalently ord_p f <= max(ord_p h - ord_p g, 0) for all p).
bool modulus_check(const Coeffs& g, const Coeffs& h, const ModulusPair& pair);

// The two fibers of the graph of g/h over 0 and 1: div(g) and div(g - h)
// after cancellation. Throws if a fiber meets V(f).
std::pair<ZeroCycle, ZeroCycle> graph_relation_boundary(const Coeffs& g, const Coeffs& h, const ModulusPair& pair);

// A validated admissible graph relation (canonical: gcd(g, h) = 1).
struct GraphRelation {
    Coeffs g, h;
    static GraphRelation make(const Coeffs& g, const Coeffs& h, const ModulusPair& pair);
};

// Class of a zero-cycle: project(prod g^mult). The resolution route is
// recomputed and compared on every call: the triple carrying the structure
// sheaf of the support evaluates to the inverse class (see cyc_point_chi).
K0Class cyc_point(const RelContext& ctx, const ZeroCycle& c, const ModulusPair& pair);

// The chi route on the triple whose first slot resolves the structure sheaf
// of the support: equals cyc_point(...)^-1.
K0Class cyc_point_chi(const RelContext& ctx, const ZeroCycle& c, const ModulusPair& pair, std::uint64_t seed = 0);

// Finite presentation of the cycle group modulo graph relations of bounded
// degree. The quotient is an upper bound for the true relation group: new
// relations only shrink it.
class ChowPresentation {
public:
    const std::vector<Coeffs>& generators() const { return gens_; }
    const std::vector<GraphRelation>& relations() const { return rels_; }
    int free_rank() const { return free_rank_; }
    const std::vector<std::int64_t>& torsion() const { return torsion_; } // nontrivial d_i
    std::optional<std::int64_t> order() const;                            // nullopt when infinite

    // normal-form coordinates of a cycle in the quotient
    std::vector<std::int64_t> project(const ZeroCycle& c) const;

private:
    friend ChowPresentation chow_presentation(const ModulusPair&, int, std::int64_t);
    std::vector<Coeffs> gens_;
    std::vector<GraphRelation> rels_;
    std::vector<std::vector<std::int64_t>> u_; // Smith transform, gens x gens
    std::vector<std::int64_t> diag_;           // d_i per row of u_ (1 = dead, 0 = free)
    std::vector<std::int64_t> torsion_;
    int free_rank_ = 0;
};

ChowPresentation chow_presentation(const ModulusPair& pair, int degree_bound, std::int64_t cap = (1 << 20));

struct CycleMapReport {
    int generators = 0;
    int relations_checked = 0;
    bool relations_respected = false;   // cyc(V0) = cyc(V1) for every admissible relation
    bool well_defined = false;          // relation rows die in the unit class group
    bool surjective = false;
    std::optional<std::int64_t> chow_order;
    int unit_group_order = 0;
    bool isomorphism = false;
    bool probe_found = false; // some non-admissible pair separates its fibers
    Coeffs probe_g, probe_h;
    bool pass() const { return relations_respected && well_defined && surjective && probe_found; }
};

CycleMapReport cycle_map_check(const ModulusPair& pair, int degree_bound, std::int64_t cap = (1 << 20));

struct SheafClassResult {
    K0Class cls;
    ZeroCycle decomposition;
    std::vector<Coeffs> invariant_factors; // nonunit ones
};

// Class and multiplicity decomposition of the module presented by a matrix
// over F_p[t]; support must be finite and disjoint from V(f).
SheafClassResult sheaf_class(const RelContext& ctx, const MatrixMorphism& presentation, const ModulusPair& pair);

struct LocusResult {
    std::vector<Coeffs> points; // irreducible factors of the lifted determinant
    Coeffs det_lift;
    bool certificate_ok = false; // adjugate identity + reduction consistency
};

// Closed points outside which the chi output of the triple lifts to an
// isomorphism: the irreducible factors of the entrywise least-degree lift of
// phi's determinant (automatically coprime to f).
LocusResult trivializing_locus(const RelContext& ctx, const relk0::RelTriple& t, const ModulusPair& pair,
                               std::uint64_t seed = 0);

// --- finite free algebras over the line and restriction of scalars ---

// S = base[y] / (monic min_poly), free of rank deg(min_poly) over base.
struct FreeAlgebra {
    Ring base;
    std::vector<RingElem> min_poly; // length rank+1, monic
    int rank() const { return static_cast<int>(min_poly.size()) - 1; }

    static FreeAlgebra make(Ring base, std::vector<RingElem> min_poly);
    FreeAlgebra reduce(const rings::Surjection& f) const; // S -> S/fS
};

using AlgElem = std::vector<RingElem>; // coefficients in the base, length rank

AlgElem alg_zero(const FreeAlgebra& s);
AlgElem alg_one(const FreeAlgebra& s);
AlgElem alg_add(const FreeAlgebra& s, const AlgElem& a, const AlgElem& b);
AlgElem alg_neg(const FreeAlgebra& s, const AlgElem& a);
AlgElem alg_mul(const FreeAlgebra& s, const AlgElem& a, const AlgElem& b);
MatrixMorphism mult_matrix(const FreeAlgebra& s, const AlgElem& a); // rank x rank over base
RingElem norm(const FreeAlgebra& s, const AlgElem& a);

struct AlgMatrix {
    FreeAlgebra alg;
    int rows = 0, cols = 0;
    std::vector<AlgElem> entries; // row-major
    const AlgElem& at(int i, int j) const { return entries[static_cast<size_t>(i) * cols + j]; }
};

AlgElem alg_det(const AlgMatrix& m); // division-free, like the scalar case
MatrixMorphism restrict_scalars(const AlgMatrix& m);

struct TransferResult {
    relk0::DegreewiseTriple triple; // over F_p[t] ->> F_p[t]/f
    RingElem norm_of_det;           // Norm(det_S phi) in F_p[t]/f
    bool norm_compatible = false;   // det(restricted phi) == Norm(det phi)
};

// Restriction of scalars for a degreewise triple (S^n, phi, S^n) over
// (S ->> S/fS); ranks multiply by rank(S).
TransferResult transfer_finite(const RelContext& ctx, const FreeAlgebra& s_over_line, const AlgMatrix& phi,
                               const ModulusPair& pair);

} // namespace kzero::cycles
