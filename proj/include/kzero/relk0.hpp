#pragma once

// Relative class groups of ring surjections.
//
// A triple (P, alpha, Q) carries two complexes over the source ring and a
// homotopy equivalence between their reductions. Its class lives in the unit
// class group B^x / image(A^x) and is computed through the Euler
// characteristic: contract the cone of alpha, assemble the odd-to-even
// isomorphism from a strict split, and take the determinant class.

#include <memory>
#include <optional>
#include <string>

#include "kzero/complexes.hpp"
#include "kzero/units.hpp"

namespace kzero::relk0 {

using complexes::BoundedComplex;
using complexes::HtpyEquivWitness;
using modcat::FreeModule;
using rings::MatrixMorphism;
using rings::Ring;
using rings::RingElem;
using rings::Surjection;
using rings::UnitClassGroup;

// A surjection together with its computed unit class group; build once,
// share freely (immutable).
class RelContext {
public:
    static RelContext make(const Surjection& f, std::int64_t cap = (1 << 20));

    const Surjection& f() const { return f_; }
    const Ring& source() const { return f_.source(); }
    const Ring& target() const { return f_.target(); }
    const UnitClassGroup& units() const { return *units_; }
    std::shared_ptr<const UnitClassGroup> units_ptr() const { return units_; }

private:
    RelContext(Surjection f, std::shared_ptr<const UnitClassGroup> u) : f_(std::move(f)), units_(std::move(u)) {}
    Surjection f_;
    std::shared_ptr<const UnitClassGroup> units_;
};

class K0Class {
public:
    K0Class(std::shared_ptr<const UnitClassGroup> group, int coset) : group_(std::move(group)), coset_(coset) {}

    int coset() const { return coset_; }
    const UnitClassGroup& group() const { return *group_; }
    bool is_identity() const { return coset_ == group_->identity(); }
    K0Class operator*(const K0Class& o) const;
    K0Class inverse() const { return K0Class(group_, group_->inv(coset_)); }
    bool operator==(const K0Class& o) const;
    bool operator!=(const K0Class& o) const { return !(*this == o); }
    std::string describe() const;

private:
    std::shared_ptr<const UnitClassGroup> group_;
    int coset_;
};

// (M, phi, N): free modules over the source, phi invertible over the target.
struct DegreewiseTriple {
    FreeModule m, n;
    MatrixMorphism phi; // n.rank x m.rank over the target ring

    static DegreewiseTriple make(const RelContext& ctx, int m_rank, int n_rank, MatrixMorphism phi);
};

// (P, alpha, Q): complexes over the source, alpha a homotopy equivalence
// between the reductions, carried with its full witness.
struct RelTriple {
    BoundedComplex p, q; // over the source ring
    HtpyEquivWitness alpha; // over the target ring, F(p) -> F(q)

    static RelTriple make(const RelContext& ctx, BoundedComplex p, BoundedComplex q, HtpyEquivWitness alpha);
};

// Signed formal sum of degreewise triples; audit trail for rewriting steps.
struct FormalRelWord {
    std::vector<std::pair<int, DegreewiseTriple>> terms; // sign in {+1, -1}
    K0Class evaluate(const RelContext& ctx) const;
};

// The Euler characteristic. Tie-breaking inside the strict split is
// deterministic given the seed; different seeds give independent splits.
DegreewiseTriple chi(const RelContext& ctx, const RelTriple& t, std::uint64_t seed = 0);

K0Class class_of(const RelContext& ctx, const DegreewiseTriple& t);
K0Class class_of(const RelContext& ctx, const RelTriple& t, std::uint64_t seed = 0);

// delta : units of the target (via invertible matrices) -> classes.
K0Class heller_delta(const RelContext& ctx, const MatrixMorphism& g_over_target);

// iota : alternating rank difference, the map to K0 of the source.
int iota_rank(const RelTriple& t);
int iota_rank(const DegreewiseTriple& t);

// Embed a degreewise triple as complexes concentrated in degree 0.
RelTriple embed(const RelContext& ctx, const DegreewiseTriple& t);

struct HellerReport {
    int group_order = 0;
    std::vector<std::int64_t> invariant_factors;
    bool image_dies = false;      // reductions of source units map to the identity class
    bool delta_surjective = false; // every coset is hit by a 1x1 delta
    bool iota_zero = false;        // sampled triples have alternating rank 0
    bool pass() const { return image_dies && delta_surjective && iota_zero; }
};

HellerReport heller_sequence_check(const RelContext& ctx, std::uint64_t seed = 1, int samples = 10);

} // namespace kzero::relk0
