#pragma once

// The split exact category of finite free modules: kernels of split
// surjections with explicit sections, and the automorphism calculus of
// block-unitriangular (elementary) transformations.

#include <optional>
#include <string>
#include <vector>

#include "kzero/linalg.hpp"

namespace kzero::modcat {

using rings::MatrixMorphism;
using rings::Ring;
using rings::RingElem;

struct FreeModule {
    Ring ring;
    int rank;
    bool operator==(const FreeModule& o) const { return ring == o.ring && rank == o.rank; }
};

// One unitriangular factor: identity + `block` on the (top x bot) positions,
// where top and bot are disjoint index sets. Its determinant is 1 by shape.
struct ElementaryFactor {
    std::vector<int> top, bot;
    MatrixMorphism block; // |top| x |bot|

    MatrixMorphism realize(int n) const;
    ElementaryFactor inverted() const;
};

ElementaryFactor single_transvection(const Ring& r, int i, int j, RingElem c);

// A verified factorization of a determinant-1 automorphism into elementary
// factors. Construction recomputes the product and rejects mismatches.
class ElementaryWitness {
public:
    static ElementaryWitness make(const MatrixMorphism& automorphism, std::vector<ElementaryFactor> factors);
    static ElementaryWitness identity(const Ring& r, int n);

    const MatrixMorphism& automorphism() const { return auto_; }
    const std::vector<ElementaryFactor>& factors() const { return factors_; }
    int rank() const { return auto_.rows(); }

private:
    ElementaryWitness(MatrixMorphism a, std::vector<ElementaryFactor> f) : auto_(std::move(a)), factors_(std::move(f)) {}
    MatrixMorphism auto_;
    std::vector<ElementaryFactor> factors_;
};

// Kernel of a split surjection g : R^c ->> R^r together with the data that
// exhibits the source as kernel + target:
//   g . incl = 0,  g . section = 1,  incl . proj + section . g = 1.
struct KernelSplit {
    FreeModule kernel;
    MatrixMorphism incl;    // c x k
    MatrixMorphism proj;    // k x c
    MatrixMorphism section; // c x r
};

struct KernelResult {
    std::optional<KernelSplit> split;
    std::string diagnostic; // set when absent
};

KernelResult kernel_of_surjection(const MatrixMorphism& g,
                                  const std::optional<MatrixMorphism>& section_hint = std::nullopt);

// Normal form U g V = [I | 0] for a split surjection over a field, local or
// finite ring (or a Euclidean domain, via the Smith form). Fails exactly when
// g is not a split surjection.
struct EpiNormalForm {
    MatrixMorphism u, u_inv, v, v_inv;
};
std::optional<EpiNormalForm> epi_normal_form(const MatrixMorphism& g);

// Factor a determinant-1 matrix over a local or finite ring into transvections.
// Absent only if elimination stalls (possible over finite non-local rings).
std::optional<ElementaryWitness> elementary_decompose(const MatrixMorphism& alpha);

// The commutator realization of factor + 1 on P + P: u v u^-1 v^-1 equals the
// factor extended by the identity on the second copy.
struct CommutatorPair {
    MatrixMorphism u, v;
};
CommutatorPair commutator_witness(const ElementaryFactor& f, const Ring& r, int n);

// Per-factor commutators for a whole witness; the ordered product of the
// commutators equals automorphism + 1 on P + P.
std::vector<CommutatorPair> commutator_witnesses(const ElementaryWitness& w);

} // namespace kzero::modcat
