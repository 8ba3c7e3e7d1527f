#pragma once

// Seeded generators for complexes, chain maps and homotopy-equivalence
// witnesses. Everything is built with its certificate: contractible complexes
// come from conjugated standard splits, equivalences from the witness algebra.

#include "kzero/complexes.hpp"
#include "kzero/gen.hpp"

namespace kzero::gen {

using complexes::BoundedComplex;
using complexes::ChainMap;
using complexes::DegreeOneMaps;
using complexes::HtpyEquivWitness;

// Conjugated standard contractible complex: C_n = Z_n + Z_{n-1} with the
// shift differential, twisted by random invertibles.
BoundedComplex contractible_complex(Rng& rng, const rings::Ring& r, int max_len = 5, int max_rank = 2,
                                    int lo_min = -1, int lo_max = 2);

// Random ranks, zero differential.
BoundedComplex zero_diff_complex(Rng& rng, const rings::Ring& r, int lo, int len, int max_rank = 2);

// Same ranks as c, differential conjugated by random invertibles; the iso
// maps the new complex onto c.
struct ConjugatedComplex {
    BoundedComplex complex;
    ChainMap iso; // complex -> c
};
ConjugatedComplex conjugate_complex(Rng& rng, const BoundedComplex& c);

// Random degree-one components between two complexes.
DegreeOneMaps degree_one_maps(Rng& rng, const BoundedComplex& src, const BoundedComplex& tgt, int mag = 2);

// A chain automorphism of c (degreewise invertible): u + d s + s d for a
// random unit u and random s, retried until invertible.
ChainMap chain_automorphism(Rng& rng, const BoundedComplex& c);

// Equivalence from c to a padded, conjugated, perturbed copy.
HtpyEquivWitness random_equivalence_from(Rng& rng, const BoundedComplex& c);

// Equivalence between two fresh complexes sharing a common core.
struct EquivalencePair {
    HtpyEquivWitness w; // src -> tgt
};
HtpyEquivWitness random_equivalence(Rng& rng, const rings::Ring& r, int max_len = 4, int max_rank = 2);

} // namespace kzero::gen
