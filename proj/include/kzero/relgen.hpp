#pragma once

// Seeded generators for relative triples over a surjection. Every instance
// carries its exact witness by construction; nothing is certified after the
// fact.

#include "kzero/cxgen.hpp"
#include "kzero/relk0.hpp"

namespace kzero::gen {

relk0::DegreewiseTriple random_degreewise(Rng& rng, const relk0::RelContext& ctx, int max_rank = 3);

// A complex over the source ring: zero-differential core plus a conjugated
// contractible summand.
complexes::BoundedComplex random_source_complex(Rng& rng, const rings::Ring& a, int max_len = 3, int max_rank = 2);

// A triple (P, alpha, Q) whose witness mixes non-liftable target-side
// automorphisms, contractible pads and homotopy perturbations. Profiles:
//   0 embedded degreewise triple (padded),
//   1 shared-core construction,
//   2 two-term unit resolutions plus core,
// negative: choose by seed.
relk0::RelTriple random_rel_triple(Rng& rng, const relk0::RelContext& ctx, int profile = -1);

// A chain automorphism of the reduction of a complex (target-side twist).
complexes::ChainMap target_chain_automorphism(Rng& rng, const relk0::RelContext& ctx,
                                              const complexes::BoundedComplex& reduced);

} // namespace kzero::gen
