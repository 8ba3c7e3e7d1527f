#include "kzero/relgen.hpp"

#include "kzero/errors.hpp"

namespace kzero::gen {

using complexes::BoundedComplex;
using complexes::ChainMap;
using complexes::DegreeOneMaps;
using complexes::HtpyEquivWitness;
using relk0::DegreewiseTriple;
using relk0::RelContext;
using relk0::RelTriple;
using rings::MatrixMorphism;
using rings::Ring;

relk0::DegreewiseTriple random_degreewise(Rng& rng, const RelContext& ctx, int max_rank) {
    int n = 1 + static_cast<int>(rng.below(max_rank));
    MatrixMorphism phi = invertible(rng, ctx.target(), n);
    return DegreewiseTriple::make(ctx, n, n, std::move(phi));
}

BoundedComplex random_source_complex(Rng& rng, const Ring& a, int max_len, int max_rank) {
    BoundedComplex core = zero_diff_complex(rng, a, static_cast<int>(rng.range(-1, 1)), max_len, max_rank);
    if (rng.coin()) core = complexes::direct_sum(core, contractible_complex(rng, a, 3, 1));
    if (core.is_empty()) core = BoundedComplex::concentrated(a, 0, 1);
    return core;
}

ChainMap target_chain_automorphism(Rng& rng, const RelContext& ctx, const BoundedComplex& reduced) {
    if (reduced.ring() != ctx.target()) throw UsageError("automorphism requested over the wrong ring");
    return chain_automorphism(rng, reduced);
}

namespace {

// Witness between the reductions of p and q, where q was built to share p's
// reduction profile: q = conj_A(p) and the reductions are isomorphic via the
// reduced A-iso; twists on the target side follow.
HtpyEquivWitness decorate_target_side(Rng& rng, const RelContext& ctx, HtpyEquivWitness w) {
    // twist by a target-side chain automorphism
    if (rng.coin()) {
        ChainMap tw = chain_automorphism(rng, w.fwd.tgt());
        w = complexes::conjugate_witness(w, ChainMap::identity(w.fwd.src()), tw);
    }
    if (rng.coin()) {
        ChainMap tw = chain_automorphism(rng, w.fwd.src());
        w = complexes::conjugate_witness(w, tw, ChainMap::identity(w.fwd.tgt()));
    }
    if (rng.coin()) {
        DegreeOneMaps tau = degree_one_maps(rng, w.fwd.src(), w.fwd.tgt(), 1);
        w = complexes::perturb_witness(w, tau);
    }
    (void)ctx;
    return w;
}

} // namespace

RelTriple random_rel_triple(Rng& rng, const RelContext& ctx, int profile) {
    const Ring& a = ctx.source();
    if (profile < 0) profile = static_cast<int>(rng.below(3));
    switch (profile % 3) {
    case 0: {
        // embedded degreewise triple, optionally shifted and padded
        RelTriple t = relk0::embed(ctx, random_degreewise(rng, ctx));
        BoundedComplex pad = contractible_complex(rng, a, 3, 1);
        BoundedComplex p = complexes::direct_sum(t.p, pad);
        BoundedComplex rpad = complexes::reduce(ctx.f(), pad);
        auto hpad = complexes::contracting_homotopy(rpad, &rng);
        if (!hpad) throw InternalError("reduced contractible pad must contract");
        HtpyEquivWitness w =
            complexes::dsum_witness(t.alpha, complexes::to_zero_witness(rpad, *hpad));
        w = decorate_target_side(rng, ctx, w);
        return RelTriple::make(ctx, p, t.q, std::move(w));
    }
    case 1: {
        // shared core: q is an A-conjugate of p, witness is the reduced iso
        BoundedComplex p = random_source_complex(rng, a);
        auto conj = conjugate_complex(rng, p); // conj.complex -> p over A
        BoundedComplex q = conj.complex;
        BoundedComplex rp = complexes::reduce(ctx.f(), p);
        BoundedComplex rq = complexes::reduce(ctx.f(), q);
        // reduced inverse of the A-iso: F(q) -> F(p), so invert to get F(p) -> F(q)
        ChainMap riso = complexes::reduce(ctx.f(), conj.iso, rq, rp);
        std::vector<MatrixMorphism> comps;
        for (int n = rq.lo(); n <= rq.hi(); ++n) {
            auto inv = rings::inverse(riso.comp(n));
            if (!inv) throw InternalError("reduced conjugation iso must invert");
            comps.push_back(std::move(*inv));
        }
        ChainMap fwd = ChainMap::make(rp, rq, rq.lo(), std::move(comps));
        HtpyEquivWitness w = complexes::iso_witness(fwd);
        w = decorate_target_side(rng, ctx, w);
        return RelTriple::make(ctx, p, q, std::move(w));
    }
    default: {
        // two-term unit resolutions: P = [A ->u A] with u reducing to a unit,
        // Q = 0, alpha the zero map witnessed by contracting F(P)
        int k = 1 + static_cast<int>(rng.below(2));
        int degree = static_cast<int>(rng.range(-1, 1));
        MatrixMorphism m(a, k, k);
        // upper triangular with unit-reducing diagonal keeps det a unit mod f
        for (int i = 0; i < k; ++i) {
            m.set(i, i, ctx.f().lift(unit(rng, ctx.target())));
            for (int j = i + 1; j < k; ++j) m.set(i, j, ring_elem(rng, a, 2));
        }
        BoundedComplex p = BoundedComplex::two_term(m, degree);
        BoundedComplex q = BoundedComplex::empty(a);
        BoundedComplex rp = complexes::reduce(ctx.f(), p);
        auto h = complexes::contracting_homotopy(rp, &rng);
        if (!h) throw InternalError("unit resolution must reduce to a contractible complex");
        HtpyEquivWitness w = complexes::to_zero_witness(rp, *h);
        return RelTriple::make(ctx, p, q, std::move(w));
    }
    }
}

} // namespace kzero::gen
