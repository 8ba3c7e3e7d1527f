#include "kzero/cxgen.hpp"

#include "kzero/errors.hpp"

namespace kzero::gen {

using complexes::cm_add;
using complexes::boundary_of;
using rings::MatrixMorphism;
using rings::Ring;

BoundedComplex contractible_complex(Rng& rng, const Ring& r, int max_len, int max_rank, int lo_min, int lo_max) {
    int len = 2 + static_cast<int>(rng.below(std::max(1, max_len - 1)));
    int lo = static_cast<int>(rng.range(lo_min, lo_max));
    // z[j] holds the cycle rank Z_{j-1}, so z[0] = z[len] = 0 at the ends
    std::vector<int> z(len + 1, 0);
    for (int j = 1; j < len; ++j) z[j] = static_cast<int>(rng.below(max_rank + 1));
    z[1] = std::max(z[1], 1);
    // C_i = Z_i + Z_{i-1}; (x, w) maps to (w, 0)
    std::vector<int> ranks(len);
    for (int i = 0; i < len; ++i) ranks[i] = z[i + 1] + z[i];
    std::vector<MatrixMorphism> diffs;
    for (int i = 1; i < len; ++i) {
        MatrixMorphism d(r, ranks[i - 1], ranks[i]);
        d.set_block(0, z[i + 1], MatrixMorphism::identity(r, z[i]));
        diffs.push_back(std::move(d));
    }
    BoundedComplex base = BoundedComplex::make(r, lo, std::move(ranks), std::move(diffs));
    return conjugate_complex(rng, base).complex;
}

BoundedComplex zero_diff_complex(Rng& rng, const Ring& r, int lo, int len, int max_rank) {
    std::vector<int> ranks(len);
    for (auto& x : ranks) x = static_cast<int>(rng.below(max_rank + 1));
    std::vector<MatrixMorphism> diffs;
    for (int i = 1; i < len; ++i) diffs.push_back(MatrixMorphism(r, ranks[i - 1], ranks[i]));
    return BoundedComplex::make(r, lo, std::move(ranks), std::move(diffs));
}

ConjugatedComplex conjugate_complex(Rng& rng, const BoundedComplex& c) {
    const Ring& r = c.ring();
    if (c.is_empty()) return {c, ChainMap::identity(c)};
    std::vector<MatrixMorphism> g, ginv;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        MatrixMorphism m = invertible(rng, r, c.rank(n));
        auto mi = rings::inverse(m);
        if (!mi) throw InternalError("generated invertible failed to invert");
        g.push_back(std::move(m));
        ginv.push_back(std::move(*mi));
    }
    std::vector<int> ranks;
    std::vector<MatrixMorphism> diffs;
    for (int n = c.lo(); n <= c.hi(); ++n) ranks.push_back(c.rank(n));
    for (int n = c.lo() + 1; n <= c.hi(); ++n)
        diffs.push_back(ginv[n - 1 - c.lo()] * c.diff(n) * g[n - c.lo()]);
    BoundedComplex conj = BoundedComplex::make(r, c.lo(), std::move(ranks), std::move(diffs));
    ChainMap iso = ChainMap::make(conj, c, c.lo(), std::move(g));
    return {std::move(conj), std::move(iso)};
}

DegreeOneMaps degree_one_maps(Rng& rng, const BoundedComplex& src, const BoundedComplex& tgt, int mag) {
    DegreeOneMaps s{src, tgt, src.lo(), {}};
    for (int n = src.lo(); n <= src.hi(); ++n) s.comps.push_back(matrix(rng, src.ring(), tgt.rank(n + 1), src.rank(n), mag));
    return s;
}

ChainMap chain_automorphism(Rng& rng, const BoundedComplex& c) {
    for (int tries = 0; tries < 50; ++tries) {
        rings::RingElem u = unit(rng, c.ring());
        DegreeOneMaps s = degree_one_maps(rng, c, c, 1);
        ChainMap cand = boundary_of(s);
        std::vector<MatrixMorphism> comps;
        bool ok = true;
        for (int n = c.lo(); n <= c.hi(); ++n) {
            MatrixMorphism m = rings::scalar_mul(u, MatrixMorphism::identity(c.ring(), c.rank(n))) + cand.comp(n);
            if (!rings::inverse(m)) {
                ok = false;
                break;
            }
            comps.push_back(std::move(m));
        }
        if (ok) return ChainMap::make(c, c, c.lo(), std::move(comps));
    }
    return ChainMap::identity(c);
}

HtpyEquivWitness random_equivalence_from(Rng& rng, const BoundedComplex& c) {
    const Ring& r = c.ring();
    HtpyEquivWitness w = complexes::identity_witness(c);
    // pad the target with a contractible summand
    if (rng.coin()) {
        BoundedComplex pad = contractible_complex(rng, r, 3, 1, c.lo(), std::max(c.lo(), c.hi() - 1));
        auto ph = complexes::contracting_homotopy(pad);
        if (!ph) throw InternalError("generated pad is not contractible");
        w = complexes::dsum_witness(w, complexes::from_zero_witness(pad, *ph));
    }
    // conjugate the target
    {
        auto conj = conjugate_complex(rng, w.fwd.tgt());
        // iso runs conj -> tgt; conjugation wants tgt -> conj
        std::vector<MatrixMorphism> comps;
        for (int n = conj.complex.lo(); n <= conj.complex.hi(); ++n) {
            auto inv = rings::inverse(conj.iso.comp(n));
            if (!inv) throw InternalError("conjugation iso not invertible");
            comps.push_back(std::move(*inv));
        }
        ChainMap up = ChainMap::make(w.fwd.tgt(), conj.complex, conj.complex.lo(), std::move(comps));
        w = complexes::conjugate_witness(w, ChainMap::identity(w.fwd.src()), up);
    }
    // perturb the forward map
    if (rng.coin()) {
        DegreeOneMaps tau = degree_one_maps(rng, w.fwd.src(), w.fwd.tgt(), 1);
        w = complexes::perturb_witness(w, tau);
    }
    return w;
}

HtpyEquivWitness random_equivalence(Rng& rng, const Ring& r, int max_len, int max_rank) {
    BoundedComplex core = zero_diff_complex(rng, r, static_cast<int>(rng.range(-1, 1)), max_len, max_rank);
    if (rng.coin()) {
        BoundedComplex pad = contractible_complex(rng, r, 3, 1, core.lo(), core.lo() + 1);
        core = complexes::direct_sum(core, pad);
    }
    HtpyEquivWitness left = random_equivalence_from(rng, core);  // core -> X
    HtpyEquivWitness right = random_equivalence_from(rng, core); // core -> Y
    // X -> core -> Y
    HtpyEquivWitness left_inv =
        HtpyEquivWitness::make(left.bwd, left.fwd, left.k.s(), left.h.s());
    return complexes::compose_witness(left_inv, right);
}

} // namespace kzero::gen
