#include "kzero/suites.hpp"

#include "kzero/json_io.hpp"
#include "kzero/relgen.hpp"

namespace kzero::relk0 {

using complexes::BoundedComplex;
using complexes::ChainMap;
using complexes::DegreeOneMaps;
using complexes::HtpyEquivWitness;
using gen::Rng;
using nlohmann::json;
using rings::MatrixMorphism;
using rings::Ring;
using rings::RingElem;

namespace {

struct KindEntry {
    RelationKind kind;
    const char* name;
    const char* anchor;
};

constexpr KindEntry kKinds[] = {
    {RelationKind::RelAExact, "rel_a_exact", "class.additive_on_split_exact"},
    {RelationKind::RelBCompose, "rel_b_compose", "class.multiplicative_on_composition"},
    {RelationKind::Looparrow, "looparrow", "class.invariant_under_commutator_extension"},
    {RelationKind::GammaElementary, "gamma_elementary", "class.invariant_under_elementary_twist"},
    {RelationKind::ChiShift, "chi_shift", "euler.shift_sign"},
    {RelationKind::ChiExact, "chi_exact", "euler.additive_on_split_exact"},
    {RelationKind::ChiHomology, "chi_homology", "euler.matches_homology_classes"},
    {RelationKind::ChiComposite, "chi_composite", "euler.multiplicative_on_composition"},
    {RelationKind::QuasiIsoInvariance, "quasi_iso_invariance", "euler.quasi_iso_invariant"},
    {RelationKind::HomotopyInvariance, "homotopy_invariance", "euler.homotopy_invariant"},
    {RelationKind::Roundtrip, "roundtrip", "euler.inverse_to_embedding"},
};

struct RingSuiteEntry {
    RingSuiteKind kind;
    const char* name;
    const char* anchor;
};

constexpr RingSuiteEntry kRingSuites[] = {
    {RingSuiteKind::StrictSplitIdentities, "strict_split", "split.sd_ds_one_and_ss_zero"},
    {RingSuiteKind::SplitComparisonLemma, "split_compare", "split.phi_det_independent"},
    {RingSuiteKind::SplitGlueLemma, "split_glue", "split.glue_gamma_elementary"},
    {RingSuiteKind::ElementaryCommutator, "elementary_commutator", "elementary.stabilized_commutator"},
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x51f7ce535a2c1e9dULL + index * 0x9e3779b97f4a7c15ULL));
    return r.next();
}

K0Class identity_class(const RelContext& ctx) { return K0Class(ctx.units_ptr(), ctx.units().identity()); }

std::string mismatch(const K0Class& a, const K0Class& b) {
    return "classes differ: " + a.describe() + " vs " + b.describe();
}

// ---- per-kind checks; each returns (pass, detail) and fills the instance ----

CheckOutcome check_rel_a_exact(const RelContext& ctx, Rng& rng, json& inst) {
    const Ring& B = ctx.target();
    int n1 = 1 + static_cast<int>(rng.below(2));
    int n2 = 1 + static_cast<int>(rng.below(2));
    MatrixMorphism phi1 = gen::invertible(rng, B, n1);
    MatrixMorphism phi2 = gen::invertible(rng, B, n2);
    MatrixMorphism x = gen::matrix(rng, B, n1, n2, 2);
    MatrixMorphism phi0(B, n1 + n2, n1 + n2);
    phi0.set_block(0, 0, phi1);
    phi0.set_block(0, n1, x);
    phi0.set_block(n1, n1, phi2);
    // conjugate by reductions of invertibles over the source ring
    MatrixMorphism gm = gen::invertible(rng, ctx.source(), n1 + n2);
    MatrixMorphism gn = gen::invertible(rng, ctx.source(), n1 + n2);
    MatrixMorphism rgm = rings::reduce_matrix(ctx.f(), gm);
    MatrixMorphism rgn = rings::reduce_matrix(ctx.f(), gn);
    auto rgm_inv = rings::inverse(rgm);
    if (!rgm_inv) throw InternalError("reduced invertible must invert");
    MatrixMorphism phi = rgn * phi0 * *rgm_inv;

    // split exact structure maps over the source
    auto block_incl = [&](const MatrixMorphism& g, int top) {
        MatrixMorphism i(ctx.source(), n1 + n2, top);
        i.set_block(0, 0, MatrixMorphism::identity(ctx.source(), top));
        return g * i;
    };
    auto block_proj = [&](const MatrixMorphism& ginv, int top) {
        MatrixMorphism p(ctx.source(), n2, n1 + n2);
        p.set_block(0, top, MatrixMorphism::identity(ctx.source(), n2));
        return p * ginv;
    };
    auto gm_inv_a = rings::inverse(gm);
    auto gn_inv_a = rings::inverse(gn);
    if (!gm_inv_a || !gn_inv_a) throw InternalError("generated invertible must invert");
    MatrixMorphism im = block_incl(gm, n1), in = block_incl(gn, n1);
    MatrixMorphism pm = block_proj(*gm_inv_a, n1), pn = block_proj(*gn_inv_a, n1);

    DegreewiseTriple sub = DegreewiseTriple::make(ctx, n1, n1, phi1);
    DegreewiseTriple total = DegreewiseTriple::make(ctx, n1 + n2, n1 + n2, phi);
    DegreewiseTriple quot = DegreewiseTriple::make(ctx, n2, n2, phi2);
    inst = json{{"sub", io::to_json(sub)},       {"total", io::to_json(total)}, {"quot", io::to_json(quot)},
                {"incl_m", io::to_json(im)},     {"incl_n", io::to_json(in)},   {"proj_m", io::to_json(pm)},
                {"proj_n", io::to_json(pn)}};

    // exactness and compatibility, verified on the nose
    MatrixMorphism sm(ctx.source(), n1 + n2, n2);
    sm.set_block(n1, 0, MatrixMorphism::identity(ctx.source(), n2));
    sm = gm * sm; // section of pm
    if (!(pm * im).is_zero()) return {"", "", false, "inclusion followed by projection is nonzero", inst};
    if (!(pm * sm).is_identity()) return {"", "", false, "section fails", inst};
    if (!(rings::reduce_matrix(ctx.f(), in) * phi1 == phi * rings::reduce_matrix(ctx.f(), im)))
        return {"", "", false, "sub-square does not commute", inst};
    if (!(phi2 * rings::reduce_matrix(ctx.f(), pm) == rings::reduce_matrix(ctx.f(), pn) * phi))
        return {"", "", false, "quotient-square does not commute", inst};

    K0Class lhs = class_of(ctx, total);
    K0Class rhs = class_of(ctx, sub) * class_of(ctx, quot);
    if (lhs != rhs) return {"", "", false, mismatch(lhs, rhs), inst};
    // audit trail: the rewriting word [total] - [sub] - [quot] evaluates to 0
    FormalRelWord word{{{1, total}, {-1, sub}, {-1, quot}}};
    if (!word.evaluate(ctx).is_identity()) return {"", "", false, "formal word does not cancel", inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_rel_b_compose(const RelContext& ctx, Rng& rng, json& inst) {
    int n = 1 + static_cast<int>(rng.below(3));
    MatrixMorphism phi = gen::invertible(rng, ctx.target(), n);
    MatrixMorphism psi = gen::invertible(rng, ctx.target(), n);
    DegreewiseTriple ab = DegreewiseTriple::make(ctx, n, n, phi);
    DegreewiseTriple bc = DegreewiseTriple::make(ctx, n, n, psi);
    DegreewiseTriple ac = DegreewiseTriple::make(ctx, n, n, psi * phi);
    inst = json{{"first", io::to_json(ab)}, {"second", io::to_json(bc)}};
    K0Class lhs = class_of(ctx, ac);
    K0Class rhs = class_of(ctx, ab) * class_of(ctx, bc);
    if (lhs != rhs) return {"", "", false, mismatch(lhs, rhs), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_looparrow(const RelContext& ctx, Rng& rng, json& inst) {
    const Ring& B = ctx.target();
    int n1 = 1 + static_cast<int>(rng.below(2));
    int k = 1 + static_cast<int>(rng.below(2));
    MatrixMorphism phi1 = gen::invertible(rng, B, n1);
    MatrixMorphism y = gen::matrix(rng, B, n1, k, 2);
    MatrixMorphism g = gen::invertible(rng, B, n1 + k);
    MatrixMorphism h = gen::invertible(rng, B, n1 + k);
    auto gi = rings::inverse(g), hi = rings::inverse(h);
    if (!gi || !hi) throw InternalError("generated invertible must invert");
    MatrixMorphism gamma = g * h * *gi * *hi;
    // beta = gamma . alpha must be [[phi1, y],[0, 1]] for the sequence onto
    // (A^k, 1, A^k) to exist; alpha is recovered from it
    MatrixMorphism beta(B, n1 + k, n1 + k);
    beta.set_block(0, 0, phi1);
    beta.set_block(0, n1, y);
    beta.set_block(n1, n1, MatrixMorphism::identity(B, k));
    auto gamma_inv = rings::inverse(gamma);
    if (!gamma_inv) throw InternalError("commutator must invert");
    MatrixMorphism alpha = *gamma_inv * beta;

    DegreewiseTriple inner = DegreewiseTriple::make(ctx, n1, n1, phi1);
    DegreewiseTriple outer = DegreewiseTriple::make(ctx, n1 + k, n1 + k, alpha);
    inst = json{{"inner", io::to_json(inner)},
                {"outer", io::to_json(outer)},
                {"gamma_left", io::to_json(g)},
                {"gamma_right", io::to_json(h)}};
    K0Class lhs = class_of(ctx, outer);
    K0Class rhs = class_of(ctx, inner);
    if (lhs != rhs) return {"", "", false, mismatch(lhs, rhs), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_gamma_elementary(const RelContext& ctx, Rng& rng, json& inst) {
    const Ring& B = ctx.target();
    int n = 1 + static_cast<int>(rng.below(3));
    MatrixMorphism phi = gen::invertible(rng, B, n);
    // an explicit witness: a few random single transvections
    std::vector<modcat::ElementaryFactor> factors;
    MatrixMorphism prod = MatrixMorphism::identity(B, n);
    int steps = 1 + static_cast<int>(rng.below(3));
    for (int s = 0; s < steps && n >= 2; ++s) {
        MatrixMorphism tv = gen::transvection(rng, B, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && !tv.at(i, j).is_zero()) factors.push_back(modcat::single_transvection(B, i, j, tv.at(i, j)));
        prod = prod * tv;
    }
    auto w = modcat::ElementaryWitness::make(prod, std::move(factors));
    DegreewiseTriple base = DegreewiseTriple::make(ctx, n, n, phi);
    DegreewiseTriple twisted = DegreewiseTriple::make(ctx, n, n, w.automorphism() * phi);
    inst = json{{"triple", io::to_json(base)}, {"gamma", io::to_json(w.automorphism())}};
    K0Class lhs = class_of(ctx, twisted);
    K0Class rhs = class_of(ctx, base);
    if (lhs != rhs) return {"", "", false, mismatch(lhs, rhs), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_chi_shift(const RelContext& ctx, Rng& rng, json& inst) {
    RelTriple t = gen::random_rel_triple(rng, ctx);
    int n = 1 + static_cast<int>(rng.below(2));
    inst = json{{"triple", io::to_json(t)}, {"shift", n}};
    RelTriple ts = RelTriple::make(ctx, complexes::shift(t.p, n), complexes::shift(t.q, n), complexes::shift(t.alpha, n));
    K0Class base = class_of(ctx, t, rng.next());
    K0Class shifted = class_of(ctx, ts, rng.next());
    K0Class expect = (n % 2 == 1) ? base.inverse() : base;
    if (shifted != expect) return {"", "", false, mismatch(shifted, expect), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_chi_exact(const RelContext& ctx, Rng& rng, json& inst) {
    RelTriple sub = gen::random_rel_triple(rng, ctx);
    RelTriple quot = gen::random_rel_triple(rng, ctx);
    const Ring& A = ctx.source();
    int lo = std::min(sub.p.lo(), quot.p.lo());
    int hi = std::max(sub.p.hi(), quot.p.hi());

    // degree-preserving sigma_n : quot.p_n -> sub.p_n; the twist
    // x_n = d' sigma_n - sigma_{n-1} d'' keeps d.d = 0
    std::vector<MatrixMorphism> sigma;
    for (int n = lo - 1; n <= hi + 1; ++n) sigma.push_back(gen::matrix(rng, A, sub.p.rank(n), quot.p.rank(n), 1));
    auto sig = [&](int n) { return sigma[n - (lo - 1)]; };

    std::vector<int> ranks;
    std::vector<MatrixMorphism> diffs;
    for (int n = lo; n <= hi; ++n) ranks.push_back(sub.p.rank(n) + quot.p.rank(n));
    for (int n = lo + 1; n <= hi; ++n) {
        MatrixMorphism d(A, sub.p.rank(n - 1) + quot.p.rank(n - 1), sub.p.rank(n) + quot.p.rank(n));
        d.set_block(0, 0, sub.p.diff(n));
        d.set_block(0, sub.p.rank(n), sub.p.diff(n) * sig(n) - sig(n - 1) * quot.p.diff(n));
        d.set_block(sub.p.rank(n - 1), sub.p.rank(n), quot.p.diff(n));
        diffs.push_back(std::move(d));
    }
    BoundedComplex p = BoundedComplex::make(A, lo, std::move(ranks), std::move(diffs));
    BoundedComplex q = complexes::direct_sum(sub.q, quot.q);

    // U = [[1, sigma-bar],[0, 1]] : F(P) -> F(sub.p) + F(quot.p)
    BoundedComplex rp = complexes::reduce(ctx.f(), p);
    BoundedComplex rsum = complexes::direct_sum(complexes::reduce(ctx.f(), sub.p), complexes::reduce(ctx.f(), quot.p));
    std::vector<MatrixMorphism> ucomps;
    int ulo = std::min(rp.lo(), rsum.lo());
    int uhi = std::max(rp.hi(), rsum.hi());
    for (int n = ulo; n <= uhi; ++n) {
        MatrixMorphism u(ctx.target(), rsum.rank(n), rp.rank(n));
        int a1 = sub.p.rank(n), a2 = quot.p.rank(n);
        if (rsum.rank(n) == a1 + a2 && rp.rank(n) == a1 + a2 && a1 + a2 > 0) {
            u.set_block(0, 0, MatrixMorphism::identity(ctx.target(), a1));
            u.set_block(0, a1, rings::reduce_matrix(ctx.f(), sig(n)));
            u.set_block(a1, a1, MatrixMorphism::identity(ctx.target(), a2));
        }
        ucomps.push_back(std::move(u));
    }
    ChainMap u = ChainMap::make(rp, rsum, ulo, std::move(ucomps));
    HtpyEquivWitness alpha = complexes::compose_witness(complexes::iso_witness(u),
                                                        complexes::dsum_witness(sub.alpha, quot.alpha));
    RelTriple total = RelTriple::make(ctx, p, q, alpha);
    inst = json{{"sub", io::to_json(sub)}, {"quot", io::to_json(quot)}, {"total", io::to_json(total)}};

    // inclusion square over the target, on the nose
    {
        const BoundedComplex& rsubp = sub.alpha.fwd.src();
        const BoundedComplex& rsubq = sub.alpha.fwd.tgt();
        BoundedComplex rq = complexes::reduce(ctx.f(), q);
        for (int n = rsubp.lo(); n <= rsubp.hi(); ++n) {
            MatrixMorphism incl(ctx.target(), rp.rank(n), rsubp.rank(n));
            if (rp.rank(n) >= rsubp.rank(n))
                incl.set_block(0, 0, MatrixMorphism::identity(ctx.target(), rsubp.rank(n)));
            MatrixMorphism inclq(ctx.target(), rq.rank(n), rsubq.rank(n));
            if (rq.rank(n) >= rsubq.rank(n))
                inclq.set_block(0, 0, MatrixMorphism::identity(ctx.target(), rsubq.rank(n)));
            if (total.alpha.fwd.comp(n) * incl != inclq * sub.alpha.fwd.comp(n))
                return {"", "", false, "inclusion square broke at degree " + std::to_string(n), inst};
        }
    }

    K0Class lhs = class_of(ctx, total, rng.next());
    K0Class rhs = class_of(ctx, sub, rng.next()) * class_of(ctx, quot, rng.next());
    if (lhs != rhs) return {"", "", false, mismatch(lhs, rhs), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_chi_homology(const RelContext& ctx, Rng& rng, json& inst) {
    const Ring& A = ctx.source();
    // zero-differential core with degreewise isomorphisms over the target
    int lo = static_cast<int>(rng.range(-1, 1));
    int len = 1 + static_cast<int>(rng.below(3));
    std::vector<int> ranks(len);
    for (auto& r : ranks) r = static_cast<int>(rng.below(3));
    std::vector<MatrixMorphism> zero_diffs;
    for (int i = 1; i < len; ++i) zero_diffs.push_back(MatrixMorphism(A, ranks[i - 1], ranks[i]));
    BoundedComplex p0 = BoundedComplex::make(A, lo, ranks, std::move(zero_diffs));
    BoundedComplex q0 = p0;
    std::vector<MatrixMorphism> phis;
    for (int n = p0.lo(); n <= p0.hi(); ++n) phis.push_back(gen::invertible(rng, ctx.target(), p0.rank(n)));

    BoundedComplex rp0 = complexes::reduce(ctx.f(), p0);
    ChainMap iso = ChainMap::make(rp0, rp0, p0.is_empty() ? 0 : p0.lo(), phis);
    HtpyEquivWitness w = complexes::iso_witness(iso);

    // expected product of homology classes before padding obscures them
    K0Class expect = identity_class(ctx);
    for (int n = p0.lo(); n <= p0.hi(); ++n) {
        if (p0.rank(n) == 0) continue;
        K0Class c = class_of(ctx, DegreewiseTriple::make(ctx, p0.rank(n), p0.rank(n), iso.comp(n)));
        expect = expect * ((((n % 2) + 2) % 2 == 0) ? c : c.inverse());
    }

    // pad both sides with contractible complexes and perturb
    BoundedComplex ep = gen::contractible_complex(rng, A, 3, 1, p0.is_empty() ? 0 : p0.lo(), p0.is_empty() ? 0 : p0.hi());
    BoundedComplex eq = gen::contractible_complex(rng, A, 3, 1, p0.is_empty() ? 0 : p0.lo(), p0.is_empty() ? 0 : p0.hi());
    BoundedComplex rep = complexes::reduce(ctx.f(), ep);
    BoundedComplex req = complexes::reduce(ctx.f(), eq);
    auto hep = complexes::contracting_homotopy(rep, &rng);
    auto heq = complexes::contracting_homotopy(req, &rng);
    if (!hep || !heq) throw InternalError("pads must reduce to contractible complexes");
    HtpyEquivWitness pad = complexes::compose_witness(complexes::to_zero_witness(rep, *hep),
                                                      complexes::from_zero_witness(req, *heq));
    HtpyEquivWitness alpha = complexes::dsum_witness(w, pad);
    alpha = complexes::perturb_witness(alpha, gen::degree_one_maps(rng, alpha.fwd.src(), alpha.fwd.tgt(), 1));

    RelTriple t = RelTriple::make(ctx, complexes::direct_sum(p0, ep), complexes::direct_sum(q0, eq), alpha);
    inst = json{{"triple", io::to_json(t)}, {"core_lo", p0.is_empty() ? 0 : p0.lo()}};

    K0Class lhs = class_of(ctx, t, rng.next());
    if (lhs != expect) return {"", "", false, mismatch(lhs, expect), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_chi_composite(const RelContext& ctx, Rng& rng, json& inst) {
    RelTriple pq = gen::random_rel_triple(rng, ctx);
    // build (Q, beta, R) on the same middle complex
    auto conj = gen::conjugate_complex(rng, pq.q);
    BoundedComplex r = conj.complex;
    BoundedComplex rq = complexes::reduce(ctx.f(), pq.q);
    BoundedComplex rr = complexes::reduce(ctx.f(), r);
    ChainMap riso = complexes::reduce(ctx.f(), conj.iso, rr, rq); // F(R) -> F(Q)
    std::vector<MatrixMorphism> comps;
    for (int n = rq.lo(); n <= rq.hi(); ++n) {
        auto inv = rings::inverse(riso.comp(n));
        if (!inv) throw InternalError("reduced iso must invert");
        comps.push_back(std::move(*inv));
    }
    ChainMap fwd = ChainMap::make(rq, rr, rq.lo(), std::move(comps));
    HtpyEquivWitness beta = complexes::iso_witness(fwd);
    if (rng.coin()) beta = complexes::perturb_witness(beta, gen::degree_one_maps(rng, rq, rr, 1));

    RelTriple qr = RelTriple::make(ctx, pq.q, r, beta);
    RelTriple pr = RelTriple::make(ctx, pq.p, r, complexes::compose_witness(pq.alpha, beta));
    inst = json{{"pq", io::to_json(pq)}, {"qr", io::to_json(qr)}};
    K0Class lhs = class_of(ctx, pr, rng.next());
    K0Class rhs = class_of(ctx, pq, rng.next()) * class_of(ctx, qr, rng.next());
    if (lhs != rhs) return {"", "", false, mismatch(lhs, rhs), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_quasi_iso(const RelContext& ctx, Rng& rng, json& inst) {
    RelTriple t = gen::random_rel_triple(rng, ctx);
    const Ring& A = ctx.source();
    BoundedComplex ep = gen::contractible_complex(rng, A, 3, 1, t.p.lo(), std::max(t.p.lo(), t.p.hi()));
    BoundedComplex eq = gen::contractible_complex(rng, A, 3, 1, t.q.lo(), std::max(t.q.lo(), t.q.hi()));
    BoundedComplex p2 = complexes::direct_sum(t.p, ep);
    BoundedComplex q2 = complexes::direct_sum(t.q, eq);
    BoundedComplex rep = complexes::reduce(ctx.f(), ep);
    BoundedComplex req = complexes::reduce(ctx.f(), eq);
    auto hep = complexes::contracting_homotopy(rep, &rng);
    auto heq = complexes::contracting_homotopy(req, &rng);
    if (!hep || !heq) throw InternalError("pads must reduce to contractible complexes");
    HtpyEquivWitness eps = complexes::compose_witness(complexes::to_zero_witness(rep, *hep),
                                                      complexes::from_zero_witness(req, *heq));
    HtpyEquivWitness alpha2 = complexes::dsum_witness(t.alpha, eps);
    // y = d tau0 + tau0 d in the off-diagonal block, via a global perturbation
    // supported on (F(Q)-rows, F(E_P)-cols)
    BoundedComplex rp2 = alpha2.fwd.src();
    BoundedComplex rq2 = alpha2.fwd.tgt();
    DegreeOneMaps tau{rp2, rq2, rp2.lo(), {}};
    const BoundedComplex& rtq = t.alpha.fwd.tgt();
    const BoundedComplex& rtp = t.alpha.fwd.src();
    for (int n = rp2.lo(); n <= rp2.hi(); ++n) {
        MatrixMorphism m(ctx.target(), rq2.rank(n + 1), rp2.rank(n));
        MatrixMorphism blk = gen::matrix(rng, ctx.target(), rtq.rank(n + 1), rep.rank(n), 1);
        if (rq2.rank(n + 1) == rtq.rank(n + 1) + req.rank(n + 1) && rp2.rank(n) == rtp.rank(n) + rep.rank(n))
            m.set_block(0, rtp.rank(n), blk);
        tau.comps.push_back(std::move(m));
    }
    alpha2 = complexes::perturb_witness(alpha2, tau);

    RelTriple big = RelTriple::make(ctx, p2, q2, alpha2);
    inst = json{{"small", io::to_json(t)}, {"big", io::to_json(big)}};

    // the inclusions are quasi-isomorphisms over the source; the square with
    // alpha commutes on the first column by construction. verify it exactly.
    for (int n = rp2.lo(); n <= rp2.hi(); ++n) {
        MatrixMorphism incl(ctx.target(), rp2.rank(n), rtp.rank(n));
        if (rp2.rank(n) == rtp.rank(n) + rep.rank(n))
            incl.set_block(0, 0, MatrixMorphism::identity(ctx.target(), rtp.rank(n)));
        MatrixMorphism inclq(ctx.target(), rq2.rank(n), rtq.rank(n));
        if (rq2.rank(n) == rtq.rank(n) + req.rank(n))
            inclq.set_block(0, 0, MatrixMorphism::identity(ctx.target(), rtq.rank(n)));
        if (big.alpha.fwd.comp(n) * incl != inclq * t.alpha.fwd.comp(n))
            return {"", "", false, "commuting square broke at degree " + std::to_string(n), inst};
    }

    K0Class lhs = class_of(ctx, t, rng.next());
    K0Class rhs = class_of(ctx, big, rng.next());
    if (lhs != rhs) return {"", "", false, mismatch(lhs, rhs), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_homotopy_invariance(const RelContext& ctx, Rng& rng, json& inst) {
    RelTriple t = gen::random_rel_triple(rng, ctx);
    DegreeOneMaps tau = gen::degree_one_maps(rng, t.alpha.fwd.src(), t.alpha.fwd.tgt(), 1);
    HtpyEquivWitness beta = complexes::perturb_witness(t.alpha, tau);
    RelTriple tb = RelTriple::make(ctx, t.p, t.q, beta);
    inst = json{{"triple", io::to_json(t)}, {"tau", io::to_json(tau)}};
    K0Class lhs = class_of(ctx, t, rng.next());
    K0Class rhs = class_of(ctx, tb, rng.next());
    if (lhs != rhs) return {"", "", false, mismatch(lhs, rhs), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_roundtrip(const RelContext& ctx, Rng& rng, json& inst) {
    DegreewiseTriple d = gen::random_degreewise(rng, ctx);
    inst = json{{"triple", io::to_json(d)}};
    K0Class direct = class_of(ctx, d);
    K0Class via_chi = class_of(ctx, embed(ctx, d), rng.next());
    if (direct != via_chi) return {"", "", false, mismatch(direct, via_chi), inst};
    // chi stability: a complex-level triple classed under two independent splits
    RelTriple t = gen::random_rel_triple(rng, ctx);
    inst["stability_triple"] = io::to_json(t);
    K0Class a = class_of(ctx, t, rng.next());
    K0Class b = class_of(ctx, t, rng.next());
    if (a != b) return {"", "", false, "chi output depends on the split: " + mismatch(a, b), inst};
    return {"", "", true, "", inst};
}

// ---- ring-level structural checks ----

CheckOutcome check_strict_split_ring(const Ring& r, Rng& rng, json& inst) {
    BoundedComplex c = gen::contractible_complex(rng, r, 6, 2);
    inst = json{{"complex", io::to_json(c)}};
    auto h = complexes::contracting_homotopy(c, &rng);
    if (!h) return {"", "", false, "no contracting homotopy found on a contractible complex", inst};
    // make() throws if s d + d s != 1 or ss != 0; catch to report
    try {
        complexes::StrictSplit s = complexes::strict_split(c, *h);
        (void)s;
    } catch (const std::exception& e) {
        return {"", "", false, e.what(), inst};
    }
    return {"", "", true, "", inst};
}

CheckOutcome check_split_compare_ring(const Ring& r, Rng& rng, json& inst) {
    BoundedComplex c = gen::contractible_complex(rng, r, 6, 2);
    inst = json{{"complex", io::to_json(c)}};
    auto h1 = complexes::contracting_homotopy(c, &rng);
    auto h2 = complexes::contracting_homotopy(c, &rng);
    if (!h1 || !h2) return {"", "", false, "no contracting homotopy found", inst};
    auto s1 = complexes::strict_split(c, *h1);
    auto s2 = complexes::strict_split(c, *h2);
    auto cmp = complexes::strict_split_comparison(c, s1, s2);
    if (!cmp) return {"", "", false, "gamma between the two splits has no elementary witness", inst};
    RingElem d1 = det(complexes::phi(c, s1).phi);
    RingElem d2 = det(complexes::phi(c, s2).phi);
    if (d1 != d2) return {"", "", false, "phi determinants differ: " + r.format(d1) + " vs " + r.format(d2), inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_split_glue_ring(const Ring& r, Rng& rng, json& inst) {
    // random split epis d', d'' in standard form glued over a split exact
    // pair with a twist; s~ = f1 s' b + a s'' g2
    int kb = 1 + static_cast<int>(rng.below(2)), kk = static_cast<int>(rng.below(2));
    int kb2 = 1 + static_cast<int>(rng.below(2)), kk2 = static_cast<int>(rng.below(2));
    MatrixMorphism x = gen::matrix(rng, r, kb, kb2 + kk2, 2);
    inst = json{{"x", io::to_json(x)}, {"ranks", json::array({kb, kk, kb2, kk2})}};

    auto ident = [&](int n) { return MatrixMorphism::identity(r, n); };
    MatrixMorphism dp(r, kb, kb + kk);
    dp.set_block(0, 0, ident(kb));
    MatrixMorphism dpp(r, kb2, kb2 + kk2);
    dpp.set_block(0, 0, ident(kb2));
    MatrixMorphism sp(r, kb + kk, kb);
    sp.set_block(0, 0, ident(kb));
    MatrixMorphism spp(r, kb2 + kk2, kb2);
    spp.set_block(0, 0, ident(kb2));
    MatrixMorphism d(r, kb + kb2, (kb + kk) + (kb2 + kk2));
    d.set_block(0, 0, dp);
    d.set_block(0, kb + kk, x);
    d.set_block(kb, kb + kk, dpp);
    MatrixMorphism f1(r, (kb + kk) + (kb2 + kk2), kb + kk);
    f1.set_block(0, 0, ident(kb + kk));
    MatrixMorphism a(r, (kb + kk) + (kb2 + kk2), kb2 + kk2);
    a.set_block(kb + kk, 0, ident(kb2 + kk2));
    MatrixMorphism g1(r, kb2 + kk2, (kb + kk) + (kb2 + kk2));
    g1.set_block(0, kb + kk, ident(kb2 + kk2));
    MatrixMorphism g2(r, kb2, kb + kb2);
    g2.set_block(0, kb, ident(kb2));
    MatrixMorphism b(r, kb, kb + kb2);
    b.set_block(0, 0, ident(kb));
    MatrixMorphism f2(r, kb + kb2, kb);
    f2.set_block(0, 0, ident(kb));

    MatrixMorphism stilde = f1 * sp * b + a * spp * g2;
    if (stilde * f2 != f1 * sp) return {"", "", false, "glued split fails the sub compatibility", inst};
    if (g1 * stilde != spp * g2) return {"", "", false, "glued split fails the quotient compatibility", inst};
    MatrixMorphism gamma = d * stilde;
    if (gamma * f2 != f2 || g2 * gamma != g2) return {"", "", false, "gamma does not fix both legs", inst};
    if (!det(gamma).is_one()) return {"", "", false, "gamma determinant is not 1", inst};
    if (!modcat::elementary_decompose(gamma)) return {"", "", false, "gamma has no elementary witness", inst};
    return {"", "", true, "", inst};
}

CheckOutcome check_elementary_commutator_ring(const Ring& r, Rng& rng, json& inst) {
    int n = 1 + static_cast<int>(rng.below(3));
    MatrixMorphism m = gen::special_linear(rng, r, n);
    inst = json{{"matrix", io::to_json(m)}};
    auto w = modcat::elementary_decompose(m);
    if (!w) return {"", "", false, "no elementary decomposition found", inst};
    try {
        auto pairs = modcat::commutator_witnesses(*w); // verifies the product
        (void)pairs;
    } catch (const std::exception& e) {
        return {"", "", false, e.what(), inst};
    }
    return {"", "", true, "", inst};
}

} // namespace

const char* kind_name(RelationKind k) {
    for (const auto& e : kKinds)
        if (e.kind == k) return e.name;
    throw InternalError("unknown relation kind");
}

std::optional<RelationKind> kind_from_name(const std::string& name) {
    for (const auto& e : kKinds)
        if (name == e.name) return e.kind;
    return std::nullopt;
}

const std::vector<RelationKind>& all_relation_kinds() {
    static const std::vector<RelationKind> kinds = [] {
        std::vector<RelationKind> v;
        for (const auto& e : kKinds) v.push_back(e.kind);
        return v;
    }();
    return kinds;
}

const char* ring_suite_name(RingSuiteKind k) {
    for (const auto& e : kRingSuites)
        if (e.kind == k) return e.name;
    throw InternalError("unknown ring suite");
}

std::optional<RingSuiteKind> ring_suite_from_name(const std::string& name) {
    for (const auto& e : kRingSuites)
        if (name == e.name) return e.kind;
    return std::nullopt;
}

const std::vector<RingSuiteKind>& all_ring_suites() {
    static const std::vector<RingSuiteKind> kinds = [] {
        std::vector<RingSuiteKind> v;
        for (const auto& e : kRingSuites) v.push_back(e.kind);
        return v;
    }();
    return kinds;
}

CheckOutcome verify_relation(const RelContext& ctx, RelationKind kind, std::uint64_t seed, int index) {
    Rng rng(mix(seed, static_cast<std::uint64_t>(index)));
    json inst;
    CheckOutcome out;
    switch (kind) {
    case RelationKind::RelAExact: out = check_rel_a_exact(ctx, rng, inst); break;
    case RelationKind::RelBCompose: out = check_rel_b_compose(ctx, rng, inst); break;
    case RelationKind::Looparrow: out = check_looparrow(ctx, rng, inst); break;
    case RelationKind::GammaElementary: out = check_gamma_elementary(ctx, rng, inst); break;
    case RelationKind::ChiShift: out = check_chi_shift(ctx, rng, inst); break;
    case RelationKind::ChiExact: out = check_chi_exact(ctx, rng, inst); break;
    case RelationKind::ChiHomology: out = check_chi_homology(ctx, rng, inst); break;
    case RelationKind::ChiComposite: out = check_chi_composite(ctx, rng, inst); break;
    case RelationKind::QuasiIsoInvariance: out = check_quasi_iso(ctx, rng, inst); break;
    case RelationKind::HomotopyInvariance: out = check_homotopy_invariance(ctx, rng, inst); break;
    case RelationKind::Roundtrip: out = check_roundtrip(ctx, rng, inst); break;
    }
    const KindEntry* entry = nullptr;
    for (const auto& e : kKinds)
        if (e.kind == kind) entry = &e;
    out.id = std::string(entry->name) + "/" + ctx.f().describe() + "/seed" + std::to_string(seed) + "/" +
             std::to_string(index);
    out.anchor = entry->anchor;
    return out;
}

CheckOutcome verify_ring_property(const rings::Ring& r, RingSuiteKind kind, std::uint64_t seed, int index) {
    Rng rng(mix(seed, static_cast<std::uint64_t>(index) ^ 0xabcdef12345ULL));
    json inst;
    CheckOutcome out;
    switch (kind) {
    case RingSuiteKind::StrictSplitIdentities: out = check_strict_split_ring(r, rng, inst); break;
    case RingSuiteKind::SplitComparisonLemma: out = check_split_compare_ring(r, rng, inst); break;
    case RingSuiteKind::SplitGlueLemma: out = check_split_glue_ring(r, rng, inst); break;
    case RingSuiteKind::ElementaryCommutator: out = check_elementary_commutator_ring(r, rng, inst); break;
    }
    const RingSuiteEntry* entry = nullptr;
    for (const auto& e : kRingSuites)
        if (e.kind == kind) entry = &e;
    out.id = std::string(entry->name) + "/" + r.describe() + "/seed" + std::to_string(seed) + "/" + std::to_string(index);
    out.anchor = entry->anchor;
    return out;
}

SuiteResult run_relation_suite(const RelContext& ctx, RelationKind kind, std::uint64_t seed, int count) {
    SuiteResult res;
    for (int i = 0; i < count; ++i) {
        res.outcomes.push_back(verify_relation(ctx, kind, seed, i));
        if (!res.outcomes.back().pass) ++res.failures;
    }
    return res;
}

SuiteResult run_ring_suite(const rings::Ring& r, RingSuiteKind kind, std::uint64_t seed, int count) {
    SuiteResult res;
    for (int i = 0; i < count; ++i) {
        res.outcomes.push_back(verify_ring_property(r, kind, seed, i));
        if (!res.outcomes.back().pass) ++res.failures;
    }
    return res;
}

} // namespace kzero::relk0
