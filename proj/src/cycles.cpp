#include "kzero/cycles.hpp"

#include <algorithm>
#include <set>

#include "kzero/errors.hpp"

namespace kzero::cycles {

using complexes::BoundedComplex;
using relk0::DegreewiseTriple;
using relk0::RelTriple;

ModulusPair::ModulusPair(std::int64_t p, Coeffs f, std::string var) : p_(p), f_(std::move(f)), var_(std::move(var)) {
    if (!poly::is_prime(p_)) throw UsageError("modulus pair needs a prime base field");
    f_ = poly::canon(std::move(f_), p_);
    if (poly::deg(f_) < 1 || !poly::is_monic(f_)) throw UsageError("modulus polynomial must be monic nonconstant");
}

Ring ModulusPair::line() const { return Ring::poly_ring(p_, var_); }
Ring ModulusPair::fiber() const { return Ring::poly_quot(p_, f_, var_); }
rings::Surjection ModulusPair::surjection() const { return rings::Surjection::make(line(), fiber()); }

ZeroCycle ZeroCycle::point(std::int64_t p, const Coeffs& g, std::int64_t mult) {
    ZeroCycle c(p);
    c.add(g, mult);
    return c;
}

void ZeroCycle::add(const Coeffs& g, std::int64_t mult) {
    if (mult == 0) return;
    if (!poly::is_monic(g) || poly::deg(g) < 1 || !poly::is_irreducible(g, p_))
        throw UsageError("zero-cycle support points must be monic irreducible");
    auto it = m_.find(g);
    if (it == m_.end()) {
        m_[g] = mult;
    } else {
        it->second += mult;
        if (it->second == 0) m_.erase(it);
    }
}

ZeroCycle ZeroCycle::operator+(const ZeroCycle& o) const {
    if (p_ != o.p_) throw UsageError("zero-cycles over different fields");
    ZeroCycle r(*this);
    for (const auto& [g, m] : o.m_) {
        auto it = r.m_.find(g);
        if (it == r.m_.end()) {
            r.m_[g] = m;
        } else {
            it->second += m;
            if (it->second == 0) r.m_.erase(it);
        }
    }
    return r;
}

ZeroCycle ZeroCycle::operator-() const {
    ZeroCycle r(p_);
    for (const auto& [g, m] : m_) r.m_[g] = -m;
    return r;
}

bool ZeroCycle::avoids(const Coeffs& f) const {
    for (const auto& [g, m] : m_)
        if (poly::rem(f, g, p_).empty()) return false;
    return true;
}

ZeroCycle divisor_of(const ModulusPair& pair, const Coeffs& g) {
    if (poly::is_zero(g)) throw UsageError("divisor of the zero polynomial");
    ZeroCycle c(pair.p());
    for (const auto& fac : poly::factor(g, pair.p()).factors) c.add(fac.base, fac.mult);
    return c;
}

bool modulus_check(const Coeffs& g, const Coeffs& h, const ModulusPair& pair) {
    if (poly::is_zero(g) && poly::is_zero(h)) throw UsageError("modulus check on the zero pair");
    if (poly::is_zero(h)) return false; // pole divisor is empty, f is not
    std::int64_t p = pair.p();
    Coeffs c = poly::gcd(g, h, p);
    Coeffs g0 = poly::is_zero(g) ? Coeffs{} : poly::divmod(g, c, p).first;
    Coeffs h0 = poly::divmod(h, c, p).first;
    for (const auto& fac : poly::factor(pair.f(), p).factors) {
        int ord_g = poly::is_zero(g0) ? 0 : poly::ord_at(g0, fac.base, p);
        int ord_h = poly::ord_at(h0, fac.base, p);
        int pole = std::max(ord_h - ord_g, 0);
        if (fac.mult > pole) return false;
    }
    return true;
}

std::pair<ZeroCycle, ZeroCycle> graph_relation_boundary(const Coeffs& g, const Coeffs& h, const ModulusPair& pair) {
    std::int64_t p = pair.p();
    if (poly::is_zero(g) || poly::is_zero(h)) throw UsageError("graph relation needs nonzero g and h");
    Coeffs c = poly::gcd(g, h, p);
    Coeffs g0 = poly::divmod(g, c, p).first;
    Coeffs h0 = poly::divmod(h, c, p).first;
    Coeffs diff = poly::sub(g0, h0, p);
    ZeroCycle v0 = poly::deg(g0) < 1 ? ZeroCycle(p) : divisor_of(pair, g0);
    ZeroCycle v1 = poly::is_zero(diff) || poly::deg(diff) < 1 ? ZeroCycle(p) : divisor_of(pair, diff);
    if (!v0.avoids(pair.f()) || !v1.avoids(pair.f())) throw UsageError("graph relation fiber meets the divisor");
    return {std::move(v0), std::move(v1)};
}

GraphRelation GraphRelation::make(const Coeffs& g, const Coeffs& h, const ModulusPair& pair) {
    std::int64_t p = pair.p();
    if (poly::is_zero(g) || poly::is_zero(h)) throw UsageError("graph relation needs nonzero g and h");
    Coeffs c = poly::gcd(g, h, p);
    Coeffs g0 = poly::divmod(g, c, p).first;
    Coeffs h0 = poly::divmod(h, c, p).first;
    if (poly::deg(g0) < 1 && poly::deg(h0) < 1) throw UsageError("graph relation must be dominant (g/h nonconstant)");
    if (!modulus_check(g0, h0, pair)) throw UsageError("graph relation fails the modulus condition");
    Coeffs diff = poly::sub(g0, h0, p);
    if (!poly::is_zero(g0) && poly::deg(poly::gcd(g0, pair.f(), p)) > 0)
        throw UsageError("fiber over 0 meets the divisor");
    if (!poly::is_zero(diff) && poly::deg(poly::gcd(diff, pair.f(), p)) > 0)
        throw UsageError("fiber over 1 meets the divisor");
    return GraphRelation{std::move(g0), std::move(h0)};
}

namespace {

// Resolution triple of a cycle: P is diagonal two-term with one factor per
// point power, Q = 0, alpha witnessed by contracting the reduction.
RelTriple point_triple(const RelContext& ctx, const ZeroCycle& c, std::uint64_t seed) {
    const Ring& A = ctx.source();
    std::vector<RingElem> diag;
    for (const auto& [g, m] : c.support()) {
        if (m < 0) throw UsageError("resolution triple needs an effective cycle");
        for (std::int64_t i = 0; i < m; ++i) diag.push_back(A.from_coeffs(g));
    }
    int k = static_cast<int>(diag.size());
    MatrixMorphism d(A, k, k);
    for (int i = 0; i < k; ++i) d.set(i, i, diag[i]);
    BoundedComplex p = BoundedComplex::two_term(d, 0);
    BoundedComplex rp = complexes::reduce(ctx.f(), p);
    gen::Rng rng(seed ^ 0xfeedfacecafeULL);
    auto h = complexes::contracting_homotopy(rp, &rng);
    if (!h) throw UsageError("cycle support meets the divisor: reduction is not contractible");
    return RelTriple::make(ctx, p, BoundedComplex::empty(A), complexes::to_zero_witness(rp, *h));
}

} // namespace

K0Class cyc_point_chi(const RelContext& ctx, const ZeroCycle& c, const ModulusPair& pair, std::uint64_t seed) {
    (void)pair;
    // split the cycle into effective and negative parts
    ZeroCycle pos(c.p()), neg(c.p());
    for (const auto& [g, m] : c.support()) {
        if (m > 0) pos.add(g, m);
        else neg.add(g, -m);
    }
    K0Class cls = relk0::class_of(ctx, point_triple(ctx, pos, seed), seed);
    if (!neg.is_zero()) cls = cls * relk0::class_of(ctx, point_triple(ctx, neg, seed + 1), seed + 1).inverse();
    return cls;
}

K0Class cyc_point(const RelContext& ctx, const ZeroCycle& c, const ModulusPair& pair) {
    if (!c.avoids(pair.f())) throw UsageError("cycle support meets the divisor");
    const Ring& B = ctx.target();
    RingElem prod = B.one();
    for (const auto& [g, m] : c.support()) {
        RingElem gb = B.from_coeffs(g);
        auto inv = B.inv(gb);
        if (!inv) throw UsageError("cycle support meets the divisor");
        RingElem base = m >= 0 ? gb : *inv;
        for (std::int64_t i = 0; i < (m >= 0 ? m : -m); ++i) prod = prod * base;
    }
    K0Class direct(ctx.units_ptr(), ctx.units().project(prod));
    // the resolution route: (O_V, 0, 0) carries the inverse class
    K0Class via_chi = cyc_point_chi(ctx, c, pair, 17);
    if (via_chi != direct.inverse())
        throw InternalError("resolution route disagrees with the direct projection");
    return direct;
}

ChowPresentation chow_presentation(const ModulusPair& pair, int degree_bound, std::int64_t cap) {
    std::int64_t p = pair.p();
    if (degree_bound < 0) throw UsageError("negative degree bound");
    // resource guard: p^(bound + deg f) candidates, and the actual pair count
    std::int64_t measure = 1;
    for (int i = 0; i < degree_bound + poly::deg(pair.f()); ++i) {
        measure *= p;
        if (measure > cap) throw ResourceError("degree bound exceeds the enumeration cap");
    }
    std::int64_t polys = 1;
    for (int i = 0; i <= degree_bound; ++i) {
        polys *= p;
        if (polys > cap) throw ResourceError("degree bound exceeds the enumeration cap");
    }
    if (polys > 0 && polys > cap / polys) throw ResourceError("degree bound exceeds the enumeration cap");

    ChowPresentation out;
    // generators: monic irreducibles of degree <= bound, coprime to f
    for (int d = 1; d <= degree_bound; ++d)
        for (const auto& tbl = poly::irreducibles_up_to(p, d); const auto& q : tbl[d])
            if (poly::deg(poly::gcd(q, pair.f(), p)) == 0) out.gens_.push_back(q);
    std::sort(out.gens_.begin(), out.gens_.end(), [](const Coeffs& a, const Coeffs& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    std::map<Coeffs, int> gen_index;
    for (size_t i = 0; i < out.gens_.size(); ++i) gen_index[out.gens_[i]] = static_cast<int>(i);

    // enumerate all coefficient vectors of degree <= bound (nonzero)
    std::vector<Coeffs> all;
    for (std::int64_t idx = 1; idx < polys; ++idx) {
        Coeffs c;
        std::int64_t v = idx;
        for (int i = 0; i <= degree_bound; ++i) {
            c.push_back(v % p);
            v /= p;
        }
        poly::trim(c);
        all.push_back(std::move(c));
    }

    std::set<std::vector<std::int64_t>> row_set;
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& g : all)
        for (const auto& h : all) {
            Coeffs c = poly::gcd(g, h, p);
            Coeffs g0 = poly::divmod(g, c, p).first;
            Coeffs h0 = poly::divmod(h, c, p).first;
            if (poly::deg(g0) < 1 && poly::deg(h0) < 1) continue; // constant map
            if (!modulus_check(g0, h0, pair)) continue;
            Coeffs diff = poly::sub(g0, h0, p);
            if (poly::deg(g0) >= 1 && poly::deg(poly::gcd(g0, pair.f(), p)) > 0) continue;
            if (poly::deg(diff) >= 1 && poly::deg(poly::gcd(diff, pair.f(), p)) > 0) continue;
            auto [v0, v1] = graph_relation_boundary(g0, h0, pair);
            ZeroCycle rel = v0 - v1;
            std::vector<std::int64_t> row(out.gens_.size(), 0);
            bool in_range = true;
            for (const auto& [q, m] : rel.support()) {
                auto it = gen_index.find(q);
                if (it == gen_index.end()) {
                    in_range = false; // cannot happen: factors have degree <= bound
                    break;
                }
                row[it->second] = m;
            }
            if (!in_range) continue;
            if (row_set.insert(row).second) {
                rows.push_back(row);
                out.rels_.push_back(GraphRelation{g0, h0});
            }
        }

    // quotient Z^gens / rowspace via the Smith form of the transpose
    const int n = static_cast<int>(out.gens_.size());
    const int m = static_cast<int>(rows.size());
    Ring z = Ring::integers();
    MatrixMorphism rt(z, n, std::max(m, 0));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) rt.set(i, j, z.from_int(rows[j][i]));
    auto s = rings::smith_normal_form(rt);
    out.u_.assign(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.u_[i][j] = s.u.at(i, j).payload()[0];
    out.diag_.assign(n, 0);
    int nmin = std::min(n, m);
    for (int i = 0; i < nmin; ++i) out.diag_[i] = s.d.at(i, i).payload()[0];
    for (int i = 0; i < n; ++i) {
        if (out.diag_[i] == 0) {
            ++out.free_rank_;
        } else if (out.diag_[i] != 1) {
            out.torsion_.push_back(out.diag_[i]);
        }
    }
    return out;
}

std::optional<std::int64_t> ChowPresentation::order() const {
    if (free_rank_ > 0) return std::nullopt;
    std::int64_t o = 1;
    for (auto d : torsion_) o *= d;
    return o;
}

std::vector<std::int64_t> ChowPresentation::project(const ZeroCycle& c) const {
    const int n = static_cast<int>(gens_.size());
    std::vector<std::int64_t> x(n, 0);
    for (const auto& [g, m] : c.support()) {
        auto it = std::find(gens_.begin(), gens_.end(), g);
        if (it == gens_.end()) throw UsageError("cycle point outside the generator degree bound");
        x[it - gens_.begin()] = m;
    }
    std::vector<std::int64_t> y(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) y[i] += u_[i][j] * x[j];
    for (int i = 0; i < n; ++i) {
        if (diag_[i] != 0) {
            y[i] %= diag_[i];
            if (y[i] < 0) y[i] += diag_[i];
        }
    }
    return y;
}

CycleMapReport cycle_map_check(const ModulusPair& pair, int degree_bound, std::int64_t cap) {
    CycleMapReport rep;
    auto ctx = RelContext::make(pair.surjection(), cap);
    ChowPresentation pres = chow_presentation(pair, degree_bound, cap);
    rep.generators = static_cast<int>(pres.generators().size());
    rep.unit_group_order = ctx.units().order();
    rep.chow_order = pres.order();

    // every admissible relation maps to equal classes
    rep.relations_respected = true;
    for (const auto& rel : pres.relations()) {
        auto [v0, v1] = graph_relation_boundary(rel.g, rel.h, pair);
        ++rep.relations_checked;
        if (!(cyc_point(ctx, v0, pair) == cyc_point(ctx, v1, pair))) rep.relations_respected = false;
    }
    rep.well_defined = rep.relations_respected;

    // surjectivity of the induced map
    std::set<int> image{ctx.units().identity()};
    bool grew = true;
    std::vector<int> gens_img;
    for (const auto& g : pres.generators())
        gens_img.push_back(cyc_point(ctx, ZeroCycle::point(pair.p(), g), pair).coset());
    while (grew) {
        grew = false;
        std::set<int> next = image;
        for (int a : image)
            for (int b : gens_img)
                if (next.insert(ctx.units().mul(a, b)).second) grew = true;
        image = next;
    }
    rep.surjective = static_cast<int>(image.size()) == ctx.units().order();
    rep.isomorphism = rep.surjective && rep.well_defined && rep.chow_order.has_value() &&
                      *rep.chow_order == rep.unit_group_order;

    // negative probe: a pair failing the modulus condition whose fibers split
    std::int64_t p = pair.p();
    std::int64_t polys = 1;
    for (int i = 0; i <= degree_bound; ++i) polys *= p;
    for (std::int64_t gi = 1; gi < polys && !rep.probe_found; ++gi)
        for (std::int64_t hi = 1; hi < polys && !rep.probe_found; ++hi) {
            Coeffs g, h;
            std::int64_t v = gi;
            for (int i = 0; i <= degree_bound; ++i) {
                g.push_back(v % p);
                v /= p;
            }
            v = hi;
            for (int i = 0; i <= degree_bound; ++i) {
                h.push_back(v % p);
                v /= p;
            }
            poly::trim(g);
            poly::trim(h);
            if (poly::is_zero(g) || poly::is_zero(h)) continue;
            Coeffs c = poly::gcd(g, h, p);
            Coeffs g0 = poly::divmod(g, c, p).first;
            Coeffs h0 = poly::divmod(h, c, p).first;
            if (poly::deg(g0) < 1 && poly::deg(h0) < 1) continue;
            if (modulus_check(g0, h0, pair)) continue; // admissible: not a probe
            Coeffs diff = poly::sub(g0, h0, p);
            if (poly::deg(g0) >= 1 && poly::deg(poly::gcd(g0, pair.f(), p)) > 0) continue;
            if (poly::is_zero(diff) || (poly::deg(diff) >= 1 && poly::deg(poly::gcd(diff, pair.f(), p)) > 0)) continue;
            auto [v0, v1] = graph_relation_boundary(g0, h0, pair);
            if (!(cyc_point(ctx, v0, pair) == cyc_point(ctx, v1, pair))) {
                rep.probe_found = true;
                rep.probe_g = g0;
                rep.probe_h = h0;
            }
        }
    return rep;
}

SheafClassResult sheaf_class(const RelContext& ctx, const MatrixMorphism& presentation, const ModulusPair& pair) {
    if (presentation.ring() != pair.line()) throw UsageError("presentation must live over the polynomial ring");
    auto s = rings::smith_normal_form(presentation);
    std::int64_t p = pair.p();
    int nmin = std::min(presentation.rows(), presentation.cols());
    int nonzero = 0;
    std::vector<Coeffs> factors;
    RingElem prod = ctx.target().one();
    ZeroCycle dec(p);
    for (int i = 0; i < nmin; ++i) {
        const RingElem& d = s.d.at(i, i);
        if (d.is_zero()) continue;
        ++nonzero;
        if (ctx.target().inv(ctx.f().reduce(d)) == std::nullopt)
            throw UsageError("module support meets the divisor");
        if (d.poly_degree() > 0) {
            factors.push_back(d.payload());
            for (const auto& fac : poly::factor(d.payload(), p).factors) dec.add(fac.base, fac.mult);
        }
        prod = prod * ctx.f().reduce(d);
    }
    if (nonzero != presentation.rows()) throw UsageError("module support is not finite (free summand present)");

    SheafClassResult out{K0Class(ctx.units_ptr(), ctx.units().project(prod)), std::move(dec), std::move(factors)};
    // the invariant-factor class must agree with the cycle class of the
    // multiplicity decomposition
    if (!(cyc_point(ctx, out.decomposition, pair) == out.cls))
        throw InternalError("sheaf class disagrees with its multiplicity cycle");
    return out;
}

LocusResult trivializing_locus(const RelContext& ctx, const RelTriple& t, const ModulusPair& pair, std::uint64_t seed) {
    DegreewiseTriple d = relk0::chi(ctx, t, seed);
    const Ring line = pair.line();
    MatrixMorphism lift(line, d.phi.rows(), d.phi.cols());
    for (int i = 0; i < d.phi.rows(); ++i)
        for (int j = 0; j < d.phi.cols(); ++j) lift.set(i, j, ctx.f().lift(d.phi.at(i, j)));
    RingElem dl = det(lift);
    LocusResult out;
    out.det_lift = dl.payload();
    if (dl.is_zero()) throw InternalError("lifted determinant vanished although det phi is a unit");
    // factors away from f (coprimality is automatic: det reduces to a unit)
    for (const auto& fac : poly::factor(dl.payload(), pair.p()).factors) out.points.push_back(fac.base);

    bool ok = poly::deg(poly::gcd(dl.payload(), pair.f(), pair.p())) == 0;
    ok = ok && ctx.f().reduce(dl) == det(d.phi);
    MatrixMorphism adj = rings::adjugate(lift);
    MatrixMorphism di(line, lift.rows(), lift.rows());
    for (int i = 0; i < lift.rows(); ++i) di.set(i, i, dl);
    ok = ok && (lift * adj == di) && (adj * lift == di);
    out.certificate_ok = ok;
    return out;
}

// ------------------------------------------------------------------ algebras

FreeAlgebra FreeAlgebra::make(Ring base, std::vector<RingElem> min_poly) {
    if (min_poly.size() < 2) throw UsageError("free algebra needs degree >= 1");
    for (const auto& c : min_poly)
        if (c.ring() != base) throw UsageError("min poly coefficients must live in the base ring");
    if (!min_poly.back().is_one()) throw UsageError("min poly must be monic");
    return FreeAlgebra{std::move(base), std::move(min_poly)};
}

FreeAlgebra FreeAlgebra::reduce(const rings::Surjection& f) const {
    std::vector<RingElem> mp;
    for (const auto& c : min_poly) mp.push_back(f.reduce(c));
    return FreeAlgebra{f.target(), std::move(mp)};
}

AlgElem alg_zero(const FreeAlgebra& s) { return AlgElem(s.rank(), s.base.zero()); }

AlgElem alg_one(const FreeAlgebra& s) {
    AlgElem e = alg_zero(s);
    e[0] = s.base.one();
    return e;
}

AlgElem alg_add(const FreeAlgebra& s, const AlgElem& a, const AlgElem& b) {
    AlgElem r = alg_zero(s);
    for (int i = 0; i < s.rank(); ++i) r[i] = a[i] + b[i];
    return r;
}

AlgElem alg_neg(const FreeAlgebra& s, const AlgElem& a) {
    AlgElem r = alg_zero(s);
    for (int i = 0; i < s.rank(); ++i) r[i] = -a[i];
    return r;
}

AlgElem alg_mul(const FreeAlgebra& s, const AlgElem& a, const AlgElem& b) {
    const int r = s.rank();
    std::vector<RingElem> conv(2 * r - 1, s.base.zero());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) conv[i + j] = conv[i + j] + a[i] * b[j];
    // reduce by the monic min poly: y^r = -(lower coefficients)
    for (int k = 2 * r - 2; k >= r; --k) {
        RingElem c = conv[k];
        if (c.is_zero()) continue;
        conv[k] = s.base.zero();
        for (int i = 0; i < r; ++i) conv[k - r + i] = conv[k - r + i] - c * s.min_poly[i];
    }
    conv.resize(r, s.base.zero());
    return conv;
}

MatrixMorphism mult_matrix(const FreeAlgebra& s, const AlgElem& a) {
    const int r = s.rank();
    MatrixMorphism m(s.base, r, r);
    AlgElem cur = a;
    AlgElem y = alg_zero(s);
    if (r >= 2) y[1] = s.base.one();
    for (int j = 0; j < r; ++j) {
        for (int i = 0; i < r; ++i) m.set(i, j, cur[i]);
        if (j + 1 < r) cur = alg_mul(s, cur, y);
    }
    return m;
}

RingElem norm(const FreeAlgebra& s, const AlgElem& a) { return det(mult_matrix(s, a)); }

AlgElem alg_det(const AlgMatrix& m) {
    if (m.rows != m.cols) throw UsageError("determinant of a non-square matrix");
    const FreeAlgebra& s = m.alg;
    const int n = m.rows;
    if (n == 0) return alg_one(s);
    std::vector<AlgElem> c{alg_one(s)};
    for (int r = 1; r <= n; ++r) {
        std::vector<AlgElem> f;
        f.push_back(alg_one(s));
        f.push_back(alg_neg(s, m.at(r - 1, r - 1)));
        std::vector<AlgElem> v;
        for (int i = 0; i < r - 1; ++i) v.push_back(m.at(i, r - 1));
        for (int k = 2; k <= r; ++k) {
            AlgElem acc = alg_zero(s);
            for (int i = 0; i < r - 1; ++i) acc = alg_add(s, acc, alg_mul(s, m.at(r - 1, i), v[i]));
            f.push_back(alg_neg(s, acc));
            if (k < r) {
                std::vector<AlgElem> w;
                for (int i = 0; i < r - 1; ++i) {
                    AlgElem t = alg_zero(s);
                    for (int j = 0; j < r - 1; ++j) t = alg_add(s, t, alg_mul(s, m.at(i, j), v[j]));
                    w.push_back(std::move(t));
                }
                v = std::move(w);
            }
        }
        std::vector<AlgElem> next;
        for (int i = 0; i <= r; ++i) {
            AlgElem acc = alg_zero(s);
            for (int j = 0; j <= std::min(i, r - 1); ++j) acc = alg_add(s, acc, alg_mul(s, f[i - j], c[j]));
            next.push_back(std::move(acc));
        }
        c = std::move(next);
    }
    AlgElem d = c[n];
    if (n % 2 == 1) d = alg_neg(s, d);
    return d;
}

MatrixMorphism restrict_scalars(const AlgMatrix& m) {
    const int r = m.alg.rank();
    MatrixMorphism out(m.alg.base, r * m.rows, r * m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.set_block(r * i, r * j, mult_matrix(m.alg, m.at(i, j)));
    return out;
}

TransferResult transfer_finite(const RelContext& ctx, const FreeAlgebra& s_over_line, const AlgMatrix& phi,
                               const ModulusPair& pair) {
    if (!(s_over_line.base == pair.line())) throw UsageError("algebra must be free over the polynomial ring");
    if (phi.rows != phi.cols) throw UsageError("transfer needs a square isomorphism");
    FreeAlgebra s_fiber = s_over_line.reduce(ctx.f());
    if (!(phi.alg.base == pair.fiber()) || phi.alg.min_poly != s_fiber.min_poly)
        throw UsageError("triple must live over the reduction of the algebra");

    AlgElem det_s = alg_det(phi);
    RingElem nrm = norm(s_fiber, det_s);
    if (!ctx.target().is_unit(nrm)) throw UsageError("transfer input is not invertible over the fiber algebra");

    MatrixMorphism restricted = restrict_scalars(phi);
    TransferResult out{relk0::DegreewiseTriple::make(ctx, restricted.cols(), restricted.rows(), restricted), nrm,
                       false};
    out.norm_compatible = det(restricted) == nrm;
    return out;
}

} // namespace kzero::cycles
