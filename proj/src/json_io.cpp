#include "kzero/json_io.hpp"

namespace kzero::io {

using complexes::BoundedComplex;
using complexes::ChainMap;
using complexes::DegreeOneMaps;
using complexes::HtpyEquivWitness;
using rings::MatrixMorphism;
using rings::Ring;
using rings::RingElem;
using rings::RingKind;
using rings::Surjection;

json to_json(const Ring& r) {
    switch (r.kind()) {
    case RingKind::Integers: return json{{"kind", "integers"}};
    case RingKind::IntegersMod: return json{{"kind", "mod"}, {"n", r.characteristic_modulus()}};
    case RingKind::PrimeField: return json{{"kind", "prime_field"}, {"p", r.characteristic_modulus()}};
    case RingKind::PolyRing: return json{{"kind", "poly"}, {"p", r.characteristic_modulus()}, {"var", r.variable()}};
    case RingKind::PolyQuot:
        return json{{"kind", "poly_quot"},
                    {"p", r.characteristic_modulus()},
                    {"var", r.variable()},
                    {"modulus", r.quot_modulus()}};
    }
    throw InternalError("bad ring kind");
}

json to_json(const Surjection& f) { return json{{"source", to_json(f.source())}, {"target", to_json(f.target())}}; }

json to_json(const RingElem& e) {
    switch (e.ring().kind()) {
    case RingKind::PolyRing:
    case RingKind::PolyQuot: return json(e.payload());
    default: return json(e.payload()[0]);
    }
}

json to_json(const MatrixMorphism& m) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) entries.push_back(to_json(m.at(i, j)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json to_json(const BoundedComplex& c) {
    json ranks = json::array(), diffs = json::array();
    for (int n = c.lo(); n <= c.hi(); ++n) ranks.push_back(c.rank(n));
    for (int n = c.lo() + 1; n <= c.hi(); ++n) diffs.push_back(to_json(c.diff(n)));
    return json{{"lo", c.is_empty() ? 0 : c.lo()}, {"ranks", ranks}, {"diffs", diffs}};
}

json to_json(const ChainMap& f) {
    int lo = std::min(f.src().lo(), f.tgt().lo());
    int hi = std::max(f.src().hi(), f.tgt().hi());
    json comps = json::array();
    for (int n = lo; n <= hi; ++n) comps.push_back(to_json(f.comp(n)));
    return json{{"lo", lo}, {"comps", comps}};
}

json to_json(const DegreeOneMaps& s) {
    json comps = json::array();
    for (int n = s.src.lo(); n <= s.src.hi(); ++n) comps.push_back(to_json(s.comp(n)));
    return json{{"lo", s.src.is_empty() ? 0 : s.src.lo()}, {"comps", comps}};
}

json to_json(const HtpyEquivWitness& w) {
    return json{{"forward", to_json(w.fwd)},
                {"backward", to_json(w.bwd)},
                {"h", to_json(w.h.s())},
                {"k", to_json(w.k.s())}};
}

json to_json(const relk0::DegreewiseTriple& t) {
    return json{{"m_rank", t.m.rank}, {"n_rank", t.n.rank}, {"phi", to_json(t.phi)}};
}

json to_json(const relk0::RelTriple& t) {
    return json{{"p", to_json(t.p)}, {"q", to_json(t.q)}, {"alpha", to_json(t.alpha)}};
}

json to_json(const relk0::K0Class& c) {
    return json{{"coset", c.coset()}, {"representative", to_json(c.group().rep(c.coset()))}};
}

json to_json(const relk0::HellerReport& r) {
    return json{{"group_order", r.group_order},
                {"invariant_factors", r.invariant_factors},
                {"image_dies", r.image_dies},
                {"delta_surjective", r.delta_surjective},
                {"iota_zero", r.iota_zero},
                {"pass", r.pass()}};
}

// ------------------------------------------------------------------ reading

namespace {

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::int64_t need_int(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_number_integer()) throw ParseError(where + "." + key, "expected an integer");
    return v.get<std::int64_t>();
}

poly::Coeffs coeffs_of(const json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where, "expected a coefficient list");
    poly::Coeffs c;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw ParseError(where, "coefficients must be integers");
        c.push_back(x.get<std::int64_t>());
    }
    return c;
}

} // namespace

Ring ring_from_json(const json& j, const std::string& where) {
    std::string kind = need(j, "kind", where).get<std::string>();
    if (kind == "integers") return Ring::integers();
    if (kind == "mod") return Ring::integers_mod(need_int(j, "n", where));
    if (kind == "prime_field") return Ring::prime_field(need_int(j, "p", where));
    std::string var = j.contains("var") ? j.at("var").get<std::string>() : "t";
    if (kind == "poly") return Ring::poly_ring(need_int(j, "p", where), var);
    if (kind == "poly_quot")
        return Ring::poly_quot(need_int(j, "p", where), coeffs_of(need(j, "modulus", where), where + ".modulus"), var);
    throw ParseError(where + ".kind", "unknown ring kind '" + kind + "'");
}

Surjection surjection_from_json(const json& j, const std::string& where) {
    return Surjection::make(ring_from_json(need(j, "source", where), where + ".source"),
                            ring_from_json(need(j, "target", where), where + ".target"));
}

RingElem elem_from_json(const Ring& r, const json& j, const std::string& where) {
    if (j.is_number_integer()) return r.from_int(j.get<std::int64_t>());
    if (j.is_array()) return r.from_coeffs(coeffs_of(j, where));
    throw ParseError(where, "expected an integer or a coefficient list");
}

MatrixMorphism matrix_from_json(const Ring& r, const json& j, const std::string& where) {
    int rows = static_cast<int>(need_int(j, "rows", where));
    int cols = static_cast<int>(need_int(j, "cols", where));
    const json& entries = need(j, "entries", where);
    if (!entries.is_array() || static_cast<int>(entries.size()) != rows * cols)
        throw ParseError(where + ".entries", "expected rows*cols entries");
    MatrixMorphism m(r, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j2 = 0; j2 < cols; ++j2)
            m.set(i, j2, elem_from_json(r, entries[static_cast<size_t>(i) * cols + j2],
                                        where + ".entries[" + std::to_string(i * cols + j2) + "]"));
    return m;
}

BoundedComplex complex_from_json(const Ring& r, const json& j, const std::string& where) {
    int lo = static_cast<int>(need_int(j, "lo", where));
    const json& ranks_j = need(j, "ranks", where);
    const json& diffs_j = need(j, "diffs", where);
    if (!ranks_j.is_array() || !diffs_j.is_array()) throw ParseError(where, "ranks/diffs must be arrays");
    std::vector<int> ranks;
    for (const auto& x : ranks_j) ranks.push_back(x.get<int>());
    std::vector<MatrixMorphism> diffs;
    for (size_t i = 0; i < diffs_j.size(); ++i)
        diffs.push_back(matrix_from_json(r, diffs_j[i], where + ".diffs[" + std::to_string(i) + "]"));
    if (ranks.empty() ? !diffs.empty() : diffs.size() != ranks.size() - 1)
        throw ParseError(where, "expected one differential per adjacent degree pair");
    return BoundedComplex::make(r, lo, std::move(ranks), std::move(diffs));
}

ChainMap chain_map_from_json(const BoundedComplex& src, const BoundedComplex& tgt, const json& j,
                             const std::string& where) {
    int lo = static_cast<int>(need_int(j, "lo", where));
    const json& comps_j = need(j, "comps", where);
    std::vector<MatrixMorphism> comps;
    for (size_t i = 0; i < comps_j.size(); ++i)
        comps.push_back(matrix_from_json(src.ring(), comps_j[i], where + ".comps[" + std::to_string(i) + "]"));
    return ChainMap::make(src, tgt, lo, std::move(comps));
}

DegreeOneMaps degree_one_from_json(const BoundedComplex& src, const BoundedComplex& tgt, const json& j,
                                   const std::string& where) {
    int lo = static_cast<int>(need_int(j, "lo", where));
    const json& comps_j = need(j, "comps", where);
    DegreeOneMaps s{src, tgt, lo, {}};
    for (size_t i = 0; i < comps_j.size(); ++i)
        s.comps.push_back(matrix_from_json(src.ring(), comps_j[i], where + ".comps[" + std::to_string(i) + "]"));
    return s;
}

HtpyEquivWitness witness_from_json(const BoundedComplex& rsrc, const BoundedComplex& rtgt, const json& j,
                                   const std::string& where) {
    ChainMap fwd = chain_map_from_json(rsrc, rtgt, need(j, "forward", where), where + ".forward");
    ChainMap bwd = chain_map_from_json(rtgt, rsrc, need(j, "backward", where), where + ".backward");
    DegreeOneMaps h = degree_one_from_json(rsrc, rsrc, need(j, "h", where), where + ".h");
    DegreeOneMaps k = degree_one_from_json(rtgt, rtgt, need(j, "k", where), where + ".k");
    return HtpyEquivWitness::make(std::move(fwd), std::move(bwd), std::move(h), std::move(k));
}

relk0::DegreewiseTriple degreewise_from_json(const relk0::RelContext& ctx, const json& j, const std::string& where) {
    int m = static_cast<int>(need_int(j, "m_rank", where));
    int n = static_cast<int>(need_int(j, "n_rank", where));
    return relk0::DegreewiseTriple::make(ctx, m, n, matrix_from_json(ctx.target(), need(j, "phi", where), where + ".phi"));
}

relk0::RelTriple rel_triple_from_json(const relk0::RelContext& ctx, const json& j, const std::string& where) {
    BoundedComplex p = complex_from_json(ctx.source(), need(j, "p", where), where + ".p");
    BoundedComplex q = complex_from_json(ctx.source(), need(j, "q", where), where + ".q");
    BoundedComplex rp = complexes::reduce(ctx.f(), p);
    BoundedComplex rq = complexes::reduce(ctx.f(), q);
    HtpyEquivWitness w = witness_from_json(rp, rq, need(j, "alpha", where), where + ".alpha");
    return relk0::RelTriple::make(ctx, std::move(p), std::move(q), std::move(w));
}

std::string digest(const json& j) {
    std::string s = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace kzero::io
