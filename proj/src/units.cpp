#include "kzero/units.hpp"

#include <algorithm>
#include <set>

#include "kzero/errors.hpp"

namespace kzero::rings {

std::vector<RingElem> units_enumerate(const Ring& r, std::int64_t cap) {
    if (!r.is_finite()) throw UsageError("units_enumerate requires a finite ring");
    std::vector<RingElem> out;
    for (auto& e : r.elements(cap))
        if (r.is_unit(e)) out.push_back(std::move(e));
    return out;
}

namespace {

RingElem payload_to_elem(const Ring& r, const std::vector<std::int64_t>& payload) {
    switch (r.kind()) {
    case RingKind::PolyRing:
    case RingKind::PolyQuot: return r.from_coeffs(payload);
    default: return r.from_int(payload.empty() ? 0 : payload[0]);
    }
}

// Partition of the p-Sylow type from the counts s_j, where the number of
// solutions of x^(p^j) = e is p^(s_j). The differences s_j - s_{j-1} list the
// conjugate partition.
std::vector<int> sylow_partition(const std::vector<int>& s) {
    std::vector<int> parts;
    for (size_t j = 1; j < s.size(); ++j) {
        int m = s[j] - s[j - 1];
        for (int i = 0; i < m; ++i) {
            if (static_cast<size_t>(i) >= parts.size()) parts.push_back(0);
            parts[i] += 1;
        }
    }
    return parts; // weakly descending
}

} // namespace

UnitClassGroup unit_class_group(const Surjection& f, std::int64_t cap) {
    const Ring& A = f.source();
    const Ring& B = f.target();
    if (!B.is_finite()) throw UsageError("unit_class_group: target ring must be finite");

    // image generators of A^x in B^x
    std::vector<RingElem> gens;
    switch (A.kind()) {
    case RingKind::Integers: gens.push_back(f.reduce(A.from_int(-1))); break;
    case RingKind::PolyRing: {
        std::int64_t p = A.characteristic_modulus();
        for (std::int64_t c = 1; c < p; ++c) gens.push_back(f.reduce(A.from_int(c)));
        break;
    }
    default:
        if (!A.is_finite()) throw UsageError("unit_class_group: unsupported source ring " + A.describe());
        for (const auto& u : units_enumerate(A, cap)) gens.push_back(f.reduce(u));
        break;
    }

    // subgroup H = <gens> inside B^x
    std::set<std::vector<std::int64_t>> h_set;
    std::vector<RingElem> frontier{B.one()};
    h_set.insert(B.one().payload());
    while (!frontier.empty()) {
        std::vector<RingElem> next;
        for (const auto& h : frontier)
            for (const auto& g : gens) {
                RingElem x = h * g;
                if (h_set.insert(x.payload()).second) next.push_back(std::move(x));
            }
        frontier = std::move(next);
    }

    std::vector<RingElem> units = units_enumerate(B, cap);
    std::vector<RingElem> h_elems;
    for (const auto& u : units)
        if (h_set.count(u.payload())) h_elems.push_back(u);

    UnitClassGroup G(f);

    // canonical representative per coset: least u*h in enumeration order
    std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> canon;
    for (const auto& u : units) {
        RingElem best = u;
        for (const auto& h : h_elems) {
            RingElem x = u * h;
            if (Ring::elem_less(x, best)) best = x;
        }
        canon.emplace(u.payload(), best.payload());
    }
    std::set<std::vector<std::int64_t>> rep_keys;
    for (const auto& [u, r] : canon) rep_keys.insert(r);
    for (const auto& k : rep_keys) G.reps_.push_back(payload_to_elem(B, k));

    std::map<std::vector<std::int64_t>, int> rep_index;
    for (int i = 0; i < static_cast<int>(G.reps_.size()); ++i) rep_index[G.reps_[i].payload()] = i;
    for (const auto& [u, r] : canon) G.coset_of_[u] = rep_index.at(r);
    G.identity_ = G.coset_of_.at(B.one().payload());

    const int n = G.order();
    G.table_.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            G.table_[static_cast<size_t>(i) * n + j] = G.coset_of_.at((G.reps_[i] * G.reps_[j]).payload());

    G.inverse_.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (G.mul(i, j) == G.identity_) G.inverse_[i] = j;

    // invariant factors from per-prime power counting
    std::int64_t order = n;
    std::vector<std::pair<std::int64_t, std::vector<int>>> sylow; // (p, partition)
    for (std::int64_t p = 2; p <= order; ++p) {
        if (order % p != 0) continue;
        int vmax = 0;
        std::int64_t q = order;
        while (q % p == 0) {
            q /= p;
            ++vmax;
        }
        std::vector<int> s(vmax + 1, 0); // s[j]: log_p #solutions of x^(p^j) = e
        for (int j = 0; j <= vmax; ++j) {
            std::int64_t pj = 1;
            for (int k = 0; k < j; ++k) pj *= p;
            int count = 0;
            for (int x = 0; x < n; ++x) {
                int acc = G.identity_;
                for (std::int64_t k = 0; k < pj; ++k) acc = G.mul(acc, x);
                if (acc == G.identity_) ++count;
            }
            int log = 0;
            while (count > 1) {
                count /= static_cast<int>(p);
                ++log;
            }
            s[j] = log;
        }
        sylow.emplace_back(p, sylow_partition(s));
        while (order % p == 0) order /= p;
    }
    size_t width = 0;
    for (const auto& [p, parts] : sylow) width = std::max(width, parts.size());
    std::vector<std::int64_t> invf(width, 1);
    for (const auto& [p, parts] : sylow)
        for (size_t i = 0; i < parts.size(); ++i) {
            std::int64_t pe = 1;
            for (int k = 0; k < parts[i]; ++k) pe *= p;
            invf[i] *= pe;
        }
    // invf currently largest-first; store ascending so d_1 | d_2 | ...
    std::reverse(invf.begin(), invf.end());
    G.invariant_factors_ = std::move(invf);

    return G;
}

int UnitClassGroup::project(const RingElem& u) const {
    if (u.ring() != f_.target()) throw UsageError("project: element not in the target ring");
    auto it = coset_of_.find(u.payload());
    if (it == coset_of_.end()) throw UsageError("project: element is not a unit");
    return it->second;
}

} // namespace kzero::rings
