#include "kzero/poly.hpp"

#include <algorithm>

#include "kzero/errors.hpp"

namespace kzero::poly {

namespace {

std::int64_t norm_mod(std::int64_t x, std::int64_t p) {
    x %= p;
    return x < 0 ? x + p : x;
}

} // namespace

void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs canon(Coeffs a, std::int64_t p) {
    for (auto& c : a) c = norm_mod(c, p);
    trim(a);
    return a;
}

bool is_monic(const Coeffs& a) { return !a.empty() && a.back() == 1; }

std::int64_t inv_scalar(std::int64_t c, std::int64_t p) {
    c = norm_mod(c, p);
    if (c == 0) throw UsageError("inverse of zero in F_p");
    // extended Euclid on integers
    std::int64_t a = c, b = p, x0 = 1, x1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    return norm_mod(x0, p);
}

Coeffs make_monic(const Coeffs& a, std::int64_t p) {
    if (a.empty()) return a;
    return scale(a, inv_scalar(a.back(), p), p);
}

Coeffs add(const Coeffs& a, const Coeffs& b, std::int64_t p) {
    Coeffs r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::int64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = norm_mod(s, p);
    }
    trim(r);
    return r;
}

Coeffs neg(const Coeffs& a, std::int64_t p) {
    Coeffs r(a);
    for (auto& c : r) c = norm_mod(-c, p);
    return r;
}

Coeffs sub(const Coeffs& a, const Coeffs& b, std::int64_t p) { return add(a, neg(b, p), p); }

Coeffs mul(const Coeffs& a, const Coeffs& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = norm_mod(r[i + j] + a[i] * b[j], p);
    }
    trim(r);
    return r;
}

Coeffs scale(const Coeffs& a, std::int64_t c, std::int64_t p) {
    c = norm_mod(c, p);
    if (c == 0) return {};
    Coeffs r(a);
    for (auto& x : r) x = norm_mod(x * c, p);
    trim(r);
    return r;
}

std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, std::int64_t p) {
    if (b.empty()) throw UsageError("polynomial division by zero");
    Coeffs r = a;
    if (deg(a) < deg(b)) return {Coeffs{}, r};
    Coeffs q(a.size() - b.size() + 1, 0);
    std::int64_t lead_inv = inv_scalar(b.back(), p);
    for (int i = deg(r); i >= deg(b); --i) {
        std::int64_t c = norm_mod(r[i] * lead_inv, p);
        if (c == 0) continue;
        q[i - deg(b)] = c;
        for (size_t j = 0; j < b.size(); ++j) {
            size_t k = i - deg(b) + j;
            r[k] = norm_mod(r[k] - c * b[j], p);
        }
    }
    trim(q);
    trim(r);
    return {q, r};
}

Coeffs rem(const Coeffs& a, const Coeffs& b, std::int64_t p) { return divmod(a, b, p).second; }

Coeffs gcd(const Coeffs& a, const Coeffs& b, std::int64_t p) {
    Coeffs x = a, y = b;
    while (!y.empty()) {
        Coeffs r = rem(x, y, p);
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x, p);
}

Coeffs ext_gcd(const Coeffs& a, const Coeffs& b, std::int64_t p, Coeffs& x, Coeffs& y) {
    Coeffs r0 = a, r1 = b;
    Coeffs x0{1}, x1{}, y0{}, y1{1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        Coeffs xt = sub(x0, mul(q, x1, p), p);
        x0 = std::move(x1);
        x1 = std::move(xt);
        Coeffs yt = sub(y0, mul(q, y1, p), p);
        y0 = std::move(y1);
        y1 = std::move(yt);
    }
    if (r0.empty()) {
        x = {};
        y = {};
        return {};
    }
    std::int64_t c = inv_scalar(r0.back(), p);
    x = scale(x0, c, p);
    y = scale(y0, c, p);
    return scale(r0, c, p);
}

std::optional<Coeffs> inv_mod(const Coeffs& a, const Coeffs& f, std::int64_t p) {
    Coeffs x, y;
    Coeffs g = ext_gcd(rem(a, f, p), f, p, x, y);
    if (deg(g) != 0) return std::nullopt;
    return rem(x, f, p);
}

Coeffs derivative(const Coeffs& a, std::int64_t p) {
    if (a.size() <= 1) return {};
    Coeffs r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = norm_mod(a[i] * static_cast<std::int64_t>(i), p);
    trim(r);
    return r;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<Coeffs> monics_of_degree(std::int64_t p, int d, std::int64_t cap) {
    if (d < 0) return {};
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= p;
        if (count > cap) throw ResourceError("monic enumeration exceeds cap");
    }
    std::vector<Coeffs> out;
    out.reserve(count);
    for (std::int64_t idx = 0; idx < count; ++idx) {
        Coeffs c(d + 1, 0);
        std::int64_t v = idx;
        for (int i = 0; i < d; ++i) {
            c[i] = v % p;
            v /= p;
        }
        c[d] = 1;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::vector<Coeffs>> irreducibles_up_to(std::int64_t p, int d, std::int64_t cap) {
    std::vector<std::vector<Coeffs>> table(std::max(d, 0) + 1);
    for (int k = 1; k <= d; ++k) {
        for (auto& cand : monics_of_degree(p, k, cap)) {
            bool red = false;
            for (int j = 1; !red && 2 * j <= k; ++j)
                for (const auto& q : table[j])
                    if (rem(cand, q, p).empty()) {
                        red = true;
                        break;
                    }
            if (!red) table[k].push_back(cand);
        }
    }
    return table;
}

bool is_irreducible(const Coeffs& a, std::int64_t p) {
    if (deg(a) < 1) return false;
    auto table = irreducibles_up_to(p, deg(a) / 2);
    for (int j = 1; 2 * j <= deg(a); ++j)
        for (const auto& q : table[j])
            if (rem(a, q, p).empty()) return false;
    return true;
}

std::vector<Factor> squarefree_decomposition(const Coeffs& a, std::int64_t p) {
    if (is_zero(a)) throw UsageError("squarefree decomposition of zero");
    Coeffs f = make_monic(a, p);
    std::vector<Factor> out;
    if (deg(f) == 0) return out;

    Coeffs df = derivative(f, p);
    if (is_zero(df)) {
        // f = g(t^p) = h(t)^p with h_i = f_{p*i} over F_p
        Coeffs h((deg(f) / p) + 1, 0);
        for (size_t i = 0; i < h.size(); ++i) h[i] = f[i * p];
        trim(h);
        for (auto& fac : squarefree_decomposition(h, p)) out.push_back({fac.base, fac.mult * static_cast<int>(p)});
        return out;
    }

    Coeffs c = gcd(f, df, p);
    Coeffs w = divmod(f, c, p).first;
    int i = 1;
    while (deg(w) > 0) {
        Coeffs y = gcd(w, c, p);
        Coeffs z = divmod(w, y, p).first;
        if (deg(z) > 0) out.push_back({z, i});
        ++i;
        w = std::move(y);
        c = divmod(c, w, p).first;
    }
    // the leftover is a p-th power; the zero-derivative branch of the
    // recursion takes the root and scales the multiplicities
    if (deg(c) > 0) {
        for (auto& fac : squarefree_decomposition(c, p)) out.push_back(fac);
    }
    return out;
}

Factorization factor(const Coeffs& a, std::int64_t p) {
    if (is_zero(a)) throw UsageError("factorization of zero");
    Factorization out;
    out.lead = a.back();
    std::vector<Factor> parts = squarefree_decomposition(a, p);
    for (const auto& part : parts) {
        // part.base is squarefree; trial divide by irreducibles
        Coeffs rest = part.base;
        auto table = irreducibles_up_to(p, deg(rest) / 2);
        for (int d = 1; d <= deg(part.base) / 2 && deg(rest) > 0; ++d) {
            for (const auto& q : table[d]) {
                if (deg(rest) < 2 * d) break;
                auto [quo, r] = divmod(rest, q, p);
                if (r.empty()) {
                    out.factors.push_back({q, part.mult});
                    rest = std::move(quo);
                }
            }
        }
        if (deg(rest) > 0) out.factors.push_back({rest, part.mult});
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const Factor& x, const Factor& y) {
        if (x.base.size() != y.base.size()) return x.base.size() < y.base.size();
        return std::lexicographical_compare(x.base.rbegin(), x.base.rend(), y.base.rbegin(), y.base.rend());
    });
    return out;
}

int ord_at(const Coeffs& a, const Coeffs& q, std::int64_t p) {
    if (is_zero(a)) throw UsageError("ord of zero polynomial");
    if (deg(q) < 1) throw UsageError("ord at a constant");
    int n = 0;
    Coeffs rest = a;
    while (true) {
        auto [quo, r] = divmod(rest, q, p);
        if (!r.empty()) return n;
        ++n;
        rest = std::move(quo);
    }
}

} // namespace kzero::poly
