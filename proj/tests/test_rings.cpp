#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "kzero/gen.hpp"
#include "kzero/linalg.hpp"
#include "kzero/units.hpp"

using namespace kzero;
using namespace kzero::rings;

namespace {

// Brute-force inverse by scanning every element of a finite ring.
std::optional<RingElem> scan_inverse(const Ring& r, const RingElem& a) {
    for (const auto& x : r.elements())
        if ((a * x).is_one()) return x;
    return std::nullopt;
}

// Naive cofactor determinant, independent of the Berkowitz path.
RingElem naive_det(const MatrixMorphism& m) {
    int n = m.rows();
    if (n == 0) return m.ring().one();
    if (n == 1) return m.at(0, 0);
    RingElem acc = m.ring().zero();
    for (int j = 0; j < n; ++j) {
        MatrixMorphism minor(m.ring(), n - 1, n - 1);
        for (int i = 1; i < n; ++i)
            for (int k = 0, kk = 0; k < n; ++k) {
                if (k == j) continue;
                minor.set(i - 1, kk++, m.at(i, k));
            }
        RingElem term = m.at(0, j) * naive_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

TEST_CASE("ring flags are consistent") {
    auto z = Ring::integers();
    CHECK(z.is_euclidean());
    CHECK_FALSE(z.is_finite());
    CHECK_FALSE(z.is_field());
    CHECK_FALSE(z.is_local());

    auto z4 = Ring::integers_mod(4);
    CHECK(z4.is_finite());
    CHECK(z4.is_local());
    CHECK_FALSE(z4.is_field());
    CHECK_FALSE(z4.is_euclidean());

    auto z6 = Ring::integers_mod(6);
    CHECK_FALSE(z6.is_local());

    auto f5 = Ring::prime_field(5);
    CHECK(f5.is_field());
    CHECK(f5.is_local()); // field => local

    auto f2t = Ring::poly_ring(2);
    CHECK(f2t.is_euclidean());
    CHECK_FALSE(f2t.is_finite());
    CHECK_FALSE(f2t.is_local());

    auto q = Ring::poly_quot(2, {0, 0, 1}); // F2[t]/t^2
    CHECK(q.is_finite());
    CHECK(q.is_local());
    CHECK_FALSE(q.is_field());

    auto f9 = Ring::poly_quot(3, {1, 0, 1}); // t^2+1 irreducible over F3
    CHECK(f9.is_field());
    CHECK(f9.is_local());
    CHECK(f9.element_count() == 9);

    CHECK_THROWS_AS(Ring::integers_mod(1), UsageError);
    CHECK_THROWS_AS(Ring::prime_field(6), UsageError);
    CHECK_THROWS_AS(Ring::poly_quot(2, {1}), UsageError);       // degree 0
    CHECK_THROWS_AS(Ring::poly_quot(2, {1, 0, 2}), UsageError); // t^2+... reduces to degree-0 mod 2

    // structural equality
    CHECK(Ring::integers_mod(4) == Ring::integers_mod(4));
    CHECK(Ring::integers_mod(4) != Ring::integers_mod(8));
    CHECK(Ring::poly_quot(2, {0, 0, 1}) == Ring::poly_quot(2, {0, 0, 1}));
    CHECK(Ring::prime_field(5) != Ring::integers_mod(5)); // distinct descriptors
}

TEST_CASE("inverses, canonical forms, mixed-ring errors") {
    auto z5 = Ring::integers_mod(5);
    CHECK(z5.inv(z5.from_int(2)).value() == z5.from_int(3)); // 2*3 = 6 = 1

    auto z4 = Ring::integers_mod(4);
    CHECK_FALSE(z4.inv(z4.from_int(2)).has_value()); // zero divisor

    auto q = Ring::poly_quot(2, {0, 0, 1});
    auto e = q.from_coeffs({1, 1}); // 1+t
    auto inv = q.inv(e);
    REQUIRE(inv.has_value());
    CHECK(*inv == e); // (1+t)^2 = 1+t^2 = 1 mod t^2
    // oracle: brute-force over all 4 elements
    CHECK(scan_inverse(q, e).value() == e);

    // canonical reduction at construction
    CHECK(q.from_coeffs({0, 0, 1}) == q.zero());
    CHECK(z5.from_int(-3) == z5.from_int(2));
    CHECK(Ring::poly_ring(3).from_coeffs({1, 0, 0}) == Ring::poly_ring(3).from_coeffs({1}));

    CHECK_THROWS_AS((void)(z5.from_int(1) + z4.from_int(1)), UsageError);
    CHECK_THROWS_AS(z4.divmod(z4.from_int(1), z4.from_int(3)), UsageError); // not Euclidean
}

TEST_CASE("solve_linear spec cases") {
    auto z4 = Ring::integers_mod(4);
    MatrixMorphism m = MatrixMorphism::from_ints(z4, 1, 1, {2});
    auto x = solve_linear(m, {z4.zero()});
    REQUIRE(x.has_value());
    CHECK((m * *x)[0].is_zero());
    auto ker = kernel_basis(m);
    // kernel of (2) in Z/4 is {0, 2}; the span of the returned columns must be exactly that
    std::set<std::int64_t> span{0};
    for (const auto& k : ker) {
        CHECK((m * k)[0].is_zero());
        std::set<std::int64_t> grown = span;
        for (auto v : span)
            for (int c = 0; c < 4; ++c) grown.insert((v + c * k[0].scalar()) % 4);
        span = grown;
    }
    CHECK(span == std::set<std::int64_t>{0, 2});

    // unsolvable systems are reported as such, not mangled
    CHECK_FALSE(solve_linear(MatrixMorphism::from_ints(Ring::integers(), 1, 1, {2}),
                             {Ring::integers().from_int(1)})
                    .has_value());
    CHECK_FALSE(solve_linear(m, {z4.from_int(1)}).has_value()); // 2x = 1 in Z/4
    auto z3 = Ring::integers_mod(3);
    auto sol3 = solve_linear(MatrixMorphism::from_ints(z3, 1, 1, {2}), {z3.from_int(1)});
    REQUIRE(sol3.has_value());
    CHECK((*sol3)[0] == z3.from_int(2));

    auto f7 = Ring::prime_field(7);
    MatrixMorphism id3 = MatrixMorphism::identity(f7, 3);
    Column b{f7.from_int(3), f7.from_int(0), f7.from_int(6)};
    auto sol = solve_linear(id3, b);
    REQUIRE(sol.has_value());
    CHECK(*sol == b);
    CHECK(kernel_basis(id3).empty());

    // [[t,1],[0,t]] over F2[t]/t^2: exhaustive search over the 16-element ring
    // decides solvability; the solver must agree either way. For b = (1,0)
    // the search comes up empty (t*x1 = 0 forces the constant term of x1 to
    // vanish, so t*x0 + x1 never has constant term 1); b = (1,t) is solvable.
    auto q = Ring::poly_quot(2, {0, 0, 1});
    MatrixMorphism mq(q, 2, 2);
    mq.set(0, 0, q.from_coeffs({0, 1}));
    mq.set(0, 1, q.one());
    mq.set(1, 1, q.from_coeffs({0, 1}));
    for (Column bq : {Column{q.one(), q.zero()}, Column{q.one(), q.from_coeffs({0, 1})}}) {
        bool oracle_solvable = false;
        for (const auto& x0 : q.elements())
            for (const auto& x1 : q.elements())
                if (mq * Column{x0, x1} == bq) oracle_solvable = true;
        auto solq = solve_linear(mq, bq);
        CHECK(solq.has_value() == oracle_solvable);
        if (solq) CHECK(mq * *solq == bq);
    }
}

TEST_CASE("smith normal form spec cases") {
    auto z = Ring::integers();
    MatrixMorphism m = MatrixMorphism::from_ints(z, 2, 2, {2, 0, 0, 3});
    auto [u, d, v] = smith_normal_form(m);
    CHECK(u * m * v == d);
    CHECK(d.at(0, 0) == z.one());
    CHECK(d.at(1, 1) == z.from_int(6));

    MatrixMorphism zm(z, 2, 3);
    auto snf0 = smith_normal_form(zm);
    CHECK(snf0.d.is_zero());
    CHECK(snf0.u.is_identity());
    CHECK(snf0.v.is_identity());

    // [[t, t^2],[0, t]]: subtracting t*col1 from col2 leaves diag(t, t), and
    // d1*d2 must match det = t^2, so the invariant factors are (t, t).
    auto kt = Ring::poly_ring(2);
    auto t = kt.from_coeffs({0, 1});
    MatrixMorphism mp(kt, 2, 2);
    mp.set(0, 0, t);
    mp.set(0, 1, t * t);
    mp.set(1, 1, t);
    auto s = smith_normal_form(mp);
    CHECK(s.u * mp * s.v == s.d);
    CHECK(s.d.at(0, 0) == t);
    CHECK(s.d.at(1, 1) == t);
}

TEST_CASE("smith normal form properties on random matrices") {
    for (auto ring : {Ring::integers(), Ring::poly_ring(3), Ring::prime_field(5)}) {
        gen::Rng rng(7 + static_cast<unsigned>(ring.kind()));
        for (int it = 0; it < 40; ++it) {
            int r = 1 + static_cast<int>(rng.below(4));
            int c = 1 + static_cast<int>(rng.below(4));
            MatrixMorphism m = gen::matrix(rng, ring, r, c, 2);
            auto s = smith_normal_form(m);
            CHECK(s.u * m * s.v == s.d);
            CHECK(ring.is_unit(det(s.u)));
            CHECK(ring.is_unit(det(s.v)));
            for (int i = 0; i + 1 < std::min(r, c); ++i) {
                if (s.d.at(i, i).is_zero()) {
                    CHECK(s.d.at(i + 1, i + 1).is_zero());
                } else {
                    CHECK(ring.divmod(s.d.at(i + 1, i + 1), s.d.at(i, i)).second.is_zero());
                }
            }
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j)
                    if (i != j) CHECK(s.d.at(i, j).is_zero());
        }
    }
}

TEST_CASE("random solves substitute back") {
    for (auto ring : {Ring::integers_mod(8), Ring::integers_mod(6), Ring::poly_quot(2, {0, 0, 0, 1}),
                      Ring::prime_field(3), Ring::poly_ring(2), Ring::integers()}) {
        gen::Rng rng(11 + static_cast<unsigned>(ring.kind()));
        for (int it = 0; it < 30; ++it) {
            int r = 1 + static_cast<int>(rng.below(3));
            int c = 1 + static_cast<int>(rng.below(3));
            MatrixMorphism m = gen::matrix(rng, ring, r, c, 2);
            // build a guaranteed-solvable rhs
            Column x0;
            for (int j = 0; j < c; ++j) x0.push_back(gen::ring_elem(rng, ring, 2));
            Column b = m * x0;
            auto x = solve_linear(m, b);
            REQUIRE(x.has_value());
            CHECK(m * *x == b);
            for (const auto& k : kernel_basis(m)) {
                Column zero = m * k;
                for (const auto& e : zero) CHECK(e.is_zero());
            }
        }
    }
}

TEST_CASE("kernel bases span: exhaustive scan over small finite rings") {
    // completeness of the solver is what makes acyclicity detection exact
    for (auto ring : {Ring::prime_field(3), Ring::integers_mod(4), Ring::integers_mod(6),
                      Ring::poly_quot(2, {0, 0, 1})}) {
        gen::Rng rng(57 + static_cast<unsigned>(ring.characteristic_modulus()));
        auto elems = ring.elements();
        for (int it = 0; it < 10; ++it) {
            int r = 1 + static_cast<int>(rng.below(2));
            MatrixMorphism m = gen::matrix(rng, ring, r, 2, 2);
            // every exhaustive solution must lie in the span of the basis
            std::set<std::vector<std::vector<std::int64_t>>> span;
            std::vector<Column> basis = kernel_basis(m);
            std::vector<Column> frontier{Column{ring.zero(), ring.zero()}};
            span.insert({frontier[0][0].payload(), frontier[0][1].payload()});
            while (!frontier.empty()) {
                std::vector<Column> next;
                for (const auto& v : frontier)
                    for (const auto& k : basis)
                        for (const auto& c : elems) {
                            Column w{v[0] + c * k[0], v[1] + c * k[1]};
                            if (span.insert({w[0].payload(), w[1].payload()}).second) next.push_back(w);
                        }
                frontier = std::move(next);
            }
            int null_count = 0;
            for (const auto& x0 : elems)
                for (const auto& x1 : elems) {
                    Column x{x0, x1};
                    Column y = m * x;
                    bool zero = true;
                    for (const auto& e : y) zero = zero && e.is_zero();
                    if (!zero) continue;
                    ++null_count;
                    CHECK(span.count({x0.payload(), x1.payload()}) == 1);
                }
            CHECK(static_cast<int>(span.size()) == null_count);
        }
    }
}

TEST_CASE("determinant: triangular, multiplicative, matches cofactor oracle") {
    auto z9 = Ring::integers_mod(9);
    MatrixMorphism tri = MatrixMorphism::from_ints(z9, 2, 2, {1, 7, 0, 1});
    CHECK(det(tri).is_one());

    for (auto ring : {Ring::integers(), Ring::integers_mod(8), Ring::poly_quot(3, {1, 0, 1}), Ring::poly_ring(2)}) {
        gen::Rng rng(23 + static_cast<unsigned>(ring.kind()));
        for (int it = 0; it < 25; ++it) {
            int n = static_cast<int>(rng.below(4)); // includes empty matrices
            MatrixMorphism a = gen::matrix(rng, ring, n, n, 2);
            MatrixMorphism b = gen::matrix(rng, ring, n, n, 2);
            CHECK(det(a) == naive_det(a));
            CHECK(det(a * b) == det(a) * det(b));
        }
    }
}

TEST_CASE("unit enumeration matches direct scans") {
    auto z5 = Ring::integers_mod(5);
    auto u5 = units_enumerate(z5);
    REQUIRE(u5.size() == 4);
    for (int v = 1; v <= 4; ++v) CHECK(std::count(u5.begin(), u5.end(), z5.from_int(v)) == 1);

    auto q = Ring::poly_quot(2, {0, 0, 1});
    auto uq = units_enumerate(q);
    REQUIRE(uq.size() == 2);
    CHECK(std::count(uq.begin(), uq.end(), q.one()) == 1);
    CHECK(std::count(uq.begin(), uq.end(), q.from_coeffs({1, 1})) == 1);

    // phi(n) by gcd scan, not by formula
    for (std::int64_t n : {4, 6, 8, 9, 12, 15}) {
        auto r = Ring::integers_mod(n);
        int phi = 0;
        for (std::int64_t v = 0; v < n; ++v) {
            std::int64_t a = v, b = n;
            while (b) std::swap(a %= b, b);
            if (a == 1) ++phi;
        }
        CHECK(static_cast<int>(units_enumerate(r).size()) == phi);
    }

    // PolyQuot unit counts by scan for assorted moduli, including reducible ones
    for (auto mod : std::vector<poly::Coeffs>{{0, 0, 1}, {0, 1, 1}, {1, 1, 1}, {0, 0, 0, 1}}) {
        auto r = Ring::poly_quot(2, mod);
        int count = 0;
        for (const auto& e : r.elements())
            if (scan_inverse(r, e)) ++count;
        CHECK(static_cast<int>(units_enumerate(r).size()) == count);
    }

    CHECK_THROWS_AS(units_enumerate(Ring::integers()), UsageError);
}

TEST_CASE("polynomial factorization reassembles and counts multiplicities") {
    // (t+1)^2 (t^2+t+1) over F2: mixed square and simple factors
    auto prod = poly::mul(poly::mul({1, 1}, {1, 1}, 2), {1, 1, 1}, 2);
    auto fac = poly::factor(prod, 2);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].base == poly::Coeffs{1, 1});
    CHECK(fac.factors[0].mult == 2);
    CHECK(fac.factors[1].base == poly::Coeffs{1, 1, 1});
    CHECK(fac.factors[1].mult == 1);

    // random products reassemble exactly
    for (std::int64_t p : {2, 3, 5}) {
        gen::Rng rng(41 + p);
        for (int it = 0; it < 30; ++it) {
            poly::Coeffs f{1};
            int parts = 1 + static_cast<int>(rng.below(3));
            for (int k = 0; k < parts; ++k) {
                int d = 1 + static_cast<int>(rng.below(3));
                poly::Coeffs g(d + 1);
                for (auto& c : g) c = static_cast<std::int64_t>(rng.below(p));
                g[d] = 1;
                int mult = 1 + static_cast<int>(rng.below(3));
                for (int m = 0; m < mult; ++m) f = poly::mul(f, g, p);
            }
            auto fa = poly::factor(f, p);
            poly::Coeffs back{fa.lead};
            for (const auto& [base, mult] : fa.factors) {
                CHECK(poly::is_irreducible(base, p));
                for (int m = 0; m < mult; ++m) back = poly::mul(back, base, p);
            }
            CHECK(back == f);
        }
    }
}

TEST_CASE("unit class group spec cases") {
    auto f1 = Surjection::make(Ring::integers(), Ring::integers_mod(5));
    auto g1 = unit_class_group(f1);
    CHECK(g1.order() == 2);
    auto b1 = f1.target();
    CHECK(g1.project(b1.from_int(2)) != g1.identity());
    CHECK(g1.project(b1.from_int(4)) == g1.identity()); // 4 = -1 mod 5

    auto f2 = Surjection::make(Ring::poly_ring(2), Ring::poly_quot(2, {0, 0, 1}));
    auto g2 = unit_class_group(f2);
    CHECK(g2.order() == 2);
    CHECK(g2.project(f2.target().from_coeffs({1, 1})) != g2.identity());

    auto f3 = Surjection::make(Ring::integers(), Ring::integers_mod(2));
    CHECK(unit_class_group(f3).order() == 1);

    CHECK_THROWS_AS(Surjection::make(Ring::integers(), Ring::poly_ring(2)), UsageError);
    CHECK_THROWS_AS(Surjection::make(Ring::integers_mod(4), Ring::integers_mod(3)), UsageError);
}

TEST_CASE("unit class group projection is a homomorphism (exhaustive)") {
    std::vector<Surjection> specs = {
        Surjection::make(Ring::integers(), Ring::integers_mod(8)),
        Surjection::make(Ring::integers(), Ring::integers_mod(12)),
        Surjection::make(Ring::integers_mod(9), Ring::integers_mod(3)),
        Surjection::make(Ring::poly_ring(3), Ring::poly_quot(3, {0, 0, 1})),
        Surjection::make(Ring::poly_quot(2, {0, 0, 0, 1}), Ring::poly_quot(2, {0, 1})),
    };
    for (const auto& f : specs) {
        auto g = unit_class_group(f);
        auto units = units_enumerate(f.target());
        for (const auto& u : units)
            for (const auto& v : units) CHECK(g.project(u * v) == g.mul(g.project(u), g.project(v)));
        // invariant factors multiply to the order and form a chain
        std::int64_t prod = 1;
        for (size_t i = 0; i < g.invariant_factors().size(); ++i) {
            prod *= g.invariant_factors()[i];
            if (i > 0) CHECK(g.invariant_factors()[i] % g.invariant_factors()[i - 1] == 0);
        }
        CHECK(prod == g.order());
        // every unit of the source maps into the identity coset
        if (f.source().is_finite())
            for (const auto& a : units_enumerate(f.source())) CHECK(g.project(f.reduce(a)) == g.identity());
    }

    // (Z/5^x) / {±1}: cyclic of order 2; (Z/12) over Z: units {1,5,7,11}, image {1,11} -> order 2
    auto g12 = unit_class_group(Surjection::make(Ring::integers(), Ring::integers_mod(12)));
    CHECK(g12.order() == 2);

    // F5[t]/t^2 over F5[t]: units 20, image of constants has order 4 -> quotient of order 5
    auto g5 = unit_class_group(Surjection::make(Ring::poly_ring(5), Ring::poly_quot(5, {0, 0, 1})));
    CHECK(g5.order() == 5);
    CHECK(g5.invariant_factors() == std::vector<std::int64_t>{5});

    // (Z/16)^x / {±1}: cyclic of order 4, generated by the class of 3
    auto g16 = unit_class_group(Surjection::make(Ring::integers(), Ring::integers_mod(16)));
    CHECK(g16.order() == 4);
    CHECK(g16.invariant_factors() == std::vector<std::int64_t>{4});
    auto b16 = Ring::integers_mod(16);
    int three = g16.project(b16.from_int(3));
    CHECK(g16.mul(three, three) != g16.identity());
    CHECK(g16.mul(g16.mul(three, three), g16.mul(three, three)) == g16.identity());

    // (Z/24)^x / {±1}: Klein four group
    auto g24 = unit_class_group(Surjection::make(Ring::integers(), Ring::integers_mod(24)));
    CHECK(g24.order() == 4);
    CHECK(g24.invariant_factors() == std::vector<std::int64_t>{2, 2});
}
