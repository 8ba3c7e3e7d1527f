#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzero/json_io.hpp"
#include "kzero/relgen.hpp"

using namespace kzero;
using namespace kzero::rings;
using nlohmann::json;

TEST_CASE("serialization round-trips through json") {
    gen::Rng rng(3);
    auto ctx = relk0::RelContext::make(Surjection::make(Ring::poly_ring(2), Ring::poly_quot(2, {0, 0, 1})));

    for (auto r : {Ring::integers(), Ring::integers_mod(12), Ring::prime_field(7), Ring::poly_ring(3, "x"),
                   Ring::poly_quot(2, {1, 1, 1})}) {
        CHECK(io::ring_from_json(io::to_json(r), "t") == r);
    }
    CHECK(io::surjection_from_json(io::to_json(ctx.f()), "t") == ctx.f());

    MatrixMorphism m = gen::matrix(rng, ctx.target(), 2, 3);
    CHECK(io::matrix_from_json(ctx.target(), io::to_json(m), "t") == m);

    complexes::BoundedComplex c = gen::contractible_complex(rng, ctx.source(), 4, 2);
    CHECK(io::complex_from_json(ctx.source(), io::to_json(c), "t") == c);

    relk0::RelTriple t = gen::random_rel_triple(rng, ctx);
    json tj = io::to_json(t);
    relk0::RelTriple t2 = io::rel_triple_from_json(ctx, tj, "t");
    CHECK(io::to_json(t2) == tj);
    CHECK(relk0::class_of(ctx, t, 5) == relk0::class_of(ctx, t2, 5));

    relk0::DegreewiseTriple d = gen::random_degreewise(rng, ctx);
    CHECK(io::to_json(io::degreewise_from_json(ctx, io::to_json(d), "t")) == io::to_json(d));
}

TEST_CASE("digest is stable and input-sensitive") {
    json a{{"x", 1}, {"y", json::array({1, 2, 3})}};
    json b{{"x", 1}, {"y", json::array({1, 2, 4})}};
    CHECK(io::digest(a) == io::digest(a));
    CHECK(io::digest(a) != io::digest(b));
    CHECK(io::digest(a).size() == 16);
}

TEST_CASE("validation failures carry a location and reject bad data") {
    auto f2 = Ring::prime_field(2);
    CHECK_THROWS_WITH_AS(io::ring_from_json(json{{"kind", "nope"}}, "spot"), doctest::Contains("spot"),
                         io::ParseError);
    CHECK_THROWS_AS(io::matrix_from_json(f2, json{{"rows", 2}, {"cols", 2}, {"entries", json::array({1, 0, 1})}}, "m"),
                    io::ParseError);
    // complex with d.d != 0 must be rejected at load
    auto z = Ring::integers();
    json bad{{"lo", 0},
             {"ranks", json::array({1, 1, 1})},
             {"diffs", json::array({json{{"rows", 1}, {"cols", 1}, {"entries", json::array({2})}},
                                    json{{"rows", 1}, {"cols", 1}, {"entries", json::array({3})}}})}};
    CHECK_THROWS_AS(io::complex_from_json(z, bad, "c"), UsageError);

    // a tampered witness no longer satisfies its identities
    gen::Rng rng(11);
    auto ctx = relk0::RelContext::make(Surjection::make(Ring::integers(), Ring::integers_mod(5)));
    relk0::RelTriple t = gen::random_rel_triple(rng, ctx, 0);
    json tj = io::to_json(t);
    json& fwd = tj["alpha"]["forward"]["comps"];
    bool tampered = false;
    for (auto& comp : fwd)
        for (auto& e : comp["entries"]) {
            if (e.is_number_integer()) {
                e = (e.get<std::int64_t>() + 1) % 5;
                tampered = true;
                break;
            }
            if (tampered) break;
        }
    REQUIRE(tampered);
    CHECK_THROWS_AS(io::rel_triple_from_json(ctx, tj, "t"), UsageError);
}
