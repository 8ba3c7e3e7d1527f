#pragma once

// Executable verifiers for the defining relations of the relative class
// group and for the Euler-characteristic identities, as seeded property suites.
// Every instance is generated deterministically from (kind, seed, index), so
// a failure report replays bit-for-bit from its coordinates.

#include <json.hpp>

#include "kzero/relk0.hpp"

namespace kzero::relk0 {

enum class RelationKind {
    RelAExact,
    RelBCompose,
    Looparrow,
    GammaElementary,
    ChiShift,
    ChiExact,
    ChiHomology,
    ChiComposite,
    QuasiIsoInvariance,
    HomotopyInvariance,
    Roundtrip,
};

const char* kind_name(RelationKind k);
std::optional<RelationKind> kind_from_name(const std::string& name);
const std::vector<RelationKind>& all_relation_kinds();

// Structural suites over a single ring.
enum class RingSuiteKind {
    StrictSplitIdentities,
    SplitComparisonLemma,
    SplitGlueLemma,
    ElementaryCommutator,
};

const char* ring_suite_name(RingSuiteKind k);
std::optional<RingSuiteKind> ring_suite_from_name(const std::string& name);
const std::vector<RingSuiteKind>& all_ring_suites();

struct CheckOutcome {
    std::string id;     // suite/instance coordinates
    std::string anchor; // the rule being checked, by function
    bool pass = false;
    std::string detail;      // on failure, what disagreed
    nlohmann::json instance; // full generated instance (serialized)
};

CheckOutcome verify_relation(const RelContext& ctx, RelationKind kind, std::uint64_t seed, int index);
CheckOutcome verify_ring_property(const rings::Ring& r, RingSuiteKind kind, std::uint64_t seed, int index);

struct SuiteResult {
    std::vector<CheckOutcome> outcomes;
    int failures = 0;
};

SuiteResult run_relation_suite(const RelContext& ctx, RelationKind kind, std::uint64_t seed, int count);
SuiteResult run_ring_suite(const rings::Ring& r, RingSuiteKind kind, std::uint64_t seed, int count);

} // namespace kzero::relk0
