#pragma once

// JSON schema (version 1) for instances and reports.
//
// Polynomials are coefficient lists, lowest degree first; matrices are
// row-major entry lists. Reports are deterministic for a fixed instance and
// seed: anything wall-clock related lives in the separate "header" object so
// the "checks" array is byte-stable.

#include <string>

#include <json.hpp>

#include "kzero/complexes.hpp"
#include "kzero/relk0.hpp"

namespace kzero::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// --- writing ---

json to_json(const rings::Ring& r);
json to_json(const rings::Surjection& f);
json to_json(const rings::RingElem& e);
json to_json(const rings::MatrixMorphism& m);
json to_json(const complexes::BoundedComplex& c);
json to_json(const complexes::ChainMap& f);
json to_json(const complexes::DegreeOneMaps& s);
json to_json(const complexes::HtpyEquivWitness& w);
json to_json(const relk0::DegreewiseTriple& t);
json to_json(const relk0::RelTriple& t);
json to_json(const relk0::K0Class& c);
json to_json(const relk0::HellerReport& r);

// --- reading (validation errors carry a location string) ---

struct ParseError : UsageError {
    explicit ParseError(const std::string& where, const std::string& what)
        : UsageError(where + ": " + what) {}
};

rings::Ring ring_from_json(const json& j, const std::string& where);
rings::Surjection surjection_from_json(const json& j, const std::string& where);
rings::RingElem elem_from_json(const rings::Ring& r, const json& j, const std::string& where);
rings::MatrixMorphism matrix_from_json(const rings::Ring& r, const json& j, const std::string& where);
complexes::BoundedComplex complex_from_json(const rings::Ring& r, const json& j, const std::string& where);
complexes::ChainMap chain_map_from_json(const complexes::BoundedComplex& src, const complexes::BoundedComplex& tgt,
                                        const json& j, const std::string& where);
complexes::DegreeOneMaps degree_one_from_json(const complexes::BoundedComplex& src,
                                              const complexes::BoundedComplex& tgt, const json& j,
                                              const std::string& where);
complexes::HtpyEquivWitness witness_from_json(const complexes::BoundedComplex& rsrc,
                                              const complexes::BoundedComplex& rtgt, const json& j,
                                              const std::string& where);
relk0::DegreewiseTriple degreewise_from_json(const relk0::RelContext& ctx, const json& j, const std::string& where);
relk0::RelTriple rel_triple_from_json(const relk0::RelContext& ctx, const json& j, const std::string& where);

// FNV-1a over the compact serialization; stable across platforms.
std::string digest(const json& j);

} // namespace kzero::io
