#pragma once

// The supported coefficient rings and their exact arithmetic.
//
// A Ring is an immutable descriptor (shared, cheap to copy) for one of:
//   Integers, IntegersMod(n), PrimeField(p), PolyRing(F_p, var),
//   PolyQuot(F_p, var, f) with f monic of degree >= 1.
// A RingElem owns a reference to its ring and stores a canonical payload:
// scalars as a single integer, polynomials as a reduced coefficient vector
// (lowest degree first, trailing zeros stripped). Equality is structural.
//
// Everything here is a pure function of its inputs; values may be shared
// across threads freely.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kzero/errors.hpp"
#include "kzero/poly.hpp"

namespace kzero::rings {

enum class RingKind { Integers, IntegersMod, PrimeField, PolyRing, PolyQuot };

class RingElem;

class Ring {
public:
    static Ring integers();
    static Ring integers_mod(std::int64_t n);          // n >= 2
    static Ring prime_field(std::int64_t p);           // p prime (checked)
    static Ring poly_ring(std::int64_t p, std::string var = "t");
    static Ring poly_quot(std::int64_t p, poly::Coeffs modulus, std::string var = "t");

    RingKind kind() const { return data_->kind; }
    bool is_finite() const;
    bool is_field() const { return data_->field; }
    bool is_euclidean() const;
    bool is_local() const { return data_->local; }

    // Modulus data: n for IntegersMod, p for PrimeField/PolyRing/PolyQuot.
    std::int64_t characteristic_modulus() const { return data_->n; }
    const poly::Coeffs& quot_modulus() const; // PolyQuot only
    const std::string& variable() const;      // poly kinds only

    bool operator==(const Ring& other) const;
    bool operator!=(const Ring& other) const { return !(*this == other); }

    // --- element construction (always canonical) ---
    RingElem zero() const;
    RingElem one() const;
    RingElem from_int(std::int64_t v) const;
    RingElem from_coeffs(poly::Coeffs c) const; // poly kinds

    // --- arithmetic ---
    RingElem add(const RingElem& a, const RingElem& b) const;
    RingElem sub(const RingElem& a, const RingElem& b) const;
    RingElem mul(const RingElem& a, const RingElem& b) const;
    RingElem neg(const RingElem& a) const;
    std::optional<RingElem> inv(const RingElem& a) const;
    // Euclidean rings only (Integers, PolyRing, and fields).
    std::pair<RingElem, RingElem> divmod(const RingElem& a, const RingElem& b) const;
    bool is_unit(const RingElem& a) const;

    // Canonial total order on elements (enumeration / tie-breaking order).
    static bool elem_less(const RingElem& a, const RingElem& b);

    // --- finite enumeration ---
    std::int64_t element_count(std::int64_t cap = (1 << 20)) const; // finite rings
    std::vector<RingElem> elements(std::int64_t cap = (1 << 20)) const;

    // --- Euclidean cover for quotient rings ---
    // IntegersMod -> Integers, PolyQuot -> PolyRing, otherwise the ring itself.
    Ring cover() const;
    RingElem cover_modulus() const;         // n or f as an element of cover()
    RingElem lift(const RingElem& a) const; // canonical least lift into cover()
    RingElem reduce_from_cover(const RingElem& a) const;

    std::string describe() const;
    std::string format(const RingElem& a) const;

private:
    struct Data {
        RingKind kind;
        std::int64_t n = 0;  // modulus or characteristic
        std::string var;
        poly::Coeffs fmod;   // PolyQuot modulus
        bool field = false;
        bool local = false;
    };
    explicit Ring(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;

    void check_owner(const RingElem& a) const;
    RingElem make(std::vector<std::int64_t> payload) const;
};

class RingElem {
public:
    const Ring& ring() const { return ring_; }
    const std::vector<std::int64_t>& payload() const { return v_; }
    std::int64_t scalar() const;   // scalar rings
    poly::Coeffs coeffs() const;   // poly kinds (copy of payload)
    bool is_zero() const;
    bool is_one() const;
    int poly_degree() const; // poly kinds; -1 for zero

    bool operator==(const RingElem& other) const;
    bool operator!=(const RingElem& other) const { return !(*this == other); }

private:
    friend class Ring;
    RingElem(Ring r, std::vector<std::int64_t> v) : ring_(std::move(r)), v_(std::move(v)) {}
    Ring ring_;
    std::vector<std::int64_t> v_;
};

inline RingElem operator+(const RingElem& a, const RingElem& b) { return a.ring().add(a, b); }
inline RingElem operator-(const RingElem& a, const RingElem& b) { return a.ring().sub(a, b); }
inline RingElem operator*(const RingElem& a, const RingElem& b) { return a.ring().mul(a, b); }
inline RingElem operator-(const RingElem& a) { return a.ring().neg(a); }

// A surjective homomorphism between two supported rings, with elementwise
// reduction. Construction validates the pair and throws UsageError naming the
// offending leg otherwise. Supported target rings are quotients of the source:
//   Z -> Z/n, Z/n -> Z/m (m | n), Z/n -> F_p (p | n),
//   F_p -> F_p, k[t] -> k[t]/f, k[t]/f -> k[t]/g (g | f),
//   k[t] or k[t]/f -> F_p (reduction mod the variable, when t | f).
class Surjection {
public:
    static Surjection make(Ring source, Ring target);

    const Ring& source() const { return source_; }
    const Ring& target() const { return target_; }

    RingElem reduce(const RingElem& a) const;

    // Canonical least lift (a set-theoretic section of reduce, not a
    // homomorphism): the payload reinterpreted in the source ring.
    RingElem lift(const RingElem& b) const;

    bool operator==(const Surjection& o) const { return source_ == o.source_ && target_ == o.target_; }

    std::string describe() const;

private:
    Surjection(Ring s, Ring t) : source_(std::move(s)), target_(std::move(t)) {}
    Ring source_, target_;
};

} // namespace kzero::rings
