#pragma once

// Unit groups of finite rings and the cokernel of A^x -> B^x along a
// surjection. The cokernel is the computable model for the relative class
// group; see kzero::relk0 for how classes land here.

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "kzero/rings.hpp"

namespace kzero::rings {

// Exactly { x : inv(x) exists }, in enumeration order.
std::vector<RingElem> units_enumerate(const Ring& r, std::int64_t cap = (1 << 20));

class UnitClassGroup {
public:
    const Surjection& surjection() const { return f_; }
    int order() const { return static_cast<int>(reps_.size()); }
    int identity() const { return identity_; }

    // Coset of a unit of the target ring. Total on units; UsageError otherwise.
    int project(const RingElem& unit_of_target) const;

    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * reps_.size() + b]; }
    int inv(int a) const { return inverse_[a]; }
    const RingElem& rep(int a) const { return reps_[a]; }

    // Cyclic decomposition d_1 | d_2 | ... with product = order.
    const std::vector<std::int64_t>& invariant_factors() const { return invariant_factors_; }

private:
    friend UnitClassGroup unit_class_group(const Surjection&, std::int64_t);
    explicit UnitClassGroup(Surjection f) : f_(std::move(f)) {}

    Surjection f_;
    std::vector<RingElem> reps_;
    std::map<std::vector<std::int64_t>, int> coset_of_; // unit payload -> coset index
    std::vector<int> table_;
    std::vector<int> inverse_;
    int identity_ = 0;
    std::vector<std::int64_t> invariant_factors_;
};

// Build B^x / image(A^x) for a supported surjection A ->> B with B finite.
UnitClassGroup unit_class_group(const Surjection& f, std::int64_t cap = (1 << 20));

} // namespace kzero::rings
