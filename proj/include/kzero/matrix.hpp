#pragma once

// Morphisms of finite free modules as dense matrices over a Ring.
//
// A rows x cols matrix represents a map R^cols -> R^rows acting on column
// vectors. Dense storage is deliberate; everything here runs at desk scale.

#include <optional>
#include <vector>

#include "kzero/rings.hpp"

namespace kzero::rings {

using Column = std::vector<RingElem>;

class MatrixMorphism {
public:
    MatrixMorphism(Ring ring, int rows, int cols); // zero matrix
    static MatrixMorphism identity(const Ring& ring, int n);
    static MatrixMorphism from_entries(const Ring& ring, int rows, int cols, std::vector<RingElem> entries);
    static MatrixMorphism from_ints(const Ring& ring, int rows, int cols, const std::vector<std::int64_t>& v);

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_empty() const { return rows_ == 0 || cols_ == 0; }

    const RingElem& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, RingElem v);

    Column col(int j) const;
    Column row(int i) const;
    void set_block(int i0, int j0, const MatrixMorphism& b);
    MatrixMorphism block(int i0, int j0, int r, int c) const;

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const MatrixMorphism& o) const;
    bool operator!=(const MatrixMorphism& o) const { return !(*this == o); }

    std::string format() const;

private:
    Ring ring_;
    int rows_, cols_;
    std::vector<RingElem> a_;
};

MatrixMorphism operator+(const MatrixMorphism& a, const MatrixMorphism& b);
MatrixMorphism operator-(const MatrixMorphism& a, const MatrixMorphism& b);
MatrixMorphism operator*(const MatrixMorphism& a, const MatrixMorphism& b);
MatrixMorphism operator-(const MatrixMorphism& a);
MatrixMorphism scalar_mul(const RingElem& c, const MatrixMorphism& a);

Column operator*(const MatrixMorphism& m, const Column& x);
Column col_add(const Column& a, const Column& b);
Column col_sub(const Column& a, const Column& b);

MatrixMorphism hstack(const MatrixMorphism& a, const MatrixMorphism& b);
MatrixMorphism vstack(const MatrixMorphism& a, const MatrixMorphism& b);
MatrixMorphism diag_sum(const MatrixMorphism& a, const MatrixMorphism& b); // block diag

// Division-free determinant (Berkowitz); works over every supported ring.
RingElem det(const MatrixMorphism& m);

} // namespace kzero::rings
