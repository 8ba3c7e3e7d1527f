#pragma once

// Exact linear algebra over the supported rings.
//
// Smith normal form is computed over Euclidean rings (Z, F_p[t], fields).
// Linear systems over Z/n and F_p[t]/f go through the Smith normal form of a
// lift to the Euclidean cover, augmented by the modulus; one mechanism for
// every ring instead of ring-by-ring elimination.

#include <optional>
#include <vector>

#include "kzero/matrix.hpp"

namespace kzero::rings {

struct SmithResult {
    MatrixMorphism u, d, v; // u*m*v = d, d diagonal with d_i | d_{i+1}
};

SmithResult smith_normal_form(const MatrixMorphism& m);

// One exact solution of m*x = b, if any.
std::optional<Column> solve_linear(const MatrixMorphism& m, const Column& b);

// Columns k with m*k = 0 spanning the kernel (possibly redundant over
// quotient rings).
std::vector<Column> kernel_basis(const MatrixMorphism& m);

// Solve m*x = rhs for a whole matrix of right-hand sides.
std::optional<MatrixMorphism> solve_matrix(const MatrixMorphism& m, const MatrixMorphism& rhs);

std::optional<MatrixMorphism> inverse(const MatrixMorphism& m);

MatrixMorphism lift_matrix(const MatrixMorphism& m);                    // into ring().cover()
MatrixMorphism reduce_matrix(const Ring& quot, const MatrixMorphism& m); // back from the cover

MatrixMorphism reduce_matrix(const Surjection& f, const MatrixMorphism& m);

// Adjugate, via cofactor determinants: m * adj = det * I.
MatrixMorphism adjugate(const MatrixMorphism& m);

} // namespace kzero::rings
