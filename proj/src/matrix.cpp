#include "kzero/matrix.hpp"

#include <sstream>

#include "kzero/errors.hpp"

namespace kzero::rings {

namespace {

void check_same_ring(const MatrixMorphism& a, const MatrixMorphism& b) {
    if (a.ring() != b.ring()) throw UsageError("mixed-ring matrices");
}

} // namespace

MatrixMorphism::MatrixMorphism(Ring ring, int rows, int cols) : ring_(std::move(ring)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw UsageError("negative matrix dimension");
    a_.assign(static_cast<size_t>(rows) * cols, ring_.zero());
}

MatrixMorphism MatrixMorphism::identity(const Ring& ring, int n) {
    MatrixMorphism m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, ring.one());
    return m;
}

MatrixMorphism MatrixMorphism::from_entries(const Ring& ring, int rows, int cols, std::vector<RingElem> entries) {
    if (entries.size() != static_cast<size_t>(rows) * cols) throw UsageError("entry count != rows*cols");
    MatrixMorphism m(ring, rows, cols);
    for (auto& e : entries)
        if (e.ring() != ring) throw UsageError("matrix entry owned by a different ring");
    m.a_ = std::move(entries);
    return m;
}

MatrixMorphism MatrixMorphism::from_ints(const Ring& ring, int rows, int cols, const std::vector<std::int64_t>& v) {
    if (v.size() != static_cast<size_t>(rows) * cols) throw UsageError("entry count != rows*cols");
    MatrixMorphism m(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, ring.from_int(v[static_cast<size_t>(i) * cols + j]));
    return m;
}

void MatrixMorphism::set(int i, int j, RingElem v) {
    if (v.ring() != ring_) throw UsageError("matrix entry owned by a different ring");
    a_[static_cast<size_t>(i) * cols_ + j] = std::move(v);
}

Column MatrixMorphism::col(int j) const {
    Column c;
    c.reserve(rows_);
    for (int i = 0; i < rows_; ++i) c.push_back(at(i, j));
    return c;
}

Column MatrixMorphism::row(int i) const {
    Column c;
    c.reserve(cols_);
    for (int j = 0; j < cols_; ++j) c.push_back(at(i, j));
    return c;
}

void MatrixMorphism::set_block(int i0, int j0, const MatrixMorphism& b) {
    if (i0 + b.rows() > rows_ || j0 + b.cols() > cols_) throw UsageError("block out of range");
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) set(i0 + i, j0 + j, b.at(i, j));
}

MatrixMorphism MatrixMorphism::block(int i0, int j0, int r, int c) const {
    if (i0 + r > rows_ || j0 + c > cols_) throw UsageError("block out of range");
    MatrixMorphism m(ring_, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, at(i0 + i, j0 + j));
    return m;
}

bool MatrixMorphism::is_zero() const {
    for (const auto& e : a_)
        if (!e.is_zero()) return false;
    return true;
}

bool MatrixMorphism::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j && !at(i, j).is_one()) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

bool MatrixMorphism::operator==(const MatrixMorphism& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::string MatrixMorphism::format() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << ring_.format(at(i, j));
    }
    os << "]";
    return os.str();
}

MatrixMorphism operator+(const MatrixMorphism& a, const MatrixMorphism& b) {
    check_same_ring(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw UsageError("matrix addition shape mismatch");
    MatrixMorphism r(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j) + b.at(i, j));
    return r;
}

MatrixMorphism operator-(const MatrixMorphism& a, const MatrixMorphism& b) { return a + (-b); }

MatrixMorphism operator-(const MatrixMorphism& a) {
    MatrixMorphism r(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, -a.at(i, j));
    return r;
}

MatrixMorphism scalar_mul(const RingElem& c, const MatrixMorphism& a) {
    MatrixMorphism r(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, c * a.at(i, j));
    return r;
}

MatrixMorphism operator*(const MatrixMorphism& a, const MatrixMorphism& b) {
    check_same_ring(a, b);
    if (a.cols() != b.rows()) throw UsageError("matrix product shape mismatch");
    MatrixMorphism r(a.ring(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            RingElem s = a.ring().zero();
            for (int k = 0; k < a.cols(); ++k) s = s + a.at(i, k) * b.at(k, j);
            r.set(i, j, s);
        }
    return r;
}

Column operator*(const MatrixMorphism& m, const Column& x) {
    if (static_cast<int>(x.size()) != m.cols()) throw UsageError("matrix apply shape mismatch");
    Column r;
    r.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        RingElem s = m.ring().zero();
        for (int j = 0; j < m.cols(); ++j) s = s + m.at(i, j) * x[j];
        r.push_back(s);
    }
    return r;
}

Column col_add(const Column& a, const Column& b) {
    if (a.size() != b.size()) throw UsageError("column shape mismatch");
    Column r;
    r.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
    return r;
}

Column col_sub(const Column& a, const Column& b) {
    if (a.size() != b.size()) throw UsageError("column shape mismatch");
    Column r;
    r.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
    return r;
}

MatrixMorphism hstack(const MatrixMorphism& a, const MatrixMorphism& b) {
    check_same_ring(a, b);
    if (a.rows() != b.rows()) throw UsageError("hstack row mismatch");
    MatrixMorphism r(a.ring(), a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

MatrixMorphism vstack(const MatrixMorphism& a, const MatrixMorphism& b) {
    check_same_ring(a, b);
    if (a.cols() != b.cols()) throw UsageError("vstack column mismatch");
    MatrixMorphism r(a.ring(), a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

MatrixMorphism diag_sum(const MatrixMorphism& a, const MatrixMorphism& b) {
    check_same_ring(a, b);
    MatrixMorphism r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

// Berkowitz: characteristic polynomial coefficients of leading principal
// submatrices, extended one row/column at a time via a Toeplitz product.
// No divisions, so it is valid over Z/n and polynomial quotients too.
RingElem det(const MatrixMorphism& m) {
    if (!m.is_square()) throw UsageError("determinant of a non-square matrix");
    const Ring& R = m.ring();
    int n = m.rows();
    if (n == 0) return R.one();

    std::vector<RingElem> c{R.one()}; // char poly of the empty matrix
    for (int r = 1; r <= n; ++r) {
        // first column of the Toeplitz matrix: 1, -a, -(row.col), -(row.M.col), ...
        std::vector<RingElem> f;
        f.reserve(r + 1);
        f.push_back(R.one());
        f.push_back(-m.at(r - 1, r - 1));
        Column v; // iterated M^k * S
        for (int i = 0; i < r - 1; ++i) v.push_back(m.at(i, r - 1));
        for (int k = 2; k <= r; ++k) {
            RingElem s = R.zero();
            for (int i = 0; i < r - 1; ++i) s = s + m.at(r - 1, i) * v[i];
            f.push_back(-s);
            if (k < r) {
                Column w;
                w.reserve(r - 1);
                for (int i = 0; i < r - 1; ++i) {
                    RingElem t = R.zero();
                    for (int j = 0; j < r - 1; ++j) t = t + m.at(i, j) * v[j];
                    w.push_back(t);
                }
                v = std::move(w);
            }
        }
        std::vector<RingElem> next;
        next.reserve(r + 1);
        for (int i = 0; i <= r; ++i) {
            RingElem s = R.zero();
            for (int j = 0; j <= std::min(i, r - 1); ++j)
                if (i - j <= r) s = s + f[i - j] * c[j];
            next.push_back(s);
        }
        c = std::move(next);
    }
    // char poly = lambda^n + c1 lambda^{n-1} + ... + cn, det = (-1)^n cn
    RingElem d = c[n];
    if (n % 2 == 1) d = -d;
    return d;
}

} // namespace kzero::rings
