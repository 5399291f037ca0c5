#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mahlerkit/rational.hpp"

namespace mahlerkit {

/// Rank over Q via fraction-free (Bareiss) elimination on the row-wise
/// denominator-cleared matrix.
std::size_t exact_rank(const RationalMatrix& m);

/// Determinant of a square rational matrix, fraction-free.
Rational exact_determinant(const RationalMatrix& m);

/// Basis of the right null space {x : m x = 0} over Q.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Primitive integer vector spanning a one-dimensional rational direction.
std::vector<BigInt> primitive_integer_vector(const RationalVector& v);

/// Sparse linear system A x = b over Q built row by row.
class SparseSystem {
public:
    using Row = std::map<std::size_t, Rational>;

    explicit SparseSystem(std::size_t unknowns) : unknowns_(unknowns) {}

    void add_row(Row row, Rational rhs);

    [[nodiscard]] std::size_t unknowns() const { return unknowns_; }
    [[nodiscard]] std::size_t rows() const { return rows_added_; }

    struct Solution {
        bool consistent = false;
        std::size_t rank = 0;
        /// Dimension of the affine solution set when consistent.
        std::size_t nullity = 0;
        /// Particular solution with all free unknowns set to zero.
        std::vector<Rational> particular;
    };

    /// Incremental elimination; rows are reduced as they are added, so solve()
    /// only performs back substitution.
    [[nodiscard]] Solution solve() const;

private:
    std::size_t unknowns_;
    std::size_t rows_added_ = 0;
    bool inconsistent_ = false;
    // pivot column -> (row with coefficient 1 at the pivot, rhs)
    std::map<std::size_t, std::pair<Row, Rational>> pivots_;
};

}  // namespace mahlerkit
