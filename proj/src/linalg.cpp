#include "mahlerkit/linalg.hpp"

#include <stdexcept>

namespace mahlerkit {

namespace {

using IntRows = std::vector<std::vector<BigInt>>;

IntRows clear_denominators(const RationalMatrix& m) {
    IntRows rows(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const BigInt d = m(i, j).den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        auto& row = rows[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const Rational& q = m(i, j);
            row[static_cast<std::size_t>(j)] = q.num() * (l / q.den());
        }
    }
    return rows;
}

// Bareiss row echelon; returns rank and tracks the sign of row swaps.
std::size_t bareiss(IntRows& a, std::size_t cols, int& swap_sign) {
    const std::size_t nrows = a.size();
    BigInt prev = 1;
    std::size_t r = 0;
    swap_sign = 1;
    BigInt t;
    for (std::size_t col = 0; col < cols && r < nrows; ++col) {
        std::size_t p = r;
        while (p < nrows && a[p][col] == 0) ++p;
        if (p == nrows) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            swap_sign = -swap_sign;
        }
        for (std::size_t i = r + 1; i < nrows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                t = a[r][col] * a[i][j] - a[i][col] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[r][col];
        ++r;
    }
    return r;
}

}  // namespace

std::size_t exact_rank(const RationalMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    IntRows a = clear_denominators(m);
    int sign = 1;
    return bareiss(a, static_cast<std::size_t>(m.cols()), sign);
}

Rational exact_determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("exact_determinant: matrix is not square");
    const auto n = static_cast<std::size_t>(m.rows());
    if (n == 0) return Rational(1);
    // Row scaling by l_i multiplies the determinant by l_i.
    BigInt scale = 1;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const BigInt d = m(i, j).den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        scale *= l;
    }
    IntRows a = clear_denominators(m);
    int sign = 1;
    const std::size_t rank = bareiss(a, n, sign);
    if (rank < n) return Rational(0);
    return Rational(a[n - 1][n - 1] * sign, scale);
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
    RationalMatrix a = m;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    std::vector<Eigen::Index> pivot_cols;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && a(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) a.row(p).swap(a.row(r));
        const Rational inv = Rational(1) / a(r, c);
        for (Eigen::Index j = c; j < cols; ++j) a(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            const Rational f = a(i, c);
            for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (auto c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<RationalVector> basis;
    for (Eigen::Index f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        RationalVector v = RationalVector::Constant(cols, Rational(0));
        v(f) = Rational(1);
        for (std::size_t k = 0; k < pivot_cols.size(); ++k)
            v(pivot_cols[k]) = -a(static_cast<Eigen::Index>(k), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<BigInt> primitive_integer_vector(const RationalVector& v) {
    BigInt l = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const BigInt d = v(i).den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<BigInt> out(static_cast<std::size_t>(v.size()));
    BigInt g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[static_cast<std::size_t>(i)] = v(i).num() * (l / v(i).den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[static_cast<std::size_t>(i)].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

void SparseSystem::add_row(Row row, Rational rhs) {
    ++rows_added_;
    for (auto it = row.begin(); it != row.end();) {
        if (it->first >= unknowns_) throw std::out_of_range("SparseSystem: column out of range");
        it = it->second.is_zero() ? row.erase(it) : std::next(it);
    }
    while (!row.empty()) {
        const auto lead = row.begin();
        const std::size_t col = lead->first;
        auto piv = pivots_.find(col);
        if (piv == pivots_.end()) {
            const Rational inv = Rational(1) / lead->second;
            for (auto& [c, v] : row) v *= inv;
            rhs *= inv;
            pivots_.emplace(col, std::make_pair(std::move(row), std::move(rhs)));
            return;
        }
        const Rational f = lead->second;
        for (const auto& [c, v] : piv->second.first) {
            auto [slot, inserted] = row.try_emplace(c, Rational(0));
            slot->second -= f * v;
            if (slot->second.is_zero()) row.erase(slot);
        }
        rhs -= f * piv->second.second;
    }
    if (!rhs.is_zero()) inconsistent_ = true;
}

SparseSystem::Solution SparseSystem::solve() const {
    Solution out;
    out.rank = pivots_.size();
    out.consistent = !inconsistent_;
    if (!out.consistent) return out;
    out.nullity = unknowns_ - out.rank;
    out.particular.assign(unknowns_, Rational(0));
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        Rational value = it->second.second;
        for (const auto& [c, v] : it->second.first) {
            if (c == it->first) continue;
            value -= v * out.particular[c];
        }
        out.particular[it->first] = value;
    }
    return out;
}

}  // namespace mahlerkit
