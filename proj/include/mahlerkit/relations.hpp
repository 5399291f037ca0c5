#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/errors.hpp"
#include "mahlerkit/multipoly.hpp"
#include "mahlerkit/rational.hpp"
#include "mahlerkit/series.hpp"

namespace mahlerkit {

namespace detail {
inline bool is_zero_entry(const Rational& x) { return x.is_zero(); }
inline bool is_zero_entry(const Ball& x) { return x.is_exact_zero(); }
inline bool is_one_entry(const Rational& x) { return x == Rational(1); }
inline bool is_one_entry(const Ball& x) { return x.is_exact() && x.contains(Rational(1)); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Ball zero_like(const Ball& x) { return Ball(x.prec()); }
}  // namespace detail

/// Lower triangular matrix with exactly zero strictly-upper part and a unit
/// (or merely invertible) diagonal.
template <class Scalar>
class UnitLowerTriangular {
public:
    using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    UnitLowerTriangular() = default;
    /// Throws PreconditionError if m is not square lower triangular, or if
    /// `unit` is set and the diagonal is not exactly 1.
    UnitLowerTriangular(Dense m, bool unit) : m_(std::move(m)), unit_(unit) {
        if (m_.rows() != m_.cols()) throw PreconditionError("triangular matrix must be square");
        for (Eigen::Index i = 0; i < m_.rows(); ++i) {
            for (Eigen::Index j = i + 1; j < m_.cols(); ++j)
                if (!detail::is_zero_entry(m_(i, j))) throw PreconditionError("nonzero strictly-upper entry");
            if (unit_ && !detail::is_one_entry(m_(i, i))) throw PreconditionError("diagonal entry is not 1");
            if (!unit_ && detail::is_zero_entry(m_(i, i))) throw PreconditionError("zero diagonal entry");
        }
    }

    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(m_.rows()); }
    [[nodiscard]] bool unit() const { return unit_; }
    [[nodiscard]] const Dense& matrix() const { return m_; }
    [[nodiscard]] const Scalar& operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    /// Product with a column, skipping the zero upper part.
    [[nodiscard]] std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        if (v.size() != size()) throw PreconditionError("vector length does not match the matrix");
        std::vector<Scalar> out;
        for (std::size_t i = 0; i < size(); ++i) {
            Scalar acc = detail::zero_like(v[0]);
            for (std::size_t j = 0; j <= i; ++j) acc = acc + (*this)(i, j) * v[j];
            out.push_back(acc);
        }
        return out;
    }

    friend UnitLowerTriangular operator*(const UnitLowerTriangular& a, const UnitLowerTriangular& b) {
        if (a.size() != b.size()) throw PreconditionError("matrix sizes differ");
        const auto n = static_cast<Eigen::Index>(a.size());
        Dense r(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                Scalar acc = detail::zero_like(a.m_(i, i));
                for (Eigen::Index k = j; k <= i; ++k) acc = acc + a.m_(i, k) * b.m_(k, j);
                r(i, j) = acc;
            }
        return UnitLowerTriangular(std::move(r), a.unit_ && b.unit_);
    }

    [[nodiscard]] bool is_identity() const {
        for (Eigen::Index i = 0; i < m_.rows(); ++i)
            for (Eigen::Index j = 0; j <= i; ++j) {
                if (i == j ? !detail::is_one_entry(m_(i, j)) : !detail::is_zero_entry(m_(i, j))) return false;
            }
        return true;
    }

private:
    Dense m_;
    bool unit_ = true;
};

/// P_0..P_M in X_0..X_{M-1} with g^{(m)} = g P_m(h, ..., h^{(m-1)}) under
/// g' = -g h; Q_0..Q_M in Y_1..Y_M (variable j-1 holds Y_j) with
/// (1/g)^{(m)} = (1/g) Q_m(-g'/g, ..., -g^{(m)}/g).
struct BellFamily {
    std::vector<MultiPoly> P;
    std::vector<MultiPoly> Q;
};

BellFamily bell_family(std::size_t M);

/// Entry (m, mu) = binom(m, mu) P_{m-mu}(c_0, ..., c_{M-1}); size M+1.
UnitLowerTriangular<Rational> build_B(const std::vector<Rational>& c);
UnitLowerTriangular<Ball> build_B(const std::vector<Ball>& c);
/// Entry (m, mu) = binom(m, mu) Q_{m-mu}(Y_1, ..., Y_M); size M+1.
UnitLowerTriangular<Rational> build_C(const std::vector<Rational>& y);
UnitLowerTriangular<Ball> build_C(const std::vector<Ball>& y);

/// Entry (m, mu) = prod_i binom(m_i, mu_i) r_i^{(m_i - mu_i)} over
/// {0..M}^s in lexicographic order; ratios[i][j-1] = g_i^{(j)}/g_i, j = 1..M.
UnitLowerTriangular<Rational> build_A(const std::vector<std::vector<Rational>>& ratios, std::size_t M);
UnitLowerTriangular<Ball> build_A(const std::vector<std::vector<Ball>>& ratios, std::size_t M);

struct LCertificate {
    UnitLowerTriangular<Rational> L;
    std::size_t n = 0;   // order of the zero of G_i at beta
    std::size_t k0 = 0;  // shift read from the context
    Rational p;          // P^{(n)}(beta)
    Rational q;          // Q(beta)
};

/// Column (G_i^{(m+n)}(beta))_m = L (tilde G_i^{(mu)}(beta))_mu, where the
/// tilde function uses the shift k0 carried by ctx. Throws PreconditionError
/// when 1 - a_i^{R_k} beta vanishes for some k >= k0.
LCertificate build_L(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M);

/// Smallest k0 <= K0 + 64 with no product zero at or beyond k0.
std::size_t select_shift(const EvalContext& ctx, const std::vector<Rational>& beta);

struct ResidualReport {
    std::vector<std::string> labels;
    std::vector<Ball> residuals;
    /// Every residual contains 0 with radius below 2^tol_exp.
    [[nodiscard]] bool ok(long tol_exp) const;
    /// Largest radius as a double (rounded up).
    [[nodiscard]] double max_radius() const;
};

/// Residuals of G_i^{(m+n)}(beta) - sum_mu L(m, mu) tilde G_i^{(mu)}(beta), m = 0..M.
ResidualReport verify_L(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M);

/// Residuals of theta^{(m+n)}(beta) - (L tilde-theta)_m - theta_2^{(m+n)}(beta)
/// over m in {0..M}^s, lexicographic order.
ResidualReport verify_theta_decomposition(const EvalContext& ctx, const std::vector<Rational>& beta, std::size_t M);

}  // namespace mahlerkit
