#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/multipoly.hpp"
#include "mahlerkit/rational.hpp"
#include "mahlerkit/recurrence.hpp"

namespace mahlerkit {

/// n x n matrix with first column (c_1, ..., c_n), ones on the superdiagonal
/// and zeros elsewhere.
class CompanionMatrix {
public:
    explicit CompanionMatrix(std::vector<BigInt> c);
    static CompanionMatrix from(const Recurrence& rec) { return CompanionMatrix(rec.coeffs()); }

    [[nodiscard]] std::size_t n() const { return c_.size(); }
    [[nodiscard]] const std::vector<BigInt>& coeffs() const { return c_; }
    [[nodiscard]] BigInt entry(std::size_t i, std::size_t j) const;
    [[nodiscard]] BigInt determinant() const;
    /// Dense k-th power.
    [[nodiscard]] std::vector<std::vector<BigInt>> power(std::size_t k) const;

private:
    std::vector<BigInt> c_;
};

/// diag(Omega_1, ..., Omega_1) with s blocks; only ever applied blockwise.
class BlockTransform {
public:
    BlockTransform(CompanionMatrix block, std::size_t s);

    [[nodiscard]] const CompanionMatrix& block() const { return block_; }
    [[nodiscard]] std::size_t s() const { return s_; }
    [[nodiscard]] std::size_t dim() const { return s_ * block_.n(); }

private:
    CompanionMatrix block_;
    std::size_t s_;
};

/// M(z) = z_1^{R_{n-1}} ... z_n^{R_0}, one copy per block.
class MonomialMap {
public:
    explicit MonomialMap(const Recurrence& rec);

    [[nodiscard]] const std::vector<BigInt>& exponents() const { return e_; }
    [[nodiscard]] std::size_t n() const { return e_.size(); }
    /// M(z_i) as a polynomial in `arity` variables, block i starting at i*n.
    [[nodiscard]] MultiPoly as_poly(std::size_t block, std::size_t arity) const;
    [[nodiscard]] Rational operator()(const std::vector<Rational>& block) const;
    [[nodiscard]] Ball operator()(const std::vector<Ball>& block) const;

private:
    std::vector<BigInt> e_;
};

/// Component i of Omega z is prod_j z_j^{omega_ij}.
std::vector<Rational> act_on_point(const CompanionMatrix& t, const std::vector<Rational>& z);
std::vector<Ball> act_on_point(const CompanionMatrix& t, const std::vector<Ball>& z);
std::vector<Rational> act_on_point(const BlockTransform& t, const std::vector<Rational>& z);
std::vector<Ball> act_on_point(const BlockTransform& t, const std::vector<Ball>& z);

/// Exponent vector of m(Omega z) for the monomial m with exponents e,
/// i.e. Omega^T e.
std::vector<BigInt> act_on_exponents(const CompanionMatrix& t, const std::vector<BigInt>& e);
Exponent act_on_exponents(const CompanionMatrix& t, const Exponent& e);
Exponent act_on_exponents(const BlockTransform& t, const Exponent& e);

/// P(Omega z) for a polynomial in t.dim() variables.
MultiPoly pullback(const BlockTransform& t, const MultiPoly& p);

/// Omega_2^k alpha for k = 0..K, enclosed at precision prec. Entries come from
/// exact exponent matrices, so enclosures do not degrade along the orbit.
std::vector<std::vector<Ball>> orbit(const BlockTransform& t, const std::vector<Rational>& alpha,
                                     std::size_t K, mpfr_prec_t prec);

struct OrbitReport {
    Ball rho;
    std::optional<std::uint64_t> eigen_unity_witness;
    bool determinant_nonzero = true;
    bool condition_I = false;
    /// max entry of Omega_1^k divided by rho^k, k = 0..K (condition II, empirical).
    std::vector<Ball> entry_growth_ratios;
    /// log|alpha_j^{(k)}| for k = 0..K and every coordinate j.
    std::vector<std::vector<Ball>> log_moduli;
    /// min over the tail window and coordinates with alpha_j^{(k)} != 1 of
    /// -log|alpha_j^{(k)}| / rho^k (condition III, empirical).
    Ball fitted_c;
    std::size_t tail_window_start = 0;
    std::string condition_II_verdict;
    std::string condition_III_verdict;
    std::string condition_IV_verdict;
};

/// Enclosure of the unique positive root of Phi.
Ball dominant_root(const Recurrence& rec, mpfr_prec_t prec);

/// Throws PreconditionError for a geometric recurrence.
OrbitReport check_conditions(const Recurrence& rec, const BlockTransform& t, const std::vector<Rational>& alpha,
                             std::size_t K, mpfr_prec_t prec = 128);

/// alpha = (1, ..., 1, a_1, ..., 1, ..., 1, a_s).
std::vector<Rational> admissible_point(const std::vector<Rational>& a, std::size_t n);

}  // namespace mahlerkit
