#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/rational.hpp"
#include "mahlerkit/recurrence.hpp"

namespace mahlerkit {

using MultiIndex = std::vector<std::size_t>;

struct MultIndepReport {
    bool independent = true;
    /// Nonzero integer vector w with prod a_i^{w_i} = 1 when dependent.
    std::vector<BigInt> witness;
};

/// Decides multiplicative independence through exponent vectors over a
/// coprime base of the numerators and denominators. Throws
/// PreconditionError on a zero input.
MultIndepReport check_mult_indep(const std::vector<Rational>& a);

/// Immutable evaluation context: recurrence, bases a_i, precision, and the
/// sequence shift k0. Terms and the powers a_i^{R_k} are computed eagerly.
class EvalContext {
public:
    /// Throws PreconditionError unless (ND) holds, strict growth is certified,
    /// 0 < |a_i| < 1 and the a_i are multiplicatively independent.
    EvalContext(Recurrence rec, std::vector<Rational> a, mpfr_prec_t prec, std::size_t shift = 0);

    [[nodiscard]] std::size_t s() const { return d_->a.size(); }
    [[nodiscard]] const std::vector<Rational>& a() const { return d_->a; }
    [[nodiscard]] const Recurrence& rec() const { return d_->rec; }
    [[nodiscard]] const NdReport& nd() const { return d_->nd; }
    [[nodiscard]] mpfr_prec_t prec() const { return prec_; }
    [[nodiscard]] mpfr_prec_t working_prec() const { return prec_ + kGuardBits; }
    [[nodiscard]] std::size_t shift() const { return shift_; }
    /// Index from which the shifted sequence increases strictly.
    [[nodiscard]] std::size_t growth_index() const;
    /// Number of shifted terms available.
    [[nodiscard]] std::size_t term_count() const;
    /// R_{k + shift}.
    [[nodiscard]] const BigInt& R(std::size_t k) const;
    /// Unshifted R_k.
    [[nodiscard]] const BigInt& base_R(std::size_t k) const;
    [[nodiscard]] std::size_t base_term_count() const { return d_->terms.size(); }
    /// a_i^{R_{k + shift}} at working precision.
    [[nodiscard]] const Ball& power(std::size_t i, std::size_t k) const;
    [[nodiscard]] const Ball& a_ball(std::size_t i) const { return powers_->a_balls.at(i); }

    [[nodiscard]] EvalContext with_shift(std::size_t k0) const;
    [[nodiscard]] EvalContext with_prec(mpfr_prec_t prec) const;

    static constexpr mpfr_prec_t kGuardBits = 64;
    static constexpr std::size_t kMaxTerms = 10000;

private:
    struct Shared {
        Recurrence rec;
        std::vector<Rational> a;
        NdReport nd;
        std::vector<BigInt> terms;
    };
    struct Powers {
        std::vector<Ball> a_balls;
        std::vector<std::vector<Ball>> table;  // [i][unshifted k]
    };
    EvalContext(std::shared_ptr<const Shared> d, mpfr_prec_t prec, std::size_t shift);
    void build_powers();

    std::shared_ptr<const Shared> d_;
    std::shared_ptr<const Powers> powers_;
    mpfr_prec_t prec_;
    std::size_t shift_;
};

struct ZeroProfile {
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::size_t>> hit_indices;
};

/// Exact enumeration of k with a_i^{-R_{k+shift}} = beta_i for each i.
ZeroProfile zero_profile(const EvalContext& ctx, const std::vector<Rational>& beta);
/// Hits for a single coordinate.
std::vector<std::size_t> hits(const EvalContext& ctx, std::size_t i, const Rational& beta);

/// Taylor coefficients G_i^{(m)}(beta)/m!, m = 0..M. The first N_i
/// coefficients are exact zeros.
Jet eval_G_jet(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M);
/// Taylor coefficients H_i^{(m)}(beta)/m!; PreconditionError at a pole.
Jet eval_H_jet(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M);
/// H^{(m)}(beta) for H(y) = sum_k prod_i a_i^{R_k}/(1 - a_i^{R_k} y_i).
Ball eval_H_multi(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex& m);
/// G^{(m)}(beta) for G(y) = prod_i G_i(y_i).
Ball eval_G_multi(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex& m);
/// Theta^{(m)}(beta) for Theta = G H.
Ball eval_Theta(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex& m);
/// Theta^{(m)}(beta) for all m with m_i <= orders_i, in lexicographic order
/// (leftmost index most significant).
std::vector<Ball> eval_Theta_table(const EvalContext& ctx, const std::vector<Rational>& beta,
                                   const MultiIndex& orders);
/// Xi^{(m)} = Theta^{(m + (1, ..., 1))}.
Ball eval_Xi(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex& m);

/// sum_k prod_i (w_ik / (1 - beta_i w_ik))^{m_i + 1} with w_ik = M(Omega_1^k z_i).
/// z holds beta.size() blocks of n coordinates. Every block needs |z_ij| <= 1
/// with at least one coordinate of modulus < 1; otherwise PreconditionError.
Ball eval_lambert_general(const EvalContext& ctx, const std::vector<Ball>& z, const std::vector<Rational>& beta,
                          const MultiIndex& m);
/// prod_k (1 - beta M(Omega_1^k z)) for a single block z.
Ball eval_lambert_product(const EvalContext& ctx, const std::vector<Ball>& z, const Rational& beta);

/// Number of multi-indices with m_i <= orders_i, and lexicographic ranking.
std::size_t multi_index_count(const MultiIndex& orders);
std::size_t multi_index_rank(const MultiIndex& m, const MultiIndex& orders);
MultiIndex multi_index_unrank(std::size_t idx, const MultiIndex& orders);

}  // namespace mahlerkit
