#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/mahler.hpp"
#include "mahlerkit/multipoly.hpp"
#include "mahlerkit/rational.hpp"
#include "mahlerkit/recurrence.hpp"
#include "mahlerkit/series.hpp"
#include "mahlerkit/unipoly.hpp"

namespace mahlerkit {

/// Index of prod_i (X_i / (1 - beta_{j_i} X_i))^{m_i + 1}, with beta_0 = 0.
struct BasisFunctionId {
    std::vector<std::size_t> j;
    std::vector<std::size_t> m;
};

struct RankReport {
    std::size_t functions = 0;
    std::size_t rank = 0;
    /// Total degree of the truncation actually used.
    std::size_t degree = 0;
    std::size_t columns = 0;
    bool full_rank = false;
    std::vector<BasisFunctionId> ids;
};

/// Exact rank of the power-series coefficient matrix of the (J+1)^s (M+1)^s
/// functions, truncated at total degree D. D is raised until there are at
/// least as many columns as functions, then doubled up to 3 times while the
/// rank is deficient. betas holds beta_1..beta_J (nonzero, distinct).
RankReport rank_check_lemma38(const std::vector<Rational>& betas, std::size_t M, std::size_t s, std::size_t D);

struct FuncEqResidual {
    /// "h_jm" (all blocks), "h_ijm" (block i alone) or "g_ij".
    std::string tag;
    std::size_t sample = 0;
    std::size_t block = 0;
    Ball residual;
};

/// Residuals of
///   h_{j,m}(z) - h_{j,m}(Omega_2 z) - prod_i (M(z_i)/(1 - beta_{j_i} M(z_i)))^{m_i+1},
///   h_{i,j_i,m_i}(z) - h_{i,j_i,m_i}(Omega_2 z) - (M(z_i)/(1 - beta_{j_i} M(z_i)))^{m_i+1},
///   g_{i,j_i}(z) - (1 - beta_{j_i} M(z_i)) g_{i,j_i}(Omega_2 z)   (j_i >= 1),
/// at each sample of s blocks of n rational coordinates. betas holds
/// beta_1..beta_J; index 0 selects beta_0 = 0.
std::vector<FuncEqResidual> verify_functional_equations(const EvalContext& ctx, const std::vector<Rational>& betas,
                                                        const std::vector<std::size_t>& j, const MultiIndex& m,
                                                        const std::vector<std::vector<Rational>>& z_samples);

struct FalsifierReport {
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    bool consistent = false;
    std::size_t rank = 0;
    std::size_t nullity = 0;
    /// A solution f (free unknowns set to zero) when consistent.
    std::optional<MultiPoly> solution;
};

/// Searches for a polynomial f of total degree <= D in the s n variables with
///   (f(z) - alpha f(Omega_2 z)) prod_i Q_i(M(z_i)) = P(M(z_1), ..., M(z_s)).
/// Throws PreconditionError when some Q_i(0) = 0 or arities disagree.
FalsifierReport falsify_theorem37(const Recurrence& rec, std::size_t s, const Rational& alpha, const MultiPoly& P,
                                  const std::vector<UniPoly>& Q, std::size_t D);
/// Same for R = num/den; den must split as a product of univariate factors.
FalsifierReport falsify_theorem37(const Recurrence& rec, std::size_t s, const Rational& alpha,
                                  const RationalFunction& R, std::size_t D);

struct Lemma41Report {
    MultiPoly gcd;
    bool monomial = false;
    /// Exponent vector of the gcd when it is a monomial.
    Exponent I;
};

/// gcd(A(Omega z), B(Omega z)). Throws PreconditionError unless A and B are coprime.
Lemma41Report check_lemma41(const MultiPoly& A, const MultiPoly& B, const BlockTransform& t);

/// M(Omega_1^k z) - gamma as a polynomial in n variables.
MultiPoly orbit_monomial_minus(const Recurrence& rec, std::size_t k, const Rational& gamma);

/// True iff gcd(M(Omega_1^{k1} z) - gamma1, M(Omega_1^{k2} z) - gamma2) = 1.
/// Throws PreconditionError for k1 = k2 or a zero gamma.
bool check_lemma42(const Recurrence& rec, std::size_t k1, std::size_t k2, const Rational& gamma1,
                   const Rational& gamma2);

struct Lemma43Entry {
    std::size_t l = 0;
    /// R_{k+l}/R_k at the first k with R_k != 0.
    Rational c;
    /// First k <= K with R_{k+l} != c R_k, if any.
    std::optional<std::size_t> violation;
};

/// Scans R_{k+l} = c R_k for l = 1..l_max and k <= K.
std::vector<Lemma43Entry> check_lemma43(const Recurrence& rec, std::size_t l_max, std::size_t K);

struct Lemma44Report {
    bool hypothesis = false;  // P(Omega z) divides P(z) z^I
    bool conclusion = false;  // P is a monomial
    [[nodiscard]] bool counterexample() const { return hypothesis && !conclusion; }
};

Lemma44Report check_lemma44(const MultiPoly& P, const BlockTransform& t, const Exponent& I);

/// Per-variable degrees of P(Omega z).
Exponent pullback_degrees(const MultiPoly& P, const BlockTransform& t);

/// Random polynomial with `terms` terms, exponents <= max_exp and integer
/// coefficients in [-5, 5] \ {0}.
MultiPoly random_poly(std::mt19937_64& rng, std::size_t arity, std::size_t terms, std::uint64_t max_exp);

struct PropertyRunReport {
    std::size_t instances = 0;
    std::size_t counterexamples = 0;
    std::vector<std::string> failures;
};

PropertyRunReport property_run_lemma41(const BlockTransform& t, std::size_t instances, std::uint64_t seed);
PropertyRunReport property_run_lemma42(const Recurrence& rec, std::size_t instances, std::uint64_t seed);
PropertyRunReport property_run_lemma44(const BlockTransform& t, std::size_t instances, std::uint64_t seed);

struct RelationScanReport {
    std::size_t degree = 0;
    /// Exponent vectors of the monomials in the basis, constant first.
    std::vector<std::vector<std::size_t>> monomials;
    mpfr_prec_t precision = 0;
    double height = 0.0;
    /// Integer relation, certified by Ball arithmetic.
    std::optional<std::vector<BigInt>> found;
    BigInt found_height;
    /// No relation with max |c_i| below this bound exists (log10 of it).
    double absent_below_log10 = 0.0;
    std::string verdict;
};

inline constexpr long kScanGuardBits = 16;

/// LLL integer-relation search among the monomials of degree <= d in the
/// values. Throws NumericError when a value radius is not below 2^{-p/2}.
RelationScanReport relation_scan(const std::vector<Ball>& values, std::size_t d, double H, mpfr_prec_t p);

}  // namespace mahlerkit
