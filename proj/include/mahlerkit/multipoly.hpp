#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mahlerkit/rational.hpp"
#include "mahlerkit/unipoly.hpp"

namespace mahlerkit {

using Exponent = std::vector<std::uint64_t>;

/// Sparse multivariate polynomial over Q with a fixed number of variables.
/// Terms are keyed by exponent vector in lexicographic order, variable 0
/// most significant; the leading term is the lex-largest one.
class MultiPoly {
public:
    using Terms = std::map<Exponent, Rational>;

    explicit MultiPoly(std::size_t arity = 0) : arity_(arity) {}
    MultiPoly(std::size_t arity, Terms terms);

    static MultiPoly constant(std::size_t arity, const Rational& c);
    static MultiPoly monomial(const Exponent& e, const Rational& c = Rational(1));
    /// The single variable z_index.
    static MultiPoly variable(std::size_t arity, std::size_t index);

    [[nodiscard]] std::size_t arity() const { return arity_; }
    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }
    [[nodiscard]] Rational constant_term() const;
    [[nodiscard]] Rational coeff(const Exponent& e) const;
    [[nodiscard]] std::uint64_t degree_in(std::size_t var) const;
    [[nodiscard]] std::uint64_t total_degree() const;
    [[nodiscard]] bool uses_variable(std::size_t var) const { return degree_in(var) > 0; }

    /// Lex-largest term; throws on the zero polynomial.
    [[nodiscard]] const Terms::value_type& leading_term() const;
    /// Scaled so the leading coefficient is 1 (the zero polynomial is unchanged).
    [[nodiscard]] MultiPoly normalized() const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator-(const MultiPoly& a) { return a * Rational(-1); }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    /// Multiplies by the monomial z^e.
    [[nodiscard]] MultiPoly shifted(const Exponent& e) const;

    /// Collects powers of z_var: degree -> coefficient (with z_var removed).
    [[nodiscard]] std::map<std::uint64_t, MultiPoly> coefficients_in(std::size_t var) const;

    /// Substitutes z_var = value.
    [[nodiscard]] MultiPoly specialize(std::size_t var, const Rational& value) const;
    /// Univariate polynomial in z_var; every other variable must be absent.
    [[nodiscard]] UniPoly to_unipoly(std::size_t var) const;

    [[nodiscard]] Rational operator()(const std::vector<Rational>& point) const;

    /// Evaluation in any commutative ring; `pow_fn(x, k)` must return x^k.
    template <class Scalar, class Convert, class PowFn>
    Scalar eval(const std::vector<Scalar>& point, Convert&& to_scalar, PowFn&& pow_fn) const {
        Scalar acc = to_scalar(Rational(0));
        for (const auto& [e, c] : terms_) {
            Scalar t = to_scalar(c);
            for (std::size_t i = 0; i < arity_; ++i)
                if (e[i] != 0) t = t * pow_fn(point[i], e[i]);
            acc = acc + t;
        }
        return acc;
    }

    [[nodiscard]] std::string str() const;

private:
    void check_arity(const MultiPoly& o) const;
    std::size_t arity_;
    Terms terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned k);

/// Quotient when b divides a exactly, std::nullopt otherwise. Throws on b = 0.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
[[nodiscard]] inline bool divides(const MultiPoly& b, const MultiPoly& a) {
    return divide_exact(a, b).has_value();
}

/// Normalized greatest common divisor (leading coefficient 1); gcd(p, 0) is
/// p normalized. Recursive primitive remainder sequence over Q[other vars].
/// Throws PreconditionError on an arity mismatch.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

/// Resultant of two bivariate polynomials with respect to variable `eliminate`,
/// as a univariate polynomial in the remaining variable. Computed by
/// evaluation at rational points and exact interpolation.
UniPoly resultant_eliminate(const MultiPoly& a, const MultiPoly& b, std::size_t eliminate);

/// Exact interpolation through (x_i, y_i) with distinct x_i.
UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

/// Quotient num/den in lowest terms with den normalized to leading coefficient 1.
class RationalFunction {
public:
    explicit RationalFunction(std::size_t arity = 0);
    RationalFunction(MultiPoly num, MultiPoly den);

    [[nodiscard]] const MultiPoly& num() const { return num_; }
    [[nodiscard]] const MultiPoly& den() const { return den_; }
    [[nodiscard]] std::size_t arity() const { return num_.arity(); }
    [[nodiscard]] bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    [[nodiscard]] Rational operator()(const std::vector<Rational>& point) const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    MultiPoly num_;
    MultiPoly den_;
};

}  // namespace mahlerkit
