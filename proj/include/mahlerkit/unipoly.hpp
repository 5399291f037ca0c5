#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mahlerkit/rational.hpp"

namespace mahlerkit {

/// Dense univariate polynomial over Q. coeffs()[i] multiplies X^i; the
/// highest stored coefficient is nonzero, the zero polynomial stores nothing.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(std::initializer_list<Rational> coeffs);
    explicit UniPoly(std::vector<Rational> coeffs);
    /// The constant polynomial c.
    static UniPoly constant(const Rational& c);
    /// c * X^k.
    static UniPoly monomial(const Rational& c, std::size_t k);
    /// Product of (X - r) over the given roots.
    static UniPoly from_roots(const std::vector<Rational>& roots);

    [[nodiscard]] const std::vector<Rational>& coeffs() const { return c_; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
    [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    [[nodiscard]] Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    [[nodiscard]] UniPoly monic() const;
    [[nodiscard]] UniPoly derivative() const;
    [[nodiscard]] Rational operator()(const Rational& x) const;
    /// Horner evaluation in any ring that accepts Rational coefficients.
    template <class Scalar, class Convert>
    Scalar eval(const Scalar& x, Convert&& to_scalar) const {
        if (c_.empty()) return to_scalar(Rational(0));
        Scalar acc = to_scalar(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + to_scalar(c_[i]);
        return acc;
    }

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const UniPoly& o);
    UniPoly& operator*=(const Rational& c);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
    friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
    friend UniPoly operator-(const UniPoly& a) { return a * Rational(-1); }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    [[nodiscard]] std::string str(const std::string& var = "X") const;

private:
    void trim();
    std::vector<Rational> c_;
};

UniPoly pow(const UniPoly& p, unsigned k);
/// Quotient and remainder; throws std::domain_error on a zero divisor.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Exact quotient; throws std::domain_error if b does not divide a.
UniPoly divide_exact(const UniPoly& a, const UniPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);

/// Determinant of the Sylvester matrix with a's coefficients (leading first)
/// in the top deg(b) rows and b's in the bottom deg(a) rows. Equals
/// lc(a)^deg(b) * prod b(alpha) over the roots alpha of a; for monic linear
/// inputs resultant(X-u, X-v) = u - v. Zero iff a and b share a root.
/// Throws std::domain_error when both inputs are zero.
Rational resultant(const UniPoly& a, const UniPoly& b);

}  // namespace mahlerkit
