#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace mahlerkit {

using BigInt = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over mpq_class. All operators return a materialized
/// Rational, which keeps gmpxx expression templates out of Eigen kernels.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}                                    // NOLINT
    Rational(int v) : q_(static_cast<long>(v)) {}                  // NOLINT
    Rational(const BigInt& v) : q_(v) {}                           // NOLINT
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
    /// or zero denominator.
    static Rational parse(std::string_view text);

    [[nodiscard]] BigInt num() const { return q_.get_num(); }
    [[nodiscard]] BigInt den() const { return q_.get_den(); }
    [[nodiscard]] const mpq_class& get() const { return q_; }
    [[nodiscard]] mpq_srcptr get_mpq_t() const { return q_.get_mpq_t(); }

    [[nodiscard]] int sign() const { return sgn(q_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
    [[nodiscard]] double to_double() const { return q_.get_d(); }
    /// "num/den", or "num" when the denominator is one.
    [[nodiscard]] std::string str() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class q_;
};

Rational abs(const Rational& r);
/// r^e for any integer e (negative exponents require r != 0).
Rational pow(const Rational& r, long e);
Rational pow(const Rational& r, const BigInt& e);
BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

}  // namespace mahlerkit

namespace Eigen {

template <>
struct NumTraits<mahlerkit::Rational> : GenericNumTraits<mahlerkit::Rational> {
    using Real = mahlerkit::Rational;
    using NonInteger = mahlerkit::Rational;
    using Nested = mahlerkit::Rational;
    using Literal = mahlerkit::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 16
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
