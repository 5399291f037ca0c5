#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <mpfr.h>

#include <Eigen/Core>

#include "mahlerkit/rational.hpp"

namespace mahlerkit {

/// Owning RAII handle for an mpfr_t.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec = 64);
    Mpfr(const Mpfr& o);
    Mpfr(Mpfr&& o) noexcept;
    Mpfr& operator=(const Mpfr& o);
    Mpfr& operator=(Mpfr&& o) noexcept;
    ~Mpfr();

    [[nodiscard]] mpfr_ptr get() { return v_; }
    [[nodiscard]] mpfr_srcptr get() const { return v_; }
    [[nodiscard]] mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

/// Radii and error terms live at this precision and are always rounded up.
inline constexpr mpfr_prec_t kRadPrec = 64;

/// Real midpoint-radius enclosure: the represented number x satisfies
/// |x - mid| <= rad. Every operation returns an enclosure of the exact result.
class Ball {
public:
    explicit Ball(mpfr_prec_t prec = 128);
    Ball(const Rational& q, mpfr_prec_t prec);
    Ball(long v, mpfr_prec_t prec);
    /// The ball covering [lo, hi].
    static Ball from_interval(const Mpfr& lo, const Mpfr& hi, mpfr_prec_t prec);

    [[nodiscard]] mpfr_prec_t prec() const { return mid_.prec(); }
    [[nodiscard]] const Mpfr& mid() const { return mid_; }
    [[nodiscard]] const Mpfr& rad() const { return rad_; }

    [[nodiscard]] bool is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }
    [[nodiscard]] bool is_exact_zero() const { return is_exact() && mpfr_zero_p(mid_.get()); }
    [[nodiscard]] bool contains_zero() const;
    [[nodiscard]] bool contains(const Rational& q) const;
    [[nodiscard]] bool contains(const Ball& b) const;
    [[nodiscard]] bool overlaps(const Ball& b) const;

    [[nodiscard]] double mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }
    /// Radius converted to double, rounded up.
    [[nodiscard]] double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }
    /// rad < 2^e.
    [[nodiscard]] bool rad_below_pow2(long e) const;
    /// Upper bound for |x| over the ball.
    [[nodiscard]] Mpfr mag_upper() const;
    /// Lower bound for |x| over the ball (0 when the ball contains 0).
    [[nodiscard]] Mpfr mag_lower() const;

    /// Widens the radius by e (e >= 0).
    Ball& add_error(const Mpfr& e);
    Ball& add_error_pow2(long e);
    /// Same enclosure with the midpoint rounded to a new precision.
    [[nodiscard]] Ball with_prec(mpfr_prec_t prec) const;

    Ball& operator+=(const Ball& o);
    Ball& operator-=(const Ball& o);
    Ball& operator*=(const Ball& o);
    Ball& operator/=(const Ball& o);
    friend Ball operator+(Ball a, const Ball& b) { return a += b; }
    friend Ball operator-(Ball a, const Ball& b) { return a -= b; }
    friend Ball operator*(Ball a, const Ball& b) { return a *= b; }
    friend Ball operator/(Ball a, const Ball& b) { return a /= b; }
    friend Ball operator-(const Ball& a);

    [[nodiscard]] std::string str() const;

private:
    void add_rounding(int ternary);
    Mpfr mid_;
    Mpfr rad_;
};

Ball pow(const Ball& b, const BigInt& e);
Ball pow(const Ball& b, unsigned long e);
/// Enclosure of log|q| for nonzero rational q.
Ball log_abs(const Rational& q, mpfr_prec_t prec);
/// Enclosure of sqrt(b); b must not contain negative numbers.
Ball sqrt(const Ball& b);

/// Upper-bound helpers on kRadPrec reals.
Mpfr upper(const Rational& q);
Mpfr lower(const Rational& q);

/// Fractional decimal digits used when rendering a ball computed at p bits:
/// floor(p * log10 2).
unsigned decimal_digits(mpfr_prec_t p);

struct RenderedBall {
    std::string mid_re;
    std::string mid_im;
    std::string rad;
    bool exact_zero = false;
};

/// Midpoint truncated toward zero to `digits` fractional digits; the
/// truncation error is folded into the rendered radius, which is rounded up.
RenderedBall render(const Ball& b, unsigned digits);

/// Truncated Taylor expansion c_0 + c_1 t + ... + c_M t^M.
class Jet {
public:
    Jet() = default;
    Jet(std::size_t order, mpfr_prec_t prec);
    explicit Jet(std::vector<Ball> coeffs) : c_(std::move(coeffs)) {}
    static Jet constant(const Ball& c, std::size_t order);
    /// c0 + c1 t.
    static Jet linear(const Ball& c0, const Ball& c1, std::size_t order);

    [[nodiscard]] std::size_t order() const { return c_.size() - 1; }
    [[nodiscard]] const std::vector<Ball>& coeffs() const { return c_; }
    [[nodiscard]] const Ball& operator[](std::size_t i) const { return c_[i]; }
    Ball& operator[](std::size_t i) { return c_[i]; }

    Jet& operator+=(const Jet& o);
    Jet& operator*=(const Ball& s);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }

private:
    std::vector<Ball> c_;
};

using BallMatrix = Eigen::Matrix<Ball, Eigen::Dynamic, Eigen::Dynamic>;
using BallVector = Eigen::Matrix<Ball, Eigen::Dynamic, 1>;

}  // namespace mahlerkit

namespace Eigen {

template <>
struct NumTraits<mahlerkit::Ball> : GenericNumTraits<mahlerkit::Ball> {
    using Real = mahlerkit::Ball;
    using NonInteger = mahlerkit::Ball;
    using Nested = mahlerkit::Ball;
    using Literal = mahlerkit::Ball;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 16
    };
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
