#include "mahlerkit/ball.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "mahlerkit/errors.hpp"

namespace mahlerkit {

namespace {

// Enclosures rely on tiny tail terms staying representable.
const struct ExponentRange {
    ExponentRange() {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
    }
} exponent_range;

mpq_class to_mpq(mpfr_srcptr x) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

Mpfr abs_up(const Mpfr& x) {
    Mpfr r(kRadPrec);
    mpfr_abs(r.get(), x.get(), MPFR_RNDU);
    return r;
}

Mpfr abs_down(const Mpfr& x) {
    Mpfr r(kRadPrec);
    mpfr_abs(r.get(), x.get(), MPFR_RNDD);
    return r;
}

}  // namespace

Mpfr::Mpfr(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

Mpfr::Mpfr(const Mpfr& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Mpfr& Mpfr::operator=(const Mpfr& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Mpfr::~Mpfr() { mpfr_clear(v_); }

Ball::Ball(mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {}

Ball::Ball(const Rational& q, mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {
    add_rounding(mpfr_set_q(mid_.get(), q.get_mpq_t(), MPFR_RNDN));
}

Ball::Ball(long v, mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {
    add_rounding(mpfr_set_si(mid_.get(), v, MPFR_RNDN));
}

Ball Ball::from_interval(const Mpfr& lo, const Mpfr& hi, mpfr_prec_t prec) {
    Ball b(prec);
    // Rounding of the midpoint is absorbed by measuring both distances.
    mpfr_add(b.mid_.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(b.mid_.get(), b.mid_.get(), 1, MPFR_RNDN);
    Mpfr d1(kRadPrec), d2(kRadPrec);
    mpfr_sub(d1.get(), hi.get(), b.mid_.get(), MPFR_RNDU);
    mpfr_sub(d2.get(), b.mid_.get(), lo.get(), MPFR_RNDU);
    mpfr_max(b.rad_.get(), d1.get(), d2.get(), MPFR_RNDU);
    if (mpfr_sgn(b.rad_.get()) < 0) mpfr_set_zero(b.rad_.get(), 1);
    return b;
}

void Ball::add_rounding(int ternary) {
    if (ternary == 0) return;
    Mpfr err(kRadPrec);
    if (mpfr_zero_p(mid_.get())) {
        mpfr_set_ui_2exp(err.get(), 1, mpfr_get_emin(), MPFR_RNDU);
    } else {
        mpfr_set_ui_2exp(err.get(), 1, mpfr_get_exp(mid_.get()) - mid_.prec(), MPFR_RNDU);
    }
    mpfr_add(rad_.get(), rad_.get(), err.get(), MPFR_RNDU);
}

bool Ball::contains_zero() const { return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0; }

bool Ball::contains(const Rational& q) const {
    mpq_class d = q.get() - to_mpq(mid_.get());
    return abs(d) <= to_mpq(rad_.get());
}

bool Ball::contains(const Ball& b) const {
    mpq_class d = to_mpq(b.mid_.get()) - to_mpq(mid_.get());
    return abs(d) + to_mpq(b.rad_.get()) <= to_mpq(rad_.get());
}

bool Ball::overlaps(const Ball& b) const {
    mpq_class d = to_mpq(b.mid_.get()) - to_mpq(mid_.get());
    return abs(d) <= to_mpq(b.rad_.get()) + to_mpq(rad_.get());
}

bool Ball::rad_below_pow2(long e) const { return mpfr_cmp_si_2exp(rad_.get(), 1, e) < 0; }

Mpfr Ball::mag_upper() const {
    Mpfr r = abs_up(mid_);
    mpfr_add(r.get(), r.get(), rad_.get(), MPFR_RNDU);
    return r;
}

Mpfr Ball::mag_lower() const {
    Mpfr r = abs_down(mid_);
    mpfr_sub(r.get(), r.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
    return r;
}

Ball& Ball::add_error(const Mpfr& e) {
    mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
    return *this;
}

Ball& Ball::add_error_pow2(long e) {
    Mpfr t(kRadPrec);
    mpfr_set_ui_2exp(t.get(), 1, e, MPFR_RNDU);
    return add_error(t);
}

Ball Ball::with_prec(mpfr_prec_t prec) const {
    Ball b(prec);
    b.rad_ = rad_;
    b.add_rounding(mpfr_set(b.mid_.get(), mid_.get(), MPFR_RNDN));
    return b;
}

Ball& Ball::operator+=(const Ball& o) {
    Mpfr m(std::max(prec(), o.prec()));
    const int t = mpfr_add(m.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
    mid_ = std::move(m);
    mpfr_add(rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    add_rounding(t);
    return *this;
}

Ball& Ball::operator-=(const Ball& o) {
    Mpfr m(std::max(prec(), o.prec()));
    const int t = mpfr_sub(m.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
    mid_ = std::move(m);
    mpfr_add(rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    add_rounding(t);
    return *this;
}

Ball& Ball::operator*=(const Ball& o) {
    // |ab - m_a m_b| <= |m_a| r_b + |m_b| r_a + r_a r_b
    Mpfr r(kRadPrec), t(kRadPrec);
    const Mpfr ma = abs_up(mid_);
    const Mpfr mb = abs_up(o.mid_);
    mpfr_mul(r.get(), ma.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_mul(t.get(), mb.get(), rad_.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), t.get(), MPFR_RNDU);
    Mpfr m(std::max(prec(), o.prec()));
    const int tern = mpfr_mul(m.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
    mid_ = std::move(m);
    rad_ = std::move(r);
    add_rounding(tern);
    return *this;
}

Ball& Ball::operator/=(const Ball& o) {
    const Mpfr den = o.mag_lower();
    if (mpfr_zero_p(den.get())) throw NumericError("Ball division by an enclosure of zero");
    Mpfr m(std::max(prec(), o.prec()));
    const int tern = mpfr_div(m.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
    // |x/y - m_a/m_b| <= (r_a + |m_a/m_b| r_b) / (|m_b| - r_b)
    Mpfr q = abs_up(m);
    if (tern != 0) {
        Mpfr ulp(kRadPrec);
        mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(m.get()) - m.prec(), MPFR_RNDU);
        mpfr_add(q.get(), q.get(), ulp.get(), MPFR_RNDU);
    }
    Mpfr r(kRadPrec);
    mpfr_mul(r.get(), q.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), rad_.get(), MPFR_RNDU);
    mpfr_div(r.get(), r.get(), den.get(), MPFR_RNDU);
    mid_ = std::move(m);
    rad_ = std::move(r);
    add_rounding(tern);
    return *this;
}

Ball operator-(const Ball& a) {
    Ball b = a;
    mpfr_neg(b.mid_.get(), b.mid_.get(), MPFR_RNDN);
    return b;
}

std::string Ball::str() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "[%.20Rg +/- %.3RUe]", mid_.get(), rad_.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Ball pow(const Ball& b, const BigInt& e) {
    if (e < 0) throw std::invalid_argument("pow: negative exponent");
    Ball result(1L, b.prec());
    Ball base = b;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) result *= base;
        if (i + 1 < bits) base *= base;
    }
    return result;
}

Ball pow(const Ball& b, unsigned long e) { return pow(b, BigInt(e)); }

Ball log_abs(const Rational& q, mpfr_prec_t prec) {
    if (q.is_zero()) throw std::domain_error("log_abs: zero argument");
    const mpq_class aq = abs(q.get());
    Mpfr lo(prec + 16), hi(prec + 16);
    mpfr_set_q(lo.get(), aq.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), aq.get_mpq_t(), MPFR_RNDU);
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
    return Ball::from_interval(lo, hi, prec);
}

Ball sqrt(const Ball& b) {
    Mpfr lo(b.prec() + 16), hi(b.prec() + 16);
    mpfr_sub(lo.get(), b.mid().get(), b.rad().get(), MPFR_RNDD);
    mpfr_add(hi.get(), b.mid().get(), b.rad().get(), MPFR_RNDU);
    if (mpfr_sgn(lo.get()) < 0) {
        if (mpfr_sgn(hi.get()) < 0) throw std::domain_error("sqrt: negative argument");
        mpfr_set_zero(lo.get(), 1);
    }
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    return Ball::from_interval(lo, hi, b.prec());
}

Mpfr upper(const Rational& q) {
    Mpfr r(kRadPrec);
    mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Mpfr lower(const Rational& q) {
    Mpfr r(kRadPrec);
    mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDD);
    return r;
}

unsigned decimal_digits(mpfr_prec_t p) {
    // 0.30102999566 underestimates log10(2) by < 4e-12 per bit.
    return static_cast<unsigned>((static_cast<std::uint64_t>(p) * 30102999566ULL) / 100000000000ULL);
}

RenderedBall render(const Ball& b, unsigned digits) {
    RenderedBall out;
    out.mid_im = "0";
    out.exact_zero = b.is_exact_zero();
    const mpq_class mid = to_mpq(b.mid().get());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class scaled_num = mid.get_num() * scale;
    mpz_class t;
    mpz_tdiv_q(t.get_mpz_t(), scaled_num.get_mpz_t(), mid.get_den().get_mpz_t());

    std::string s = mpz_class(abs(t)).get_str();
    if (s.size() < digits + 1) s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - digits, ".");
    if (t < 0) s.insert(0, "-");
    out.mid_re = s;

    const mpq_class err = abs(mid - mpq_class(t, scale));
    Mpfr rad = b.rad();
    if (err != 0) {
        Mpfr e(kRadPrec);
        mpfr_set_q(e.get(), err.get_mpq_t(), MPFR_RNDU);
        mpfr_add(rad.get(), rad.get(), e.get(), MPFR_RNDU);
    }
    if (mpfr_zero_p(rad.get())) {
        out.rad = "0";
    } else {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.6RUe", rad.get());
        out.rad = buf;
        mpfr_free_str(buf);
    }
    return out;
}

Jet::Jet(std::size_t order, mpfr_prec_t prec) : c_(order + 1, Ball(prec)) {}

Jet Jet::constant(const Ball& c, std::size_t order) {
    Jet j(order, c.prec());
    j.c_[0] = c;
    return j;
}

Jet Jet::linear(const Ball& c0, const Ball& c1, std::size_t order) {
    Jet j(order, c0.prec());
    j.c_[0] = c0;
    if (order >= 1) j.c_[1] = c1;
    return j;
}

Jet& Jet::operator+=(const Jet& o) {
    const std::size_t n = std::min(c_.size(), o.c_.size());
    c_.resize(n);
    for (std::size_t i = 0; i < n; ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator*=(const Ball& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    Jet r(std::vector<Ball>(n, Ball(a.c_.empty() ? 128 : a.c_[0].prec())));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.c_[i].is_exact_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (b.c_[j].is_exact_zero()) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return r;
}

}  // namespace mahlerkit
