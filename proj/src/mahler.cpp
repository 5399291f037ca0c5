#include "mahlerkit/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mahlerkit/cyclotomic.hpp"
#include "mahlerkit/errors.hpp"

namespace mahlerkit {

namespace {

using IntMatrix = std::vector<std::vector<BigInt>>;

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size();
    IntMatrix r(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

IntMatrix identity(std::size_t n) {
    IntMatrix r(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

IntMatrix dense(const CompanionMatrix& t) {
    IntMatrix r(t.n(), std::vector<BigInt>(t.n()));
    for (std::size_t i = 0; i < t.n(); ++i)
        for (std::size_t j = 0; j < t.n(); ++j) r[i][j] = t.entry(i, j);
    return r;
}

std::uint64_t to_u64(const BigInt& v) {
    if (v < 0 || !v.fits_ulong_p()) throw std::overflow_error("exponent exceeds 64 bits");
    return v.get_ui();
}

template <class Scalar, class Pow>
std::vector<Scalar> act_block(const CompanionMatrix& t, const Scalar* z, Pow&& pw) {
    const std::size_t n = t.n();
    std::vector<Scalar> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar v = pw(z[0], t.coeffs()[i]);
        if (i + 1 < n) v = v * z[i + 1];
        out.push_back(std::move(v));
    }
    return out;
}

void check_dim(std::size_t got, std::size_t want) {
    if (got != want) throw PreconditionError("transform: dimension mismatch");
}

// Exact sign of Phi at a rational point.
int phi_sign(const UniPoly& phi, const mpq_class& x) { return phi(Rational(x)).sign(); }

}  // namespace

CompanionMatrix::CompanionMatrix(std::vector<BigInt> c) : c_(std::move(c)) {
    if (c_.empty()) throw PreconditionError("companion matrix: empty coefficient list");
    if (c_.back() == 0) throw PreconditionError("companion matrix: c_n must be nonzero");
}

BigInt CompanionMatrix::entry(std::size_t i, std::size_t j) const {
    if (j == 0) return c_.at(i);
    return j == i + 1 ? BigInt(1) : BigInt(0);
}

BigInt CompanionMatrix::determinant() const {
    // Expansion along the first column: only c_n has a nonzero minor.
    return (n() % 2 == 1) ? c_.back() : BigInt(-c_.back());
}

std::vector<std::vector<BigInt>> CompanionMatrix::power(std::size_t k) const {
    IntMatrix result = identity(n());
    IntMatrix base = dense(*this);
    while (k) {
        if (k & 1U) result = multiply(result, base);
        k >>= 1U;
        if (k) base = multiply(base, base);
    }
    return result;
}

BlockTransform::BlockTransform(CompanionMatrix block, std::size_t s) : block_(std::move(block)), s_(s) {
    if (s == 0) throw PreconditionError("block transform: s must be positive");
}

MonomialMap::MonomialMap(const Recurrence& rec) : e_(rec.initial().rbegin(), rec.initial().rend()) {}

MultiPoly MonomialMap::as_poly(std::size_t block, std::size_t arity) const {
    Exponent e(arity, 0);
    for (std::size_t j = 0; j < n(); ++j) e.at(block * n() + j) = to_u64(e_[j]);
    return MultiPoly::monomial(e);
}

Rational MonomialMap::operator()(const std::vector<Rational>& block) const {
    check_dim(block.size(), n());
    Rational v = 1;
    for (std::size_t j = 0; j < n(); ++j) v *= pow(block[j], e_[j]);
    return v;
}

Ball MonomialMap::operator()(const std::vector<Ball>& block) const {
    check_dim(block.size(), n());
    Ball v(1L, block.empty() ? 128 : block[0].prec());
    for (std::size_t j = 0; j < n(); ++j) v *= pow(block[j], e_[j]);
    return v;
}

std::vector<Rational> act_on_point(const CompanionMatrix& t, const std::vector<Rational>& z) {
    check_dim(z.size(), t.n());
    return act_block<Rational>(t, z.data(), [](const Rational& x, const BigInt& e) { return pow(x, e); });
}

std::vector<Ball> act_on_point(const CompanionMatrix& t, const std::vector<Ball>& z) {
    check_dim(z.size(), t.n());
    return act_block<Ball>(t, z.data(), [](const Ball& x, const BigInt& e) { return pow(x, e); });
}

std::vector<Rational> act_on_point(const BlockTransform& t, const std::vector<Rational>& z) {
    check_dim(z.size(), t.dim());
    std::vector<Rational> out;
    const std::size_t n = t.block().n();
    for (std::size_t b = 0; b < t.s(); ++b) {
        auto part = act_block<Rational>(t.block(), z.data() + b * n,
                                        [](const Rational& x, const BigInt& e) { return pow(x, e); });
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<Ball> act_on_point(const BlockTransform& t, const std::vector<Ball>& z) {
    check_dim(z.size(), t.dim());
    std::vector<Ball> out;
    const std::size_t n = t.block().n();
    for (std::size_t b = 0; b < t.s(); ++b) {
        auto part = act_block<Ball>(t.block(), z.data() + b * n,
                                    [](const Ball& x, const BigInt& e) { return pow(x, e); });
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<BigInt> act_on_exponents(const CompanionMatrix& t, const std::vector<BigInt>& e) {
    check_dim(e.size(), t.n());
    std::vector<BigInt> out(e.size());
    BigInt first = 0;
    for (std::size_t j = 0; j < e.size(); ++j) first += t.coeffs()[j] * e[j];
    out[0] = first;
    for (std::size_t l = 1; l < e.size(); ++l) out[l] = e[l - 1];
    return out;
}

Exponent act_on_exponents(const CompanionMatrix& t, const Exponent& e) {
    std::vector<BigInt> big(e.begin(), e.end());
    std::vector<BigInt> r = act_on_exponents(t, big);
    Exponent out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = to_u64(r[i]);
    return out;
}

Exponent act_on_exponents(const BlockTransform& t, const Exponent& e) {
    check_dim(e.size(), t.dim());
    const std::size_t n = t.block().n();
    Exponent out;
    out.reserve(e.size());
    for (std::size_t b = 0; b < t.s(); ++b) {
        Exponent part(e.begin() + static_cast<long>(b * n), e.begin() + static_cast<long>((b + 1) * n));
        part = act_on_exponents(t.block(), part);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

MultiPoly pullback(const BlockTransform& t, const MultiPoly& p) {
    check_dim(p.arity(), t.dim());
    MultiPoly::Terms terms;
    for (const auto& [e, c] : p.terms()) {
        auto [it, inserted] = terms.try_emplace(act_on_exponents(t, e), c);
        if (!inserted) it->second += c;
    }
    return MultiPoly(p.arity(), std::move(terms));
}

std::vector<std::vector<Ball>> orbit(const BlockTransform& t, const std::vector<Rational>& alpha, std::size_t K,
                                     mpfr_prec_t prec) {
    check_dim(alpha.size(), t.dim());
    for (const auto& x : alpha)
        if (x.is_zero()) throw PreconditionError("orbit: zero component");
    const std::size_t n = t.block().n();
    std::vector<Ball> base;
    for (const auto& x : alpha) base.emplace_back(x, prec);
    const IntMatrix step = dense(t.block());
    IntMatrix E = identity(n);
    std::vector<std::vector<Ball>> out;
    for (std::size_t k = 0; k <= K; ++k) {
        std::vector<Ball> point;
        for (std::size_t b = 0; b < t.s(); ++b)
            for (std::size_t j = 0; j < n; ++j) {
                Ball v(1L, prec);
                for (std::size_t l = 0; l < n; ++l) {
                    const Rational& x = alpha[b * n + l];
                    if (x == Rational(1) || E[j][l] == 0) continue;
                    v *= pow(base[b * n + l], E[j][l]);
                }
                point.push_back(std::move(v));
            }
        out.push_back(std::move(point));
        E = multiply(step, E);
    }
    return out;
}

Ball dominant_root(const Recurrence& rec, mpfr_prec_t prec) {
    const UniPoly phi = char_poly(rec);
    const UniPoly dphi = phi.derivative();
    // Newton from the Cauchy bound, where phi and all its derivatives are positive.
    BigInt cmax = 0;
    for (const auto& c : rec.coeffs()) cmax = std::max(cmax, c);
    const mpfr_prec_t wp = prec + 32;
    Mpfr x(wp), fx(wp), dfx(wp), t(wp);
    mpfr_set_z(x.get(), BigInt(cmax + 1).get_mpz_t(), MPFR_RNDN);
    auto horner = [&](const UniPoly& p, Mpfr& out) {
        mpfr_set_ui(out.get(), 0, MPFR_RNDN);
        for (std::size_t i = p.coeffs().size(); i-- > 0;) {
            mpfr_mul(out.get(), out.get(), x.get(), MPFR_RNDN);
            mpfr_add_q(out.get(), out.get(), p.coeffs()[i].get_mpq_t(), MPFR_RNDN);
        }
    };
    for (int it = 0; it < 4 * static_cast<int>(wp) + 200; ++it) {
        horner(phi, fx);
        horner(dphi, dfx);
        if (mpfr_zero_p(dfx.get())) break;
        mpfr_div(t.get(), fx.get(), dfx.get(), MPFR_RNDN);
        mpfr_sub(x.get(), x.get(), t.get(), MPFR_RNDN);
        if (mpfr_zero_p(t.get()) || mpfr_get_exp(t.get()) < mpfr_get_exp(x.get()) - wp + 4) break;
    }
    // Certify with an exact sign change around the Newton iterate.
    mpq_class mid, eps;
    mpfr_get_q(mid.get_mpq_t(), x.get());
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(prec + 8));
    eps = mpq_class(abs(mid) + 1) / two_pow;
    eps.canonicalize();
    mpq_class lo = mid - eps, hi = mid + eps;
    if (!(lo > 0 && phi_sign(phi, lo) < 0 && phi_sign(phi, hi) > 0)) {
        lo = 0;
        hi = mpq_class(cmax + 1);
        const mpq_class width = mpq_class(1) / two_pow;
        while (hi - lo > width) {
            mpq_class m = (lo + hi) / 2;
            (phi_sign(phi, m) < 0 ? lo : hi) = m;
        }
    }
    Mpfr flo(prec + 16), fhi(prec + 16);
    mpfr_set_q(flo.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(fhi.get(), hi.get_mpq_t(), MPFR_RNDU);
    return Ball::from_interval(flo, fhi, prec);
}

std::vector<Rational> admissible_point(const std::vector<Rational>& a, std::size_t n) {
    std::vector<Rational> alpha;
    for (const auto& ai : a) {
        for (std::size_t j = 0; j + 1 < n; ++j) alpha.emplace_back(1);
        alpha.push_back(ai);
    }
    return alpha;
}

OrbitReport check_conditions(const Recurrence& rec, const BlockTransform& t, const std::vector<Rational>& alpha,
                             std::size_t K, mpfr_prec_t prec) {
    if (minimal_order(rec) == 1) throw PreconditionError("check_conditions: geometric recurrence violates (ND)");
    if (t.block().coeffs() != rec.coeffs()) throw PreconditionError("check_conditions: transform does not match recurrence");
    check_dim(alpha.size(), t.dim());
    for (const auto& x : alpha)
        if (x.is_zero()) throw PreconditionError("check_conditions: zero component");

    OrbitReport rep;
    rep.rho = dominant_root(rec, prec);
    rep.eigen_unity_witness = has_root_of_unity_root(char_poly(rec), false);
    rep.determinant_nonzero = t.block().determinant() != 0;
    rep.condition_I = rep.determinant_nonzero && !rep.eigen_unity_witness;

    const std::size_t n = t.block().n();
    std::vector<Ball> logs;
    for (const auto& x : alpha) logs.push_back(x == Rational(1) ? Ball(prec) : log_abs(x, prec));

    const IntMatrix step = dense(t.block());
    IntMatrix E = identity(n);
    Ball rho_k(1L, prec);
    double max_ratio = 0;
    rep.tail_window_start = K / 2;
    bool have_c = false;
    for (std::size_t k = 0; k <= K; ++k) {
        BigInt emax = 0;
        for (const auto& row : E)
            for (const auto& v : row) emax = std::max(emax, v);
        Ball ratio = Ball(Rational(emax), prec) / rho_k;
        max_ratio = std::max(max_ratio, ratio.mid_double());
        rep.entry_growth_ratios.push_back(ratio);

        std::vector<Ball> row_logs;
        for (std::size_t b = 0; b < t.s(); ++b)
            for (std::size_t j = 0; j < n; ++j) {
                Ball v(prec);
                for (std::size_t l = 0; l < n; ++l) {
                    if (E[j][l] == 0 || logs[b * n + l].is_exact_zero()) continue;
                    v += Ball(Rational(E[j][l]), prec) * logs[b * n + l];
                }
                if (k >= rep.tail_window_start && !v.is_exact_zero()) {
                    Ball c = -v / rho_k;
                    if (!have_c || c.mid_double() < rep.fitted_c.mid_double()) rep.fitted_c = c;
                    have_c = true;
                }
                row_logs.push_back(std::move(v));
            }
        rep.log_moduli.push_back(std::move(row_logs));
        E = multiply(step, E);
        rho_k *= rep.rho;
    }
    if (!have_c) rep.fitted_c = Ball(prec);

    char buf[160];
    std::snprintf(buf, sizeof buf, "empirical: max entry ratio %.6g for k <= %zu", max_ratio, K);
    rep.condition_II_verdict = buf;
    const double c = rep.fitted_c.mid_double();
    if (have_c && c > 0) {
        std::snprintf(buf, sizeof buf, "empirical: c = %.6g > 0 on window %zu..%zu", c, rep.tail_window_start, K);
    } else {
        std::snprintf(buf, sizeof buf, "empirical: no positive c on window %zu..%zu", rep.tail_window_start, K);
    }
    rep.condition_III_verdict = buf;
    rep.condition_IV_verdict = "not checked";
    return rep;
}

}  // namespace mahlerkit
