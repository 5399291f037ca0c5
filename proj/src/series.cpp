#include "mahlerkit/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mahlerkit/errors.hpp"
#include "mahlerkit/linalg.hpp"

namespace mahlerkit {

namespace {

// Upward-rounded scalar helpers for tail bounds. All inputs are >= 0.
Mpfr mp_si(long v) {
    Mpfr r(kRadPrec);
    mpfr_set_si(r.get(), v, MPFR_RNDU);
    return r;
}

Mpfr mul_up(const Mpfr& a, const Mpfr& b) {
    Mpfr r(kRadPrec);
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

Mpfr add_up(const Mpfr& a, const Mpfr& b) {
    Mpfr r(kRadPrec);
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

Mpfr div_up(const Mpfr& a, const Mpfr& b) {
    Mpfr r(kRadPrec);
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

Mpfr one_minus_down(const Mpfr& x) {
    Mpfr r(kRadPrec);
    mpfr_ui_sub(r.get(), 1, x.get(), MPFR_RNDD);
    return r;
}

Mpfr exp_up(const Mpfr& x) {
    Mpfr r(kRadPrec);
    mpfr_exp(r.get(), x.get(), MPFR_RNDU);
    return r;
}

Mpfr expm1_up(const Mpfr& x) {
    Mpfr r(kRadPrec);
    mpfr_expm1(r.get(), x.get(), MPFR_RNDU);
    return r;
}

Mpfr pow_up(const Mpfr& x, unsigned long k) {
    Mpfr r(kRadPrec);
    mpfr_pow_ui(r.get(), x.get(), k, MPFR_RNDU);
    return r;
}

Mpfr pow_up(const Mpfr& x, const BigInt& k) {
    Mpfr r(kRadPrec);
    mpfr_pow_z(r.get(), x.get(), k.get_mpz_t(), MPFR_RNDU);
    return r;
}

Mpfr pow2_up(long e) {
    Mpfr r(kRadPrec);
    mpfr_set_si_2exp(r.get(), 1, e, MPFR_RNDU);
    return r;
}

Mpfr factorial_down(unsigned long j) {
    Mpfr r(kRadPrec);
    mpfr_fac_ui(r.get(), j, MPFR_RNDD);
    return r;
}

Mpfr max_mp(const Mpfr& a, const Mpfr& b) { return mpfr_cmp(a.get(), b.get()) >= 0 ? a : b; }

bool below_pow2(const Mpfr& x, long e) { return mpfr_cmp_si_2exp(x.get(), 1, e) < 0; }

double log2_abs(const Rational& q) {
    Mpfr t(64);
    mpfr_set_q(t.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_abs(t.get(), t.get(), MPFR_RNDN);
    mpfr_log2(t.get(), t.get(), MPFR_RNDN);
    return mpfr_get_d(t.get(), MPFR_RNDN);
}

Ball exact_zero(mpfr_prec_t prec) { return Ball(prec); }

long tail_exponent(const EvalContext& ctx) { return -static_cast<long>(ctx.working_prec() + 16); }

[[noreturn]] void tail_unattainable(const std::string& what) {
    throw NumericError(what + ": tail bound unattainable with the available terms (increase K or p)");
}

// Coprime base of a list of positive integers: pairwise coprime elements
// such that every input is a product of their powers.
std::vector<BigInt> coprime_base(std::vector<BigInt> xs) {
    std::vector<BigInt> base;
    for (auto& x : xs)
        if (x > 1) base.push_back(x);
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
        for (std::size_t i = 0; i < base.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
                BigInt g;
                mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
                if (g == 1) continue;
                const BigInt x = base[i] / g, y = base[j] / g;
                base.erase(base.begin() + static_cast<std::ptrdiff_t>(j));
                base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
                for (const BigInt& v : {x, y, g})
                    if (v > 1) base.push_back(v);
                changed = true;
            }
        }
    }
    return base;
}

long valuation(BigInt x, const BigInt& b) {
    long v = 0;
    while (mpz_divisible_p(x.get_mpz_t(), b.get_mpz_t())) {
        x /= b;
        ++v;
    }
    return v;
}

// First index K >= K0 past every hit where log2|a^{R_K} beta| <= -1
// (a floating estimate; callers certify rigorously).
std::size_t initial_cut(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t after) {
    const double la = log2_abs(ctx.a()[i]);
    const double lb = beta.is_zero() ? -1e300 : log2_abs(beta);
    std::size_t K = std::max(ctx.growth_index(), after);
    while (K < ctx.term_count()) {
        const double L = mpz_get_d(ctx.R(K).get_mpz_t()) * la + lb;
        if (L <= -1.0) break;
        ++K;
    }
    return K;
}

// new[j] = c0 * jet[j] + c1 * jet[j - 1]
void mul_linear(Jet& jet, const Ball& c0, const Ball& c1) {
    for (std::size_t j = jet.order() + 1; j-- > 0;) {
        Ball v = jet[j] * c0;
        if (j > 0 && !jet[j - 1].is_exact_zero()) v += jet[j - 1] * c1;
        jet[j] = std::move(v);
    }
}

Ball linear_c0(const EvalContext& ctx, std::size_t i, std::size_t k, const Ball& beta_ball, bool hit) {
    if (hit) return exact_zero(ctx.working_prec());
    return Ball(1L, ctx.working_prec()) - ctx.power(i, k) * beta_ball;
}

// Jet of prod_{k >= K} (1 - x_k (beta + t)) as 1 +- expm1(S0), 0 +- e^{S0} S1^j / j!.
Jet g_tail_jet(const Mpfr& S0, const Mpfr& S1, std::size_t M, mpfr_prec_t prec) {
    Jet t(M, prec);
    t[0] = Ball(1L, prec);
    t[0].add_error(expm1_up(S0));
    const Mpfr e = exp_up(S0);
    for (std::size_t j = 1; j <= M; ++j) t[j].add_error(div_up(mul_up(e, pow_up(S1, j)), factorial_down(j)));
    return t;
}

Mpfr g_tail_max(const Mpfr& S0, const Mpfr& S1, std::size_t M) {
    Mpfr worst = expm1_up(S0);
    const Mpfr e = exp_up(S0);
    for (std::size_t j = 1; j <= M; ++j)
        worst = max_mp(worst, div_up(mul_up(e, pow_up(S1, j)), factorial_down(j)));
    return worst;
}

Mpfr geometric_factor(const Rational& a) { return div_up(mp_si(1), one_minus_down(upper(abs(a)))); }

// S1 = |a|^{R_K} / (1 - |a|) bounds sum_{k >= K} |a|^{R_k} once R increases strictly.
Mpfr tail_mass(const EvalContext& ctx, std::size_t i, std::size_t K) {
    return mul_up(ctx.power(i, K).mag_upper(), geometric_factor(ctx.a()[i]));
}

bool radius_ok(const Ball& b, mpfr_prec_t p) { return b.rad_below_pow2(-static_cast<long>(p / 2)); }
bool radius_ok(const Jet& j, mpfr_prec_t p) {
    return std::all_of(j.coeffs().begin(), j.coeffs().end(), [&](const Ball& b) { return radius_ok(b, p); });
}
bool radius_ok(const std::vector<Ball>& v, mpfr_prec_t p) {
    return std::all_of(v.begin(), v.end(), [&](const Ball& b) { return radius_ok(b, p); });
}

template <class F>
auto escalate(const EvalContext& ctx, F&& f) {
    EvalContext c = ctx;
    for (int attempt = 0;; ++attempt) {
        auto r = f(c);
        if (radius_ok(r, ctx.prec())) return r;
        if (attempt == 4)
            throw NumericError("radius above 2^-" + std::to_string(ctx.prec() / 2) + " after precision " +
                               std::to_string(c.prec()));
        c = c.with_prec(c.prec() * 2);
    }
}

void check_beta_arity(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex* m) {
    if (beta.size() != ctx.s()) throw PreconditionError("beta has the wrong arity");
    if (m != nullptr && m->size() != ctx.s()) throw PreconditionError("multi-index has the wrong arity");
}

void check_coordinate(const EvalContext& ctx, std::size_t i) {
    if (i >= ctx.s()) throw PreconditionError("coordinate index out of range");
}

void require_no_pole(const EvalContext& ctx, std::size_t i, const Rational& beta) {
    const auto h = hits(ctx, i, beta);
    if (!h.empty())
        throw PreconditionError("pole: beta_" + std::to_string(i + 1) + " = a_" + std::to_string(i + 1) +
                                "^-R_k at k = " + std::to_string(h.front() + ctx.shift()));
}

Jet g_jet_raw(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M) {
    const mpfr_prec_t wp = ctx.working_prec();
    const auto h = hits(ctx, i, beta);
    std::size_t K = initial_cut(ctx, i, beta, h.empty() ? 0 : h.back() + 1);
    const Mpfr bup = upper(abs(beta));
    Mpfr S0, S1;
    for (;; ++K) {
        if (K >= ctx.term_count()) tail_unattainable("G jet");
        S1 = tail_mass(ctx, i, K);
        S0 = mul_up(bup, S1);
        if (below_pow2(g_tail_max(S0, S1, M), tail_exponent(ctx))) break;
    }
    const Ball bb(beta, wp);
    Jet jet = Jet::constant(Ball(1L, wp), M);
    for (std::size_t k = 0; k < K; ++k) {
        const bool hit = std::binary_search(h.begin(), h.end(), k);
        mul_linear(jet, linear_c0(ctx, i, k, bb, hit), -ctx.power(i, k));
    }
    return jet * g_tail_jet(S0, S1, M, wp);
}

Jet h_jet_raw(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M) {
    const mpfr_prec_t wp = ctx.working_prec();
    require_no_pole(ctx, i, beta);
    std::size_t K = initial_cut(ctx, i, beta, 0);
    const Mpfr bup = upper(abs(beta));
    const Mpfr half = pow2_up(-1);
    std::vector<Mpfr> bounds(M + 1);
    for (;; ++K) {
        if (K >= ctx.term_count()) tail_unattainable("H jet");
        const Mpfr xK = ctx.power(i, K).mag_upper();
        if (mpfr_cmp(mul_up(xK, bup).get(), half.get()) > 0) continue;
        bool ok = true;
        for (std::size_t m = 0; m <= M; ++m) {
            // sum_{k >= K} |w_k|^{m+1} <= 2^{m+1} |x_K|^{m+1} / (1 - |a|)
            bounds[m] = mul_up(mul_up(pow2_up(static_cast<long>(m + 1)), pow_up(xK, m + 1)),
                               geometric_factor(ctx.a()[i]));
            ok = ok && below_pow2(bounds[m], tail_exponent(ctx));
        }
        if (ok) break;
    }
    const Ball bb(beta, wp);
    Jet jet(M, wp);
    for (std::size_t k = 0; k < K; ++k) {
        const Ball& x = ctx.power(i, k);
        const Ball w = x / (Ball(1L, wp) - x * bb);
        Ball wp_pow = w;
        for (std::size_t m = 0; m <= M; ++m) {
            jet[m] += wp_pow;
            if (m < M) wp_pow *= w;
        }
    }
    for (std::size_t m = 0; m <= M; ++m) jet[m].add_error(bounds[m]);
    return jet;
}

Ball h_multi_raw(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex& m) {
    const mpfr_prec_t wp = ctx.working_prec();
    const std::size_t s = ctx.s();
    for (std::size_t i = 0; i < s; ++i) require_no_pole(ctx, i, beta[i]);
    std::size_t K = 0;
    for (std::size_t i = 0; i < s; ++i) K = std::max(K, initial_cut(ctx, i, beta[i], 0));
    const Mpfr half = pow2_up(-1);
    Mpfr bound;
    for (;; ++K) {
        if (K >= ctx.term_count()) tail_unattainable("H");
        bool ok = true;
        Mpfr prefactor = mp_si(1), AK = mp_si(1), A = mp_si(1);
        for (std::size_t i = 0; i < s && ok; ++i) {
            const Mpfr xK = ctx.power(i, K).mag_upper();
            if (mpfr_cmp(mul_up(xK, upper(abs(beta[i]))).get(), half.get()) > 0) ok = false;
            Mpfr f(kRadPrec);
            mpfr_fac_ui(f.get(), m[i], MPFR_RNDU);
            prefactor = mul_up(prefactor, mul_up(f, pow2_up(static_cast<long>(m[i] + 1))));
            AK = mul_up(AK, pow_up(xK, m[i] + 1));
            A = mul_up(A, pow_up(upper(abs(ctx.a()[i])), m[i] + 1));
        }
        if (!ok) continue;
        bound = mul_up(prefactor, div_up(AK, one_minus_down(A)));
        if (below_pow2(bound, tail_exponent(ctx))) break;
    }
    std::vector<Ball> bb;
    for (const auto& b : beta) bb.emplace_back(b, wp);
    Ball sum(wp);
    for (std::size_t k = 0; k < K; ++k) {
        Ball term(1L, wp);
        for (std::size_t i = 0; i < s; ++i) {
            const Ball& x = ctx.power(i, k);
            term *= pow(x / (Ball(1L, wp) - x * bb[i]), static_cast<unsigned long>(m[i] + 1));
        }
        sum += term;
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < s; ++i) scale *= factorial(m[i]);
    sum *= Ball(Rational(scale), wp);
    sum.add_error(bound);
    return sum;
}

std::vector<Ball> theta_table_raw(const EvalContext& ctx, const std::vector<Rational>& beta,
                                  const MultiIndex& orders) {
    const mpfr_prec_t wp = ctx.working_prec();
    const std::size_t s = ctx.s();
    std::vector<std::vector<std::size_t>> h(s);
    std::size_t K = 0;
    for (std::size_t i = 0; i < s; ++i) {
        h[i] = hits(ctx, i, beta[i]);
        K = std::max(K, initial_cut(ctx, i, beta[i], h[i].empty() ? 0 : h[i].back() + 1));
    }
    std::vector<Mpfr> head_mass(s, mp_si(0));  // sum_{k < K} |x_ik|, upper
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < K && k < ctx.term_count(); ++k)
            head_mass[i] = add_up(head_mass[i], ctx.power(i, k).mag_upper());

    std::vector<Mpfr> S0(s), S1(s), S0all(s), S1all(s);
    Mpfr sum_tail_factor;
    for (;; ++K) {
        if (K >= ctx.term_count()) tail_unattainable("Theta");
        bool ok = true;
        Mpfr PK = mp_si(1), P = mp_si(1), worst = mp_si(1);
        for (std::size_t i = 0; i < s; ++i) {
            S1[i] = tail_mass(ctx, i, K);
            S0[i] = mul_up(upper(abs(beta[i])), S1[i]);
            ok = ok && below_pow2(g_tail_max(S0[i], S1[i], orders[i]), tail_exponent(ctx));
            S1all[i] = add_up(head_mass[i], S1[i]);
            S0all[i] = mul_up(upper(abs(beta[i])), S1all[i]);
            Mpfr best = mp_si(1);
            for (std::size_t j = 1; j <= orders[i]; ++j)
                best = max_mp(best, div_up(pow_up(S1all[i], j), factorial_down(j)));
            worst = mul_up(worst, mul_up(exp_up(S0all[i]), best));
            PK = mul_up(PK, ctx.power(i, K).mag_upper());
            P = mul_up(P, upper(abs(ctx.a()[i])));
        }
        sum_tail_factor = div_up(PK, one_minus_down(P));
        if (ok && below_pow2(mul_up(worst, sum_tail_factor), tail_exponent(ctx))) break;
        for (std::size_t i = 0; i < s; ++i) head_mass[i] = add_up(head_mass[i], ctx.power(i, K).mag_upper());
    }

    // E[i][k]: jet of x_ik prod_{k' != k} (1 - x_ik' (beta_i + t)).
    std::vector<std::vector<Jet>> E(s);
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t M = orders[i];
        const Ball bb(beta[i], wp);
        std::vector<Ball> c0, c1;
        for (std::size_t k = 0; k < K; ++k) {
            c0.push_back(linear_c0(ctx, i, k, bb, std::binary_search(h[i].begin(), h[i].end(), k)));
            c1.push_back(-ctx.power(i, k));
        }
        std::vector<Jet> prefix(K + 1), suffix(K + 1);
        prefix[0] = Jet::constant(Ball(1L, wp), M);
        for (std::size_t k = 0; k < K; ++k) {
            prefix[k + 1] = prefix[k];
            mul_linear(prefix[k + 1], c0[k], c1[k]);
        }
        suffix[K] = g_tail_jet(S0[i], S1[i], M, wp);
        for (std::size_t k = K; k-- > 0;) {
            suffix[k] = suffix[k + 1];
            mul_linear(suffix[k], c0[k], c1[k]);
        }
        for (std::size_t k = 0; k < K; ++k) {
            Jet e = prefix[k] * suffix[k + 1];
            e *= ctx.power(i, k);
            E[i].push_back(std::move(e));
        }
    }

    const std::size_t count = multi_index_count(orders);
    std::vector<Ball> out;
    out.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const MultiIndex m = multi_index_unrank(idx, orders);
        Ball sum(wp);
        for (std::size_t k = 0; k < K; ++k) {
            Ball term(1L, wp);
            for (std::size_t i = 0; i < s && !term.is_exact_zero(); ++i) term *= E[i][k][m[i]];
            if (!term.is_exact_zero()) sum += term;
        }
        Mpfr tail = sum_tail_factor;
        for (std::size_t i = 0; i < s; ++i)
            tail = mul_up(tail, div_up(mul_up(exp_up(S0all[i]), pow_up(S1all[i], m[i])), factorial_down(m[i])));
        sum.add_error(tail);
        BigInt scale = 1;
        for (std::size_t i = 0; i < s; ++i) scale *= factorial(m[i]);
        if (scale != 1) sum *= Ball(Rational(scale), wp);
        out.push_back(std::move(sum));
    }
    return out;
}

struct LambertBlock {
    std::vector<Ball> z;
    Mpfr q;
    std::size_t j = 0;
};

std::vector<LambertBlock> split_blocks(const EvalContext& ctx, const std::vector<Ball>& z, std::size_t blocks) {
    const std::size_t n = ctx.rec().order();
    if (z.size() != blocks * n) throw PreconditionError("point has the wrong dimension");
    const Mpfr one = mp_si(1);
    std::vector<LambertBlock> out(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        bool found = false;
        for (std::size_t j = 0; j < n; ++j) {
            const Ball& zj = z[b * n + j];
            out[b].z.push_back(zj);
            const Mpfr u = zj.mag_upper();
            if (mpfr_cmp(u.get(), one.get()) > 0)
                throw PreconditionError("divergence: |z_" + std::to_string(b * n + j + 1) + "| may exceed 1");
            if (mpfr_cmp(u.get(), one.get()) < 0 && (!found || mpfr_cmp(u.get(), out[b].q.get()) < 0)) {
                out[b].q = u;
                out[b].j = j;
                found = true;
            }
        }
        if (!found)
            throw PreconditionError("divergence: block " + std::to_string(b + 1) +
                                    " has no coordinate certified below 1 in modulus");
    }
    return out;
}

// M(Omega_1^k z) = prod_j z_j^{R_{k+n-1-j}} over unshifted terms.
Ball orbit_monomial(const EvalContext& ctx, const LambertBlock& blk, std::size_t k, mpfr_prec_t wp) {
    const std::size_t n = blk.z.size();
    Ball w(1L, wp);
    for (std::size_t j = 0; j < n; ++j) w *= pow(blk.z[j], ctx.base_R(k + n - 1 - j));
    return w;
}

std::size_t lambert_start(const EvalContext& ctx) { return *ctx.nd().strict_growth_from; }

void check_lambert_terms(const EvalContext& ctx, std::size_t K, const char* what) {
    if (K + ctx.rec().order() - 1 >= ctx.base_term_count()) tail_unattainable(what);
}

}  // namespace

MultIndepReport check_mult_indep(const std::vector<Rational>& a) {
    std::vector<BigInt> parts;
    for (const auto& x : a) {
        if (x.is_zero()) throw PreconditionError("multiplicative independence: zero input");
        parts.push_back(abs(x.num()));
        parts.push_back(x.den());
    }
    const auto base = coprime_base(parts);
    const std::size_t s = a.size();
    RationalMatrix m(static_cast<Eigen::Index>(base.size()), static_cast<Eigen::Index>(s));
    for (std::size_t r = 0; r < base.size(); ++r)
        for (std::size_t c = 0; c < s; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Rational(valuation(abs(a[c].num()), base[r]) - valuation(a[c].den(), base[r]));

    MultIndepReport rep;
    const auto kernel = nullspace(m);
    if (kernel.empty()) return rep;
    rep.independent = false;
    rep.witness = primitive_integer_vector(kernel.front());
    auto first = std::find_if(rep.witness.begin(), rep.witness.end(), [](const BigInt& v) { return v != 0; });
    if (first != rep.witness.end() && *first < 0)
        for (auto& v : rep.witness) v = -v;
    // Absolute values multiply to 1; the sign may still be -1.
    BigInt odd_negative = 0;
    for (std::size_t c = 0; c < s; ++c)
        if (a[c].sign() < 0 && mpz_odd_p(rep.witness[c].get_mpz_t())) ++odd_negative;
    if (mpz_odd_p(odd_negative.get_mpz_t()))
        for (auto& v : rep.witness) v *= 2;
    return rep;
}

EvalContext::EvalContext(Recurrence rec, std::vector<Rational> a, mpfr_prec_t prec, std::size_t shift)
    : prec_(prec), shift_(shift) {
    if (a.empty()) throw PreconditionError("at least one base a_i is required");
    if (prec < 16) throw PreconditionError("precision must be at least 16 bits");
    for (const auto& x : a)
        if (x.is_zero() || abs(x) >= Rational(1)) throw PreconditionError("bases must satisfy 0 < |a_i| < 1");
    const auto mi = check_mult_indep(a);
    if (!mi.independent) throw PreconditionError("bases are multiplicatively dependent");
    NdReport nd = check_nd(rec);
    if (!nd.nd_ok) throw PreconditionError("recurrence does not satisfy (ND)");
    if (!nd.strict_growth_from) throw PreconditionError("strict growth of R_k could not be certified");

    // Enough terms that |a_i|^{R_T} < 2^{-256 p}: room for four doublings of
    // the precision and large |beta|.
    double min_decay = 1e300;
    for (const auto& x : a) min_decay = std::min(min_decay, -log2_abs(x));
    const double target = 256.0 * static_cast<double>(prec) + 1024.0;
    const std::size_t floor_terms = *nd.strict_growth_from + shift + rec.order() + 16;
    std::vector<BigInt> terms = rec.extend(std::min<std::size_t>(floor_terms, kMaxTerms) - 1);
    while (terms.size() < kMaxTerms &&
           (terms.size() < floor_terms || mpz_get_d(terms.back().get_mpz_t()) * min_decay < target)) {
        const std::size_t n = rec.order();
        BigInt next = 0;
        for (std::size_t i = 0; i < n; ++i) next += rec.coeffs()[i] * terms[terms.size() - 1 - i];
        terms.push_back(next);
    }
    auto d = std::make_shared<Shared>(Shared{std::move(rec), std::move(a), std::move(nd), std::move(terms)});
    d_ = std::move(d);
    build_powers();
}

EvalContext::EvalContext(std::shared_ptr<const Shared> d, mpfr_prec_t prec, std::size_t shift)
    : d_(std::move(d)), prec_(prec), shift_(shift) {}

void EvalContext::build_powers() {
    auto p = std::make_shared<Powers>();
    const mpfr_prec_t wp = working_prec();
    for (std::size_t i = 0; i < s(); ++i) {
        p->a_balls.emplace_back(d_->a[i], wp);
        std::vector<Ball> row;
        row.reserve(d_->terms.size());
        for (const auto& r : d_->terms) row.push_back(pow(p->a_balls.back(), r));
        p->table.push_back(std::move(row));
    }
    powers_ = std::move(p);
}

std::size_t EvalContext::growth_index() const {
    const std::size_t k0 = *d_->nd.strict_growth_from;
    return k0 > shift_ ? k0 - shift_ : 0;
}

std::size_t EvalContext::term_count() const {
    return d_->terms.size() > shift_ ? d_->terms.size() - shift_ : 0;
}

const BigInt& EvalContext::R(std::size_t k) const {
    if (k >= term_count()) throw NumericError("term index beyond the precomputed range");
    return d_->terms[k + shift_];
}

const BigInt& EvalContext::base_R(std::size_t k) const {
    if (k >= d_->terms.size()) throw NumericError("term index beyond the precomputed range");
    return d_->terms[k];
}

const Ball& EvalContext::power(std::size_t i, std::size_t k) const {
    if (k >= term_count()) throw NumericError("term index beyond the precomputed range");
    return powers_->table.at(i)[k + shift_];
}

EvalContext EvalContext::with_shift(std::size_t k0) const {
    if (k0 + 16 > d_->terms.size()) throw PreconditionError("shift beyond the precomputed terms");
    EvalContext c(d_, prec_, k0);
    c.powers_ = powers_;
    return c;
}

EvalContext EvalContext::with_prec(mpfr_prec_t prec) const {
    if (prec <= prec_) {
        EvalContext c(d_, prec, shift_);
        c.build_powers();
        return c;
    }
    EvalContext c(d_->rec, d_->a, prec, 0);
    c.shift_ = shift_;
    return c;
}

std::vector<std::size_t> hits(const EvalContext& ctx, std::size_t i, const Rational& beta) {
    check_coordinate(ctx, i);
    std::vector<std::size_t> out;
    if (beta.is_zero()) return out;
    const Rational& a = ctx.a()[i];
    const double la = log2_abs(a);
    const double lb = log2_abs(beta);
    for (std::size_t k = 0;; ++k) {
        if (k >= ctx.term_count()) throw NumericError("zero profile: |beta| too large for the precomputed terms");
        const double L = mpz_get_d(ctx.R(k).get_mpz_t()) * la + lb;
        if (std::fabs(L) < 1.0 && pow(a, ctx.R(k)) * beta == Rational(1)) out.push_back(k);
        if (k >= ctx.growth_index() && L < -1.0) break;
    }
    return out;
}

ZeroProfile zero_profile(const EvalContext& ctx, const std::vector<Rational>& beta) {
    check_beta_arity(ctx, beta, nullptr);
    ZeroProfile zp;
    for (std::size_t i = 0; i < ctx.s(); ++i) {
        zp.hit_indices.push_back(hits(ctx, i, beta[i]));
        zp.counts.push_back(zp.hit_indices.back().size());
    }
    return zp;
}

Jet eval_G_jet(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M) {
    check_coordinate(ctx, i);
    return escalate(ctx, [&](const EvalContext& c) { return g_jet_raw(c, i, beta, M); });
}

Jet eval_H_jet(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M) {
    check_coordinate(ctx, i);
    return escalate(ctx, [&](const EvalContext& c) { return h_jet_raw(c, i, beta, M); });
}

Ball eval_H_multi(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex& m) {
    check_beta_arity(ctx, beta, &m);
    return escalate(ctx, [&](const EvalContext& c) { return h_multi_raw(c, beta, m); });
}

Ball eval_G_multi(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex& m) {
    check_beta_arity(ctx, beta, &m);
    return escalate(ctx, [&](const EvalContext& c) {
        Ball prod(1L, c.working_prec());
        for (std::size_t i = 0; i < c.s(); ++i) {
            const Jet j = g_jet_raw(c, i, beta[i], m[i]);
            prod *= j[m[i]] * Ball(Rational(factorial(m[i])), c.working_prec());
        }
        return prod;
    });
}

std::vector<Ball> eval_Theta_table(const EvalContext& ctx, const std::vector<Rational>& beta,
                                   const MultiIndex& orders) {
    check_beta_arity(ctx, beta, &orders);
    return escalate(ctx, [&](const EvalContext& c) { return theta_table_raw(c, beta, orders); });
}

Ball eval_Theta(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex& m) {
    return eval_Theta_table(ctx, beta, m).back();
}

Ball eval_Xi(const EvalContext& ctx, const std::vector<Rational>& beta, const MultiIndex& m) {
    MultiIndex up = m;
    for (auto& v : up) ++v;
    return eval_Theta(ctx, beta, up);
}

Ball eval_lambert_general(const EvalContext& ctx, const std::vector<Ball>& z, const std::vector<Rational>& beta,
                          const MultiIndex& m) {
    if (m.size() != beta.size() || beta.empty()) throw PreconditionError("beta and m must have equal positive length");
    const mpfr_prec_t wp = ctx.working_prec();
    const auto blocks = split_blocks(ctx, z, beta.size());
    const std::size_t n = ctx.rec().order();
    const Mpfr half = pow2_up(-1);
    long total = 0;
    for (auto mi : m) total += static_cast<long>(mi + 1);

    std::size_t K = lambert_start(ctx);
    Mpfr bound;
    for (;; ++K) {
        check_lambert_terms(ctx, K, "Lambert sum");
        bool ok = true;
        Mpfr best;
        bool have_best = false;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const Mpfr Q = pow_up(blocks[i].q, ctx.base_R(K + n - 1 - blocks[i].j));
            if (mpfr_cmp(mul_up(Q, upper(abs(beta[i]))).get(), half.get()) > 0) ok = false;
            const Mpfr b = div_up(Q, one_minus_down(blocks[i].q));
            if (!have_best || mpfr_cmp(b.get(), best.get()) < 0) best = b;
            have_best = true;
        }
        if (!ok) continue;
        bound = mul_up(pow2_up(total), best);
        if (below_pow2(bound, tail_exponent(ctx))) break;
    }

    std::vector<Ball> bb;
    for (const auto& b : beta) bb.emplace_back(b, wp);
    Ball sum(wp);
    for (std::size_t k = 0; k < K; ++k) {
        Ball term(1L, wp);
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const Ball w = orbit_monomial(ctx, blocks[i], k, wp);
            const Ball den = Ball(1L, wp) - bb[i] * w;
            if (den.contains_zero())
                throw PreconditionError("pole: 1 - beta M(Omega^k z) may vanish at k = " + std::to_string(k));
            term *= pow(w / den, static_cast<unsigned long>(m[i] + 1));
        }
        sum += term;
    }
    sum.add_error(bound);
    return sum;
}

Ball eval_lambert_product(const EvalContext& ctx, const std::vector<Ball>& z, const Rational& beta) {
    const mpfr_prec_t wp = ctx.working_prec();
    const auto blocks = split_blocks(ctx, z, 1);
    const auto& blk = blocks.front();
    const std::size_t n = ctx.rec().order();
    std::size_t K = lambert_start(ctx);
    Mpfr e;
    for (;; ++K) {
        check_lambert_terms(ctx, K, "Lambert product");
        const Mpfr Q = pow_up(blk.q, ctx.base_R(K + n - 1 - blk.j));
        e = expm1_up(mul_up(upper(abs(beta)), div_up(Q, one_minus_down(blk.q))));
        if (below_pow2(e, tail_exponent(ctx))) break;
    }
    const Ball bb(beta, wp);
    Ball prod(1L, wp);
    for (std::size_t k = 0; k < K; ++k) prod *= Ball(1L, wp) - bb * orbit_monomial(ctx, blk, k, wp);
    prod.add_error(mul_up(prod.mag_upper(), e));
    return prod;
}

std::size_t multi_index_count(const MultiIndex& orders) {
    std::size_t c = 1;
    for (auto o : orders) c *= o + 1;
    return c;
}

std::size_t multi_index_rank(const MultiIndex& m, const MultiIndex& orders) {
    if (m.size() != orders.size()) throw PreconditionError("multi-index arity mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] > orders[i]) throw PreconditionError("multi-index out of range");
        idx = idx * (orders[i] + 1) + m[i];
    }
    return idx;
}

MultiIndex multi_index_unrank(std::size_t idx, const MultiIndex& orders) {
    MultiIndex m(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
        m[i] = idx % (orders[i] + 1);
        idx /= orders[i] + 1;
    }
    return m;
}

}  // namespace mahlerkit
