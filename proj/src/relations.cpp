#include "mahlerkit/relations.hpp"

#include <algorithm>
#include <cmath>

#include "mahlerkit/unipoly.hpp"

namespace mahlerkit {

namespace {

MultiPoly partial(const MultiPoly& p, std::size_t var) {
    MultiPoly::Terms out;
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        Exponent d = e;
        --d[var];
        auto [it, inserted] = out.try_emplace(d, c * Rational(static_cast<long>(e[var])));
        if (!inserted) it->second += c * Rational(static_cast<long>(e[var]));
    }
    return MultiPoly(p.arity(), std::move(out));
}

Rational evaluate(const MultiPoly& p, const std::vector<Rational>& pt) { return p(pt); }

Ball evaluate(const MultiPoly& p, const std::vector<Ball>& pt) {
    const mpfr_prec_t prec = pt.front().prec();
    return p.eval<Ball>(
        pt, [&](const Rational& q) { return Ball(q, prec); },
        [](const Ball& b, std::uint64_t k) { return pow(b, static_cast<unsigned long>(k)); });
}

Rational scalar(const Rational&, const BigInt& v) { return Rational(v); }
Ball scalar(const Ball& like, const BigInt& v) { return Ball(Rational(v), like.prec()); }
Rational one_like(const Rational&) { return Rational(1); }
Ball one_like(const Ball& like) { return Ball(1L, like.prec()); }

template <class S>
UnitLowerTriangular<S> bell_matrix(const std::vector<S>& vals, const S& like, bool use_p) {
    const std::size_t M = vals.size();
    const BellFamily fam = bell_family(M);
    const auto& polys = use_p ? fam.P : fam.Q;
    std::vector<S> pt = vals;
    if (pt.empty()) pt.push_back(detail::zero_like(like));
    std::vector<S> at;
    for (const auto& p : polys) at.push_back(evaluate(p, pt));
    const auto n = static_cast<Eigen::Index>(M + 1);
    typename UnitLowerTriangular<S>::Dense m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            if (c > r) {
                m(r, c) = detail::zero_like(like);
            } else if (c == r) {
                m(r, c) = one_like(like);
            } else {
                const auto ru = static_cast<unsigned long>(r), cu = static_cast<unsigned long>(c);
                m(r, c) = scalar(like, binomial(ru, cu)) * at[ru - cu];
            }
        }
    return UnitLowerTriangular<S>(std::move(m), true);
}

template <class S>
UnitLowerTriangular<S> a_matrix(const std::vector<std::vector<S>>& ratios, std::size_t M, const S& like) {
    const std::size_t s = ratios.size();
    if (s == 0) throw PreconditionError("build_A: no variables");
    for (const auto& r : ratios)
        if (r.size() != M) throw PreconditionError("build_A: each ratio list must have length M");
    const MultiIndex orders(s, M);
    const std::size_t N = multi_index_count(orders);
    const auto n = static_cast<Eigen::Index>(N);
    typename UnitLowerTriangular<S>::Dense m(n, n);
    for (std::size_t r = 0; r < N; ++r) {
        const MultiIndex mr = multi_index_unrank(r, orders);
        for (std::size_t c = 0; c < N; ++c) {
            const MultiIndex mc = multi_index_unrank(c, orders);
            bool below = true;
            for (std::size_t i = 0; i < s; ++i) below = below && mc[i] <= mr[i];
            auto& slot = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (!below) {
                slot = detail::zero_like(like);
                continue;
            }
            S v = one_like(like);
            for (std::size_t i = 0; i < s; ++i) {
                const std::size_t d = mr[i] - mc[i];
                if (d == 0) continue;
                v = v * scalar(like, binomial(mr[i], mc[i])) * ratios[i][d - 1];
            }
            slot = v;
        }
    }
    return UnitLowerTriangular<S>(std::move(m), true);
}

std::string label(const MultiIndex& m) {
    std::string s = "m=(";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s + ")";
}

// Exact a^{R}, refusing exponents whose result would not fit in memory.
Rational exact_power(const Rational& a, const BigInt& R) {
    const double bits = mpz_get_d(R.get_mpz_t()) *
                        static_cast<double>(std::max(mpz_sizeinbase(a.num().get_mpz_t(), 2),
                                                     mpz_sizeinbase(a.den().get_mpz_t(), 2)));
    if (bits > 4e6) throw PreconditionError("shift too large for exact prefix products");
    return pow(a, R);
}

struct Prefix {
    std::vector<std::size_t> hit;    // hits below k0
    std::vector<Rational> terms;     // a_i^{R_k}, k < k0
};

Prefix prefix_data(const EvalContext& ctx, std::size_t i, const Rational& beta) {
    const std::size_t k0 = ctx.shift();
    const EvalContext base = ctx.with_shift(0);
    Prefix out;
    for (std::size_t k : hits(base, i, beta)) {
        if (k >= k0)
            throw PreconditionError("shift k0 = " + std::to_string(k0) + " too small: 1 - a_" + std::to_string(i + 1) +
                                    "^R_k beta vanishes at k = " + std::to_string(k));
        out.hit.push_back(k);
    }
    for (std::size_t k = 0; k < k0; ++k) out.terms.push_back(exact_power(ctx.a()[i], base.R(k)));
    return out;
}

UniPoly linear_factor(const Rational& x) { return UniPoly{Rational(1), -x}; }

Rational derivative_at(UniPoly p, std::size_t j, const Rational& y) {
    for (std::size_t t = 0; t < j; ++t) p = p.derivative();
    return p(y);
}

}  // namespace

BellFamily bell_family(std::size_t M) {
    const std::size_t arity = std::max<std::size_t>(M, 1);
    BellFamily fam;
    fam.P.push_back(MultiPoly::constant(arity, Rational(1)));
    fam.Q.push_back(MultiPoly::constant(arity, Rational(1)));
    const MultiPoly X0 = MultiPoly::variable(arity, 0);
    for (std::size_t m = 0; m < M; ++m) {
        const MultiPoly& p = fam.P.back();
        MultiPoly next = -(X0 * p);
        for (std::size_t j = 0; j + 1 <= m; ++j) next += MultiPoly::variable(arity, j + 1) * partial(p, j);
        fam.P.push_back(std::move(next));

        const MultiPoly& q = fam.Q.back();
        MultiPoly nq = X0 * q;
        for (std::size_t j = 1; j <= m; ++j) {
            const MultiPoly dYj = MultiPoly::variable(arity, j) + X0 * MultiPoly::variable(arity, j - 1);
            nq += partial(q, j - 1) * dYj;
        }
        fam.Q.push_back(std::move(nq));
    }
    return fam;
}

UnitLowerTriangular<Rational> build_B(const std::vector<Rational>& c) { return bell_matrix(c, Rational(0), true); }
UnitLowerTriangular<Ball> build_B(const std::vector<Ball>& c) {
    if (c.empty()) throw PreconditionError("build_B: Ball variant needs at least one value");
    return bell_matrix(c, c.front(), true);
}
UnitLowerTriangular<Rational> build_C(const std::vector<Rational>& y) { return bell_matrix(y, Rational(0), false); }
UnitLowerTriangular<Ball> build_C(const std::vector<Ball>& y) {
    if (y.empty()) throw PreconditionError("build_C: Ball variant needs at least one value");
    return bell_matrix(y, y.front(), false);
}

UnitLowerTriangular<Rational> build_A(const std::vector<std::vector<Rational>>& ratios, std::size_t M) {
    return a_matrix(ratios, M, Rational(0));
}

UnitLowerTriangular<Ball> build_A(const std::vector<std::vector<Ball>>& ratios, std::size_t M) {
    const Ball* like = nullptr;
    for (const auto& r : ratios)
        if (!r.empty()) like = &r.front();
    return a_matrix(ratios, M, like ? *like : Ball(128));
}

LCertificate build_L(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M) {
    if (i >= ctx.s()) throw PreconditionError("coordinate index out of range");
    const Prefix pre = prefix_data(ctx, i, beta);
    LCertificate cert;
    cert.k0 = ctx.shift();
    cert.n = pre.hit.size();
    UniPoly Q = UniPoly::constant(Rational(1));
    for (std::size_t k = 0; k < cert.k0; ++k)
        if (!std::binary_search(pre.hit.begin(), pre.hit.end(), k)) Q *= linear_factor(pre.terms[k]);
    cert.p = cert.n == 0 ? Rational(1) : Rational(factorial(cert.n)) * pow(-Rational(1) / beta, static_cast<long>(cert.n));
    cert.q = Q(beta);

    const auto N = static_cast<Eigen::Index>(M + 1);
    RationalMatrix L(N, N);
    for (std::size_t m = 0; m <= M; ++m)
        for (std::size_t mu = 0; mu <= M; ++mu) {
            Rational v(0);
            if (mu <= m) {
                const Rational multinomial =
                    Rational(factorial(m + cert.n)) /
                    Rational(BigInt(factorial(cert.n) * factorial(m - mu) * factorial(mu)));
                v = multinomial * cert.p * derivative_at(Q, m - mu, beta);
            }
            L(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(mu)) = v;
        }
    cert.L = UnitLowerTriangular<Rational>(std::move(L), false);
    return cert;
}

std::size_t select_shift(const EvalContext& ctx, const std::vector<Rational>& beta) {
    if (beta.size() != ctx.s()) throw PreconditionError("beta has the wrong arity");
    const EvalContext base = ctx.with_shift(0);
    std::size_t k0 = 0;
    for (std::size_t i = 0; i < ctx.s(); ++i)
        for (std::size_t k : hits(base, i, beta[i])) k0 = std::max(k0, k + 1);
    const std::size_t limit = *ctx.nd().strict_growth_from + 64;
    if (k0 > limit) throw PreconditionError("no admissible shift k0 <= K0 + 64");
    return k0;
}

bool ResidualReport::ok(long tol_exp) const {
    return std::all_of(residuals.begin(), residuals.end(),
                       [&](const Ball& r) { return r.contains_zero() && r.rad_below_pow2(tol_exp); });
}

double ResidualReport::max_radius() const {
    double worst = 0.0;
    for (const auto& r : residuals) worst = std::max(worst, r.rad_double());
    return worst;
}

ResidualReport verify_L(const EvalContext& ctx, std::size_t i, const Rational& beta, std::size_t M) {
    const LCertificate cert = build_L(ctx, i, beta, M);
    ResidualReport rep;
    const mpfr_prec_t wp = ctx.working_prec();
    if (cert.k0 == 0) {
        // No shift: L is the identity and both sides are the same function.
        for (std::size_t m = 0; m <= M; ++m) {
            rep.labels.push_back(label({m}));
            rep.residuals.emplace_back(wp);
        }
        return rep;
    }
    const EvalContext base = ctx.with_shift(0);
    const Jet lhs = eval_G_jet(base, i, beta, M + cert.n);
    const Jet rhs = eval_G_jet(ctx, i, beta, M);
    for (std::size_t m = 0; m <= M; ++m) {
        Ball r = lhs[m + cert.n] * Ball(Rational(factorial(m + cert.n)), wp);
        for (std::size_t mu = 0; mu <= m; ++mu)
            r -= Ball(cert.L(m, mu) * Rational(factorial(mu)), wp) * rhs[mu];
        rep.labels.push_back(label({m}));
        rep.residuals.push_back(std::move(r));
    }
    return rep;
}

ResidualReport verify_theta_decomposition(const EvalContext& ctx, const std::vector<Rational>& beta, std::size_t M) {
    if (beta.size() != ctx.s()) throw PreconditionError("beta has the wrong arity");
    const std::size_t s = ctx.s();
    const std::size_t k0 = ctx.shift();
    const mpfr_prec_t wp = ctx.working_prec();

    std::vector<Prefix> pre;
    std::vector<LCertificate> certs;
    for (std::size_t i = 0; i < s; ++i) {
        pre.push_back(prefix_data(ctx, i, beta[i]));
        certs.push_back(build_L(ctx, i, beta[i], M));
    }
    const MultiIndex orders(s, M);
    const std::size_t count = multi_index_count(orders);
    ResidualReport rep;
    if (k0 == 0) {
        // theta_2 vanishes, L is the identity and theta equals tilde theta.
        for (std::size_t idx = 0; idx < count; ++idx) {
            rep.labels.push_back(label(multi_index_unrank(idx, orders)));
            rep.residuals.emplace_back(wp);
        }
        return rep;
    }

    const EvalContext base = ctx.with_shift(0);
    MultiIndex lhs_orders(s);
    for (std::size_t i = 0; i < s; ++i) lhs_orders[i] = M + certs[i].n;
    const auto lhs = eval_Theta_table(base, beta, lhs_orders);
    const auto tilde = eval_Theta_table(ctx, beta, orders);

    // tilde g_i^{(mu)}(beta_i) for mu <= M + 1.
    std::vector<std::vector<Ball>> gt(s);
    for (std::size_t i = 0; i < s; ++i) {
        const Jet j = eval_G_jet(ctx, i, beta[i], M + 1);
        for (std::size_t mu = 0; mu <= M + 1; ++mu) gt[i].push_back(j[mu] * Ball(Rational(factorial(mu)), wp));
    }

    // dv[k][i][j] = v_{k,i}^{(j)}(beta_i) with v_{k,i} = a_k prod_{k' != k} (1 - a_{k'} y) / U_i.
    std::vector<std::vector<std::vector<Rational>>> dv(k0, std::vector<std::vector<Rational>>(s));
    std::vector<Rational> u(s, Rational(1));
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t n = certs[i].n;
        UniPoly U = UniPoly::constant(Rational(1));
        if (n >= 1) {
            U = pow(UniPoly{Rational(1), -Rational(1) / beta[i]}, static_cast<unsigned>(n - 1));
            u[i] = Rational(factorial(n - 1)) * pow(-Rational(1) / beta[i], static_cast<long>(n - 1));
        }
        for (std::size_t k = 0; k < k0; ++k) {
            UniPoly v = UniPoly::constant(pre[i].terms[k]);
            for (std::size_t kp = 0; kp < k0; ++kp)
                if (kp != k) v *= linear_factor(pre[i].terms[kp]);
            v = divide_exact(v, U);
            for (std::size_t j = 0; j <= M + 1; ++j) dv[k][i].push_back(derivative_at(v, j, beta[i]));
        }
    }

    for (std::size_t idx = 0; idx < count; ++idx) {
        const MultiIndex m = multi_index_unrank(idx, orders);
        MultiIndex mn(s), mp(s);
        for (std::size_t i = 0; i < s; ++i) {
            mn[i] = m[i] + certs[i].n;
            mp[i] = certs[i].n >= 1 ? m[i] + 1 : m[i];
        }
        Ball r = lhs[multi_index_rank(mn, lhs_orders)];

        // theta_1 = (L tilde theta)_m with L the Kronecker product of the L_i.
        for (std::size_t jdx = 0; jdx <= idx; ++jdx) {
            const MultiIndex mu = multi_index_unrank(jdx, orders);
            Rational c(1);
            for (std::size_t i = 0; i < s && !c.is_zero(); ++i) c *= mu[i] <= m[i] ? certs[i].L(m[i], mu[i]) : Rational(0);
            if (!c.is_zero()) r -= Ball(c, wp) * tilde[jdx];
        }

        // theta_2^{(m+n)} from the explicit U_i, V expansion.
        const std::size_t inner = multi_index_count(mp);
        for (std::size_t jdx = 0; jdx < inner; ++jdx) {
            const MultiIndex mu = multi_index_unrank(jdx, mp);
            Rational coef(1);
            for (std::size_t i = 0; i < s; ++i) {
                const std::size_t n = certs[i].n;
                if (n >= 1) {
                    coef *= Rational(factorial(m[i] + n)) /
                            Rational(BigInt(factorial(n - 1) * factorial(m[i] + 1 - mu[i]) * factorial(mu[i]))) * u[i];
                } else {
                    coef *= Rational(binomial(m[i], mu[i]));
                }
            }
            Rational V(0);
            for (std::size_t k = 0; k < k0; ++k) {
                Rational t(1);
                for (std::size_t i = 0; i < s; ++i) t *= dv[k][i][mp[i] - mu[i]];
                V += t;
            }
            const Rational c = coef * V;
            if (c.is_zero()) continue;
            Ball g(1L, wp);
            for (std::size_t i = 0; i < s; ++i) g *= gt[i][mu[i]];
            r -= Ball(c, wp) * g;
        }
        rep.labels.push_back(label(m));
        rep.residuals.push_back(std::move(r));
    }
    return rep;
}

}  // namespace mahlerkit
