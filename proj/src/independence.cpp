#include "mahlerkit/independence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "mahlerkit/errors.hpp"
#include "mahlerkit/linalg.hpp"
#include "mahlerkit/lll.hpp"

namespace mahlerkit {

namespace {

// All exponent vectors of the given arity with total degree <= D, graded
// (degree 0 first) and lexicographically descending within a degree.
std::vector<Exponent> monomials_up_to(std::size_t arity, std::size_t D) {
    std::vector<Exponent> out;
    for (std::size_t deg = 0; deg <= D; ++deg) {
        Exponent e(arity, 0);
        // Enumerate compositions of deg into `arity` parts.
        std::vector<Exponent> level;
        auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
            if (arity == 0) return;
            if (i + 1 == arity) {
                e[i] = left;
                level.push_back(e);
                return;
            }
            for (std::size_t v = left + 1; v-- > 0;) {
                e[i] = v;
                self(self, i + 1, left - v);
            }
        };
        rec(rec, 0, deg);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

Rational lemma38_coeff(const Rational& beta, std::size_t m, std::uint64_t e) {
    if (e < m + 1) return Rational(0);
    const std::uint64_t t = e - m - 1;
    if (beta.is_zero()) return t == 0 ? Rational(1) : Rational(0);
    return Rational(binomial(e - 1, t)) * pow(beta, static_cast<long>(t));
}

std::vector<Ball> to_balls(const std::vector<Rational>& z, mpfr_prec_t prec) {
    std::vector<Ball> out;
    for (const auto& q : z) out.emplace_back(q, prec);
    return out;
}

std::vector<Ball> block_of(const std::vector<Ball>& z, std::size_t i, std::size_t n) {
    return {z.begin() + static_cast<std::ptrdiff_t>(i * n), z.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)};
}

MultiPoly univariate_in(const UniPoly& q, const MultiPoly& x) {
    MultiPoly out(x.arity());
    MultiPoly power = MultiPoly::constant(x.arity(), Rational(1));
    for (std::size_t d = 0; d < q.coeffs().size(); ++d) {
        if (!q.coeffs()[d].is_zero()) out += power * q.coeffs()[d];
        if (d + 1 < q.coeffs().size()) power *= x;
    }
    return out;
}

std::string poly_pair(const MultiPoly& a, const MultiPoly& b) { return "(" + a.str() + ", " + b.str() + ")"; }

Rational random_nonzero_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 5);
    long p = 0;
    while (p == 0) p = num(rng);
    return Rational(BigInt(p), BigInt(den(rng)));
}

std::string format_height(double H) {
    std::ostringstream os;
    os << H;
    return os.str();
}

}  // namespace

RankReport rank_check_lemma38(const std::vector<Rational>& betas, std::size_t M, std::size_t s, std::size_t D) {
    if (s == 0) throw PreconditionError("rank check: s must be positive");
    for (std::size_t a = 0; a < betas.size(); ++a) {
        if (betas[a].is_zero()) throw PreconditionError("rank check: beta_j must be nonzero");
        for (std::size_t b = a + 1; b < betas.size(); ++b)
            if (betas[a] == betas[b]) throw PreconditionError("rank check: beta_j must be distinct");
    }
    std::vector<Rational> all{Rational(0)};
    all.insert(all.end(), betas.begin(), betas.end());
    const std::size_t J = betas.size();

    RankReport rep;
    const MultiIndex jo(s, J), mo(s, M);
    for (std::size_t a = 0; a < multi_index_count(jo); ++a)
        for (std::size_t b = 0; b < multi_index_count(mo); ++b)
            rep.ids.push_back({multi_index_unrank(a, jo), multi_index_unrank(b, mo)});
    rep.functions = rep.ids.size();

    auto columns_for = [&](std::size_t deg) {
        std::vector<Exponent> cols;
        for (auto& e : monomials_up_to(s, deg))
            if (std::all_of(e.begin(), e.end(), [](std::uint64_t v) { return v >= 1; })) cols.push_back(e);
        return cols;
    };
    std::size_t deg = std::max(D, s);
    while (columns_for(deg).size() < rep.functions) ++deg;

    for (int attempt = 0; attempt <= 3; ++attempt, deg *= 2) {
        const auto cols = columns_for(deg);
        RationalMatrix mat(static_cast<Eigen::Index>(rep.functions), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t r = 0; r < rep.functions; ++r)
            for (std::size_t c = 0; c < cols.size(); ++c) {
                Rational v(1);
                for (std::size_t i = 0; i < s && !v.is_zero(); ++i)
                    v *= lemma38_coeff(all[rep.ids[r].j[i]], rep.ids[r].m[i], cols[c][i]);
                mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
            }
        rep.rank = exact_rank(mat);
        rep.degree = deg;
        rep.columns = cols.size();
        rep.full_rank = rep.rank == rep.functions;
        if (rep.full_rank) break;
    }
    return rep;
}

std::vector<FuncEqResidual> verify_functional_equations(const EvalContext& ctx, const std::vector<Rational>& betas,
                                                        const std::vector<std::size_t>& j, const MultiIndex& m,
                                                        const std::vector<std::vector<Rational>>& z_samples) {
    const std::size_t s = j.size();
    if (s == 0 || m.size() != s) throw PreconditionError("j and m must have equal positive length");
    std::vector<Rational> all{Rational(0)};
    all.insert(all.end(), betas.begin(), betas.end());
    for (auto ji : j)
        if (ji >= all.size()) throw PreconditionError("beta index out of range");
    const std::size_t n = ctx.rec().order();
    const mpfr_prec_t wp = ctx.working_prec();
    const BlockTransform t(CompanionMatrix::from(ctx.rec()), s);
    const MonomialMap mono(ctx.rec());

    std::vector<Rational> bsel;
    for (auto ji : j) bsel.push_back(all[ji]);

    std::vector<FuncEqResidual> out;
    for (std::size_t si = 0; si < z_samples.size(); ++si) {
        const auto& zq = z_samples[si];
        if (zq.size() != s * n) throw PreconditionError("sample has the wrong dimension");
        const std::vector<Ball> z = to_balls(zq, wp);
        const std::vector<Ball> oz = to_balls(act_on_point(t, zq), wp);

        std::vector<Ball> ratio;  // M(z_i) / (1 - beta M(z_i)) per block
        std::vector<Ball> Mz;
        for (std::size_t i = 0; i < s; ++i) {
            Mz.push_back(mono(block_of(z, i, n)));
            ratio.push_back(Mz[i] / (Ball(1L, wp) - Ball(bsel[i], wp) * Mz[i]));
        }

        Ball inhom(1L, wp);
        for (std::size_t i = 0; i < s; ++i) inhom *= pow(ratio[i], static_cast<unsigned long>(m[i] + 1));
        Ball r = eval_lambert_general(ctx, z, bsel, m) - eval_lambert_general(ctx, oz, bsel, m) - inhom;
        out.push_back({"h_jm", si, 0, std::move(r)});

        for (std::size_t i = 0; i < s; ++i) {
            const auto zi = block_of(z, i, n), ozi = block_of(oz, i, n);
            Ball ri = eval_lambert_general(ctx, zi, {bsel[i]}, {m[i]}) -
                      eval_lambert_general(ctx, ozi, {bsel[i]}, {m[i]}) -
                      pow(ratio[i], static_cast<unsigned long>(m[i] + 1));
            out.push_back({"h_ijm", si, i, std::move(ri)});
            if (j[i] == 0) continue;
            Ball gi = eval_lambert_product(ctx, zi, bsel[i]) -
                      (Ball(1L, wp) - Ball(bsel[i], wp) * Mz[i]) * eval_lambert_product(ctx, ozi, bsel[i]);
            out.push_back({"g_ij", si, i, std::move(gi)});
        }
    }
    return out;
}

FalsifierReport falsify_theorem37(const Recurrence& rec, std::size_t s, const Rational& alpha, const MultiPoly& P,
                                  const std::vector<UniPoly>& Q, std::size_t D) {
    if (P.arity() != s || Q.size() != s) throw PreconditionError("falsifier: R must have s variables and s factors");
    for (const auto& q : Q)
        if (q.coeff(0).is_zero()) throw PreconditionError("falsifier: every Q_i must satisfy Q_i(0) != 0");
    if (alpha.is_zero()) throw PreconditionError("falsifier: alpha must be nonzero");
    const std::size_t n = rec.order();
    const std::size_t dim = s * n;
    const BlockTransform t(CompanionMatrix::from(rec), s);
    const MonomialMap mono(rec);

    std::vector<MultiPoly> Mi;
    for (std::size_t i = 0; i < s; ++i) Mi.push_back(mono.as_poly(i, dim));
    MultiPoly den = MultiPoly::constant(dim, Rational(1));
    for (std::size_t i = 0; i < s; ++i) den *= univariate_in(Q[i], Mi[i]);
    MultiPoly rhs(dim);
    for (const auto& [e, c] : P.terms()) {
        MultiPoly term = MultiPoly::constant(dim, c);
        for (std::size_t i = 0; i < s; ++i)
            if (e[i] > 0) term *= pow(Mi[i], static_cast<unsigned>(e[i]));
        rhs += term;
    }

    const auto unknowns = monomials_up_to(dim, D);
    std::map<Exponent, SparseSystem::Row> rows;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        MultiPoly lhs = MultiPoly::monomial(unknowns[u]) - MultiPoly::monomial(act_on_exponents(t, unknowns[u]), alpha);
        lhs *= den;
        for (const auto& [e, c] : lhs.terms()) {
            auto& row = rows[e];
            auto [it, inserted] = row.try_emplace(u, c);
            if (!inserted) it->second += c;
        }
    }
    for (const auto& [e, c] : rhs.terms()) rows.try_emplace(e);

    SparseSystem sys(unknowns.size());
    for (auto& [e, row] : rows) sys.add_row(std::move(row), rhs.coeff(e));
    const auto sol = sys.solve();

    FalsifierReport rep;
    rep.unknowns = unknowns.size();
    rep.equations = rows.size();
    rep.consistent = sol.consistent;
    rep.rank = sol.rank;
    rep.nullity = sol.nullity;
    if (sol.consistent) {
        MultiPoly f(dim);
        for (std::size_t u = 0; u < unknowns.size(); ++u)
            if (!sol.particular[u].is_zero()) f += MultiPoly::monomial(unknowns[u], sol.particular[u]);
        rep.solution = std::move(f);
    }
    return rep;
}

FalsifierReport falsify_theorem37(const Recurrence& rec, std::size_t s, const Rational& alpha,
                                  const RationalFunction& R, std::size_t D) {
    if (R.arity() != s) throw PreconditionError("falsifier: R must have s variables");
    const MultiPoly& den = R.den();
    const Rational d0 = den.constant_term();
    if (d0.is_zero()) throw PreconditionError("falsifier: denominator vanishes at the origin");
    std::vector<UniPoly> Q;
    MultiPoly prod = MultiPoly::constant(s, Rational(1));
    for (std::size_t i = 0; i < s; ++i) {
        MultiPoly qi = den;
        for (std::size_t k = 0; k < s; ++k)
            if (k != i) qi = qi.specialize(k, Rational(0));
        Q.push_back(qi.to_unipoly(i));
        prod *= qi;
    }
    const Rational scale = pow(d0, static_cast<long>(s) - 1);
    if (!(den * scale == prod))
        throw PreconditionError("falsifier: denominator is not a product of univariate factors");
    return falsify_theorem37(rec, s, alpha, R.num() * scale, Q, D);
}

Lemma41Report check_lemma41(const MultiPoly& A, const MultiPoly& B, const BlockTransform& t) {
    if (A.is_zero() || B.is_zero()) throw PreconditionError("pullback gcd check: inputs must be nonzero");
    if (!poly_gcd(A, B).is_constant()) throw PreconditionError("pullback gcd check: inputs are not coprime");
    Lemma41Report rep;
    rep.gcd = poly_gcd(pullback(t, A), pullback(t, B));
    rep.monomial = rep.gcd.is_monomial();
    if (rep.monomial) rep.I = rep.gcd.leading_term().first;
    return rep;
}

MultiPoly orbit_monomial_minus(const Recurrence& rec, std::size_t k, const Rational& gamma) {
    const std::size_t n = rec.order();
    const auto R = rec.extend(k + n);
    Exponent e(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!R[k + n - 1 - j].fits_ulong_p()) throw PreconditionError("orbit exponent too large");
        e[j] = R[k + n - 1 - j].get_ui();
    }
    return MultiPoly::monomial(e) - MultiPoly::constant(n, gamma);
}

bool check_lemma42(const Recurrence& rec, std::size_t k1, std::size_t k2, const Rational& gamma1,
                   const Rational& gamma2) {
    if (k1 == k2) throw PreconditionError("orbit coprimality check: k1 and k2 must differ");
    if (gamma1.is_zero() || gamma2.is_zero()) throw PreconditionError("orbit coprimality check: gamma must be nonzero");
    const MultiPoly g = poly_gcd(orbit_monomial_minus(rec, k1, gamma1), orbit_monomial_minus(rec, k2, gamma2));
    return g.is_constant();
}

std::vector<Lemma43Entry> check_lemma43(const Recurrence& rec, std::size_t l_max, std::size_t K) {
    const auto R = rec.extend(K + l_max);
    std::vector<Lemma43Entry> out;
    const auto first = std::find_if(R.begin(), R.end(), [](const BigInt& v) { return v != 0; });
    const std::size_t k0 = static_cast<std::size_t>(first - R.begin());
    for (std::size_t l = 1; l <= l_max; ++l) {
        Lemma43Entry e;
        e.l = l;
        if (k0 + l >= R.size()) {
            out.push_back(e);
            continue;
        }
        e.c = Rational(R[k0 + l], R[k0]);
        for (std::size_t k = 0; k <= K; ++k)
            if (Rational(R[k + l]) != e.c * Rational(R[k])) {
                e.violation = k;
                break;
            }
        out.push_back(e);
    }
    return out;
}

Exponent pullback_degrees(const MultiPoly& P, const BlockTransform& t) {
    const MultiPoly q = pullback(t, P);
    Exponent d(q.arity());
    for (std::size_t v = 0; v < q.arity(); ++v) d[v] = q.degree_in(v);
    return d;
}

Lemma44Report check_lemma44(const MultiPoly& P, const BlockTransform& t, const Exponent& I) {
    if (P.is_zero()) throw PreconditionError("divisibility check: P must be nonzero");
    Lemma44Report rep;
    rep.hypothesis = divides(pullback(t, P), P.shifted(I));
    rep.conclusion = P.is_monomial();
    return rep;
}

MultiPoly random_poly(std::mt19937_64& rng, std::size_t arity, std::size_t terms, std::uint64_t max_exp) {
    std::uniform_int_distribution<std::uint64_t> ex(0, max_exp);
    std::uniform_int_distribution<long> co(-5, 5);
    MultiPoly p(arity);
    for (std::size_t k = 0; k < terms; ++k) {
        Exponent e(arity);
        for (auto& v : e) v = ex(rng);
        long c = 0;
        while (c == 0) c = co(rng);
        p += MultiPoly::monomial(e, Rational(c));
    }
    return p;
}

PropertyRunReport property_run_lemma41(const BlockTransform& t, std::size_t instances, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PropertyRunReport rep;
    while (rep.instances < instances) {
        const MultiPoly A = random_poly(rng, t.dim(), 3, 3);
        const MultiPoly B = random_poly(rng, t.dim(), 3, 3);
        if (A.is_zero() || B.is_zero() || !poly_gcd(A, B).is_constant()) continue;
        ++rep.instances;
        if (!check_lemma41(A, B, t).monomial) {
            ++rep.counterexamples;
            rep.failures.push_back(poly_pair(A, B));
        }
    }
    return rep;
}

PropertyRunReport property_run_lemma42(const Recurrence& rec, std::size_t instances, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> kd(0, 4);
    PropertyRunReport rep;
    while (rep.instances < instances) {
        const std::size_t k1 = kd(rng), k2 = kd(rng);
        if (k1 == k2) continue;
        const Rational g1 = random_nonzero_rational(rng), g2 = random_nonzero_rational(rng);
        ++rep.instances;
        if (!check_lemma42(rec, k1, k2, g1, g2)) {
            ++rep.counterexamples;
            rep.failures.push_back("k=(" + std::to_string(k1) + "," + std::to_string(k2) + ") gamma=(" + g1.str() +
                                   "," + g2.str() + ")");
        }
    }
    return rep;
}

PropertyRunReport property_run_lemma44(const BlockTransform& t, std::size_t instances, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> terms(1, 3);
    PropertyRunReport rep;
    while (rep.instances < instances) {
        const MultiPoly P = random_poly(rng, t.dim(), terms(rng), 3);
        if (P.is_zero()) continue;
        ++rep.instances;
        if (check_lemma44(P, t, pullback_degrees(P, t)).counterexample()) {
            ++rep.counterexamples;
            rep.failures.push_back(P.str());
        }
    }
    return rep;
}

RelationScanReport relation_scan(const std::vector<Ball>& values, std::size_t d, double H, mpfr_prec_t p) {
    if (values.empty()) throw PreconditionError("relation scan: no values");
    if (p <= 2 * kScanGuardBits) throw PreconditionError("relation scan: precision too small");
    for (const auto& v : values)
        if (!v.rad_below_pow2(-static_cast<long>(p / 2)))
            throw NumericError("relation scan: insufficient precision (value radius not below 2^-p/2)");

    RelationScanReport rep;
    rep.degree = d;
    rep.precision = p;
    rep.height = H;
    const auto exps = monomials_up_to(values.size(), d);
    const std::size_t N = exps.size();
    mpfr_prec_t vp = p;
    for (const auto& v : values) vp = std::max(vp, v.prec());
    std::vector<Ball> mons;
    for (const auto& e : exps) {
        Ball b(1L, vp);
        for (std::size_t i = 0; i < values.size(); ++i)
            if (e[i] > 0) b *= pow(values[i], static_cast<unsigned long>(e[i]));
        mons.push_back(std::move(b));
        rep.monomials.emplace_back(e.begin(), e.end());
    }

    const long S = static_cast<long>(p) - kScanGuardBits;
    IntLatticeBasis basis;
    Mpfr err_sq(kRadPrec);  // ||e||^2 with e_i = 1/2 + 2^S rad_i
    for (std::size_t i = 0; i < N; ++i) {
        std::vector<BigInt> row(N + 1, 0);
        row[i] = 1;
        Mpfr scaled(mons[i].prec());
        mpfr_mul_2si(scaled.get(), mons[i].mid().get(), S, MPFR_RNDN);
        mpfr_get_z(row[N].get_mpz_t(), scaled.get(), MPFR_RNDN);
        basis.rows.push_back(std::move(row));

        Mpfr e(kRadPrec);
        mpfr_mul_2si(e.get(), mons[i].rad().get(), S, MPFR_RNDU);
        mpfr_add_d(e.get(), e.get(), 0.5, MPFR_RNDU);
        mpfr_sqr(e.get(), e.get(), MPFR_RNDU);
        mpfr_add(err_sq.get(), err_sq.get(), e.get(), MPFR_RNDU);
    }
    const IntLatticeBasis red = lll_reduce(basis, Rational(99, 100));

    for (const auto& row : red.rows) {
        std::vector<BigInt> c(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(N));
        BigInt height = 0;
        for (const auto& v : c) height = std::max(height, BigInt(abs(v)));
        if (height == 0 || mpz_get_d(height.get_mpz_t()) > H) continue;
        Ball sum(vp);
        for (std::size_t i = 0; i < N; ++i)
            if (c[i] != 0) sum += Ball(Rational(c[i]), vp) * mons[i];
        if (!sum.contains_zero()) continue;
        if (rep.found && height >= rep.found_height) continue;
        const auto first = std::find_if(c.begin(), c.end(), [](const BigInt& v) { return v != 0; });
        if (*first < 0)
            for (auto& v : c) v = -v;
        rep.found = c;
        rep.found_height = height;
    }

    // Any relation c gives a lattice vector of norm <= ||c|| sqrt(1 + ||e||^2),
    // and every nonzero lattice vector is at least min_j ||b_j*|| long.
    RationalMatrix gram(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b)
            gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = Rational(dot(red.rows[a], red.rows[b]));
    Rational prev(1);
    std::optional<Rational> min_star;
    for (std::size_t k = 1; k <= N; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        const Rational dk = exact_determinant(gram.topLeftCorner(kk, kk));
        const Rational star = dk / prev;
        if (!min_star || star < *min_star) min_star = star;
        prev = dk;
    }
    Mpfr bound(kRadPrec), denom(kRadPrec);
    mpfr_set_q(bound.get(), min_star->get_mpq_t(), MPFR_RNDD);
    mpfr_add_ui(denom.get(), err_sq.get(), 1, MPFR_RNDU);
    mpfr_mul_ui(denom.get(), denom.get(), static_cast<unsigned long>(N), MPFR_RNDU);
    mpfr_div(bound.get(), bound.get(), denom.get(), MPFR_RNDD);
    mpfr_sqrt(bound.get(), bound.get(), MPFR_RNDD);
    mpfr_log10(bound.get(), bound.get(), MPFR_RNDD);
    rep.absent_below_log10 = mpfr_get_d(bound.get(), MPFR_RNDD);

    std::ostringstream verdict;
    if (rep.found) {
        verdict << "found (certified)";
    } else if (rep.absent_below_log10 >= std::log10(H)) {
        verdict << "none below height " << format_height(H) << " at precision " << p;
    } else {
        verdict << "none below height 1e" << std::floor(rep.absent_below_log10 * 100) / 100 << " at precision " << p
                << " (requested height " << format_height(H) << " not reached)";
    }
    rep.verdict = verdict.str();
    return rep;
}

}  // namespace mahlerkit
