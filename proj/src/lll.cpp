#include "mahlerkit/lll.hpp"

#include <algorithm>
#include <cmath>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/errors.hpp"

namespace mahlerkit {

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
    return s;
}

BigInt squared_norm(const std::vector<BigInt>& v) { return dot(v, v); }

namespace {

void check_shape(const IntLatticeBasis& b) {
    for (const auto& r : b.rows)
        if (r.size() != b.dim()) throw PreconditionError("lattice basis rows have unequal length");
}

// Nearest integer to n/d, d > 0.
BigInt round_div(const BigInt& n, const BigInt& d) {
    BigInt t = 2 * n + d;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), BigInt(2 * d).get_mpz_t());
    return q;
}

void axpy(std::vector<BigInt>& y, const BigInt& q, const std::vector<BigInt>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) mpz_submul(y[i].get_mpz_t(), q.get_mpz_t(), x[i].get_mpz_t());
}

// Textbook LLL with Gram-Schmidt data in MPFR. Any inaccuracy is repaired by
// the exact pass; the swap budget only guards against numerical cycling.
void floating_pass(std::vector<std::vector<BigInt>>& b, double delta) {
    const std::size_t n = b.size();
    if (n < 2) return;
    std::size_t max_bits = 1;
    for (const auto& r : b)
        for (const auto& x : r) max_bits = std::max(max_bits, mpz_sizeinbase(x.get_mpz_t(), 2));
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(2 * max_bits + 64 + 8 * n);

    std::vector<std::vector<Mpfr>> mu(n, std::vector<Mpfr>(n, Mpfr(prec)));
    std::vector<Mpfr> B(n, Mpfr(prec));
    Mpfr t(prec), u(prec);

    auto set_z = [&](Mpfr& x, const BigInt& z) { mpfr_set_z(x.get(), z.get_mpz_t(), MPFR_RNDN); };
    auto gso_row = [&](std::size_t k) {
        for (std::size_t j = 0; j <= k; ++j) {
            set_z(u, dot(b[k], b[j]));
            for (std::size_t i = 0; i < j; ++i) {
                mpfr_mul(t.get(), mu[j][i].get(), mu[k][i].get(), MPFR_RNDN);
                mpfr_mul(t.get(), t.get(), B[i].get(), MPFR_RNDN);
                mpfr_sub(u.get(), u.get(), t.get(), MPFR_RNDN);
            }
            if (j < k) {
                if (mpfr_zero_p(B[j].get())) throw PreconditionError("lll_reduce: dependent rows");
                mpfr_div(mu[k][j].get(), u.get(), B[j].get(), MPFR_RNDN);
            } else {
                mpfr_set(B[k].get(), u.get(), MPFR_RNDN);
            }
        }
    };
    auto reduce = [&](std::size_t k, std::size_t l) {
        if (mpfr_cmp_d(mu[k][l].get(), 0.5) <= 0 && mpfr_cmp_d(mu[k][l].get(), -0.5) >= 0) return false;
        mpfr_round(t.get(), mu[k][l].get());
        if (mpfr_zero_p(t.get())) return false;
        BigInt q;
        mpfr_get_z(q.get_mpz_t(), t.get(), MPFR_RNDN);
        axpy(b[k], q, b[l]);
        mpfr_sub(mu[k][l].get(), mu[k][l].get(), t.get(), MPFR_RNDN);
        for (std::size_t i = 0; i < l; ++i) {
            mpfr_mul(u.get(), t.get(), mu[l][i].get(), MPFR_RNDN);
            mpfr_sub(mu[k][i].get(), mu[k][i].get(), u.get(), MPFR_RNDN);
        }
        return true;
    };

    gso_row(0);
    std::size_t k = 1, kmax = 0;
    std::size_t budget = 200 * n * n * (max_bits + 8);
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            gso_row(k);
        }
        reduce(k, k - 1);
        // Lovasz: B_k >= (delta - mu^2) B_{k-1}
        mpfr_sqr(t.get(), mu[k][k - 1].get(), MPFR_RNDN);
        mpfr_d_sub(t.get(), delta, t.get(), MPFR_RNDN);
        mpfr_mul(t.get(), t.get(), B[k - 1].get(), MPFR_RNDN);
        if (mpfr_cmp(B[k].get(), t.get()) < 0) {
            if (budget-- == 0) return;
            std::swap(b[k], b[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            const Mpfr m = mu[k][k - 1];
            Mpfr nb(prec);
            mpfr_sqr(nb.get(), m.get(), MPFR_RNDN);
            mpfr_mul(nb.get(), nb.get(), B[k - 1].get(), MPFR_RNDN);
            mpfr_add(nb.get(), nb.get(), B[k].get(), MPFR_RNDN);
            if (mpfr_zero_p(nb.get())) throw PreconditionError("lll_reduce: dependent rows");
            mpfr_mul(mu[k][k - 1].get(), m.get(), B[k - 1].get(), MPFR_RNDN);
            mpfr_div(mu[k][k - 1].get(), mu[k][k - 1].get(), nb.get(), MPFR_RNDN);
            mpfr_mul(B[k].get(), B[k].get(), B[k - 1].get(), MPFR_RNDN);
            mpfr_div(B[k].get(), B[k].get(), nb.get(), MPFR_RNDN);
            B[k - 1] = nb;
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                const Mpfr tt = mu[i][k];
                mpfr_mul(u.get(), m.get(), tt.get(), MPFR_RNDN);
                mpfr_sub(mu[i][k].get(), mu[i][k - 1].get(), u.get(), MPFR_RNDN);
                mpfr_mul(u.get(), mu[k][k - 1].get(), mu[i][k].get(), MPFR_RNDN);
                mpfr_add(mu[i][k - 1].get(), tt.get(), u.get(), MPFR_RNDN);
            }
            k = std::max<std::size_t>(1, k - 1);
        } else {
            for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
            ++k;
        }
    }
}

struct IntegralState {
    std::vector<BigInt> d;                 // d[0] = 1, d[i+1] = Gram determinant of rows 0..i
    std::vector<std::vector<BigInt>> lam;  // lam[k][j] = d[j+1] mu_kj
};

IntegralState integral_gso(const std::vector<std::vector<BigInt>>& b) {
    const std::size_t n = b.size();
    IntegralState s;
    s.d.assign(n + 1, BigInt(0));
    s.d[0] = 1;
    s.lam.assign(n, std::vector<BigInt>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j <= k; ++j) {
            BigInt u = dot(b[k], b[j]);
            for (std::size_t i = 0; i < j; ++i) {
                u = s.d[i + 1] * u - s.lam[k][i] * s.lam[j][i];
                mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), s.d[i].get_mpz_t());
            }
            if (j < k) {
                s.lam[k][j] = u;
            } else {
                if (u == 0) throw PreconditionError("lll_reduce: dependent rows");
                s.d[k + 1] = u;
            }
        }
    }
    return s;
}

// Integral LLL (all Gram-Schmidt data kept as exact integers).
void exact_pass(std::vector<std::vector<BigInt>>& b, const Rational& delta) {
    const std::size_t n = b.size();
    if (n < 2) {
        if (n == 1 && squared_norm(b[0]) == 0) throw PreconditionError("lll_reduce: dependent rows");
        return;
    }
    IntegralState s = integral_gso(b);
    auto& d = s.d;
    auto& lam = s.lam;
    const BigInt dp = delta.num(), dq = delta.den();

    auto reduce = [&](std::size_t k, std::size_t l) {
        if (2 * abs(lam[k][l]) <= d[l + 1]) return;
        const BigInt q = round_div(lam[k][l], d[l + 1]);
        axpy(b[k], q, b[l]);
        lam[k][l] -= q * d[l + 1];
        for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    std::size_t k = 1;
    while (k < n) {
        reduce(k, k - 1);
        // Lovasz in integral form: q d_{k+1} d_{k-1} >= p d_k^2 - q lam^2
        const BigInt lhs = dq * d[k + 1] * d[k - 1];
        const BigInt rhs = dp * d[k] * d[k] - dq * lam[k][k - 1] * lam[k][k - 1];
        if (lhs < rhs) {
            std::swap(b[k], b[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            const BigInt l = lam[k][k - 1];
            BigInt nb = d[k - 1] * d[k + 1] + l * l;
            mpz_divexact(nb.get_mpz_t(), nb.get_mpz_t(), d[k].get_mpz_t());
            for (std::size_t i = k + 1; i < n; ++i) {
                const BigInt t = lam[i][k];
                BigInt x = d[k + 1] * lam[i][k - 1] - l * t;
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d[k].get_mpz_t());
                lam[i][k] = x;
                BigInt y = nb * t + l * lam[i][k];
                mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), d[k + 1].get_mpz_t());
                lam[i][k - 1] = y;
            }
            d[k] = nb;
            k = std::max<std::size_t>(1, k - 1);
        } else {
            for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
            ++k;
        }
    }
}

void check_delta(const Rational& delta) {
    if (!(delta > Rational(1, 4) && delta < Rational(1)))
        throw PreconditionError("lll_reduce: delta must satisfy 1/4 < delta < 1");
}

}  // namespace

IntLatticeBasis lll_reduce(const IntLatticeBasis& basis, const Rational& delta) {
    check_delta(delta);
    check_shape(basis);
    if (basis.size() > basis.dim() && basis.dim() > 0) throw PreconditionError("lll_reduce: dependent rows");
    IntLatticeBasis out = basis;
    integral_gso(out.rows);  // rejects dependent input before any work
    floating_pass(out.rows, std::min(delta.to_double() + 0.005, 0.999));
    exact_pass(out.rows, delta);
    return out;
}

bool is_lll_reduced(const IntLatticeBasis& basis, const Rational& delta) {
    check_shape(basis);
    const IntegralState s = integral_gso(basis.rows);
    const BigInt dp = delta.num(), dq = delta.den();
    for (std::size_t k = 1; k < basis.size(); ++k) {
        for (std::size_t j = 0; j < k; ++j)
            if (2 * abs(s.lam[k][j]) > s.d[j + 1]) return false;
        const BigInt lhs = dq * s.d[k + 1] * s.d[k - 1];
        const BigInt rhs = dp * s.d[k] * s.d[k] - dq * s.lam[k][k - 1] * s.lam[k][k - 1];
        if (lhs < rhs) return false;
    }
    return true;
}

}  // namespace mahlerkit
