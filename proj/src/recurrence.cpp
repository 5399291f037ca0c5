#include "mahlerkit/recurrence.hpp"

#include <algorithm>

#include "mahlerkit/cyclotomic.hpp"
#include "mahlerkit/errors.hpp"
#include "mahlerkit/multipoly.hpp"

namespace mahlerkit {

Recurrence::Recurrence(std::vector<BigInt> coeffs, std::vector<BigInt> initial)
    : c_(std::move(coeffs)), init_(std::move(initial)) {
    if (c_.empty()) throw PreconditionError("recurrence: order must be at least 1");
    if (init_.size() != c_.size()) throw PreconditionError("recurrence: need exactly n initial terms");
    for (const auto& c : c_)
        if (c < 0) throw PreconditionError("recurrence: coefficients must be nonnegative");
    if (c_.back() < 1) throw PreconditionError("recurrence: c_n must be at least 1");
    bool nonzero = false;
    for (const auto& r : init_) {
        if (r < 0) throw PreconditionError("recurrence: initial terms must be nonnegative");
        nonzero = nonzero || r != 0;
    }
    if (!nonzero) throw PreconditionError("recurrence: initial terms are all zero");
}

std::vector<BigInt> Recurrence::extend(std::size_t K) const {
    const std::size_t n = order();
    std::vector<BigInt> r(init_.begin(), init_.begin() + static_cast<long>(std::min(n, K + 1)));
    r.reserve(K + 1);
    while (r.size() <= K) {
        BigInt next = 0;
        const std::size_t m = r.size();
        for (std::size_t i = 0; i < n; ++i) next += c_[i] * r[m - 1 - i];
        r.push_back(std::move(next));
    }
    return r;
}

UniPoly char_poly(const Recurrence& rec) {
    const std::size_t n = rec.order();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    for (std::size_t i = 0; i < n; ++i) c[n - 1 - i] = -Rational(rec.coeffs()[i]);
    return UniPoly(std::move(c));
}

std::size_t minimal_order(const Recurrence& rec) {
    const auto terms = rec.extend(2 * rec.order() - 1);
    std::vector<Rational> s(terms.begin(), terms.end());
    // Berlekamp-Massey over Q.
    std::vector<Rational> C{1}, B{1};
    std::size_t L = 0, m = 1;
    Rational b = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Rational d = s[i];
        for (std::size_t j = 1; j <= L && j < C.size(); ++j) d += C[j] * s[i - j];
        if (d.is_zero()) {
            ++m;
            continue;
        }
        const Rational coef = d / b;
        std::vector<Rational> T = C;
        if (C.size() < B.size() + m) C.resize(B.size() + m);
        for (std::size_t j = 0; j < B.size(); ++j) C[j + m] -= coef * B[j];
        if (2 * L <= i) {
            L = i + 1 - L;
            B = std::move(T);
            b = d;
            m = 1;
        } else {
            ++m;
        }
    }
    return L;
}

UniPoly root_ratio_polynomial(const Recurrence& rec) {
    const UniPoly phi = char_poly(rec);
    // Variables: 0 = x, 1 = y.
    MultiPoly a(2), b(2);
    for (std::size_t i = 0; i < phi.coeffs().size(); ++i) {
        const Rational& c = phi.coeffs()[i];
        if (c.is_zero()) continue;
        a += MultiPoly::monomial({0, i}, c);
        b += MultiPoly::monomial({i, i}, c);
    }
    return resultant_eliminate(a, b, 1);
}

std::optional<std::size_t> strict_growth_index(const Recurrence& rec, std::size_t scan_limit) {
    const std::size_t n = rec.order();
    const auto r = rec.extend(scan_limit + n + 1);
    std::size_t run = 0;
    for (std::size_t k = 0; k < scan_limit + n; ++k) {
        run = (r[k + 1] - r[k] >= 1) ? run + 1 : 0;
        if (run == n) return k + 1 - n;
    }
    return std::nullopt;
}

NdReport check_nd(const Recurrence& rec, std::size_t scan_limit) {
    NdReport rep;
    const UniPoly phi = char_poly(rec);
    rep.phi_at_one = phi(Rational(1));
    rep.phi_at_minus_one = phi(Rational(-1));
    rep.squarefree = poly_gcd(phi, phi.derivative()).degree() == 0;
    rep.ratio_unity_witness = has_root_of_unity_root(root_ratio_polynomial(rec), true);
    rep.minimal_order = minimal_order(rec);
    rep.geometric = rep.minimal_order == 1;
    rep.nd_ok = !rep.phi_at_one.is_zero() && !rep.phi_at_minus_one.is_zero() &&
                !rep.ratio_unity_witness.has_value() && !rep.geometric;
    rep.strict_growth_from = strict_growth_index(rec, std::max(scan_limit, rec.order()));
    return rep;
}

}  // namespace mahlerkit
