#include "mahlerkit/unipoly.hpp"

#include <sstream>
#include <stdexcept>

#include "mahlerkit/linalg.hpp"

namespace mahlerkit {

UniPoly::UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return UniPoly(std::move(v));
}

UniPoly UniPoly::from_roots(const std::vector<Rational>& roots) {
    UniPoly p = constant(1);
    for (const auto& r : roots) p *= UniPoly({-r, 1});
    return p;
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::monic() const {
    if (c_.empty()) return {};
    UniPoly out = *this;
    const Rational lc = leading();
    for (auto& x : out.c_) x /= lc;
    return out;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UniPoly(std::move(d));
}

Rational UniPoly::operator()(const Rational& x) const {
    return eval(x, [](const Rational& r) { return r; });
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= c;
    return *this;
}

std::string UniPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c.is_zero()) continue;
        Rational mag = abs(c);
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = mag == Rational(1);
        if (i == 0 || !unit) os << mag;
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UniPoly pow(const UniPoly& p, unsigned k) {
    UniPoly out = UniPoly::constant(1);
    UniPoly base = p;
    while (k) {
        if (k & 1U) out *= base;
        k >>= 1U;
        if (k) base *= base;
    }
    return out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("divmod: zero divisor");
    if (a.degree() < b.degree()) return {UniPoly{}, a};
    std::vector<Rational> rem = a.coeffs();
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const Rational lc = b.leading();
    const auto db = static_cast<std::size_t>(b.degree());
    for (std::size_t k = quo.size(); k-- > 0;) {
        const Rational q = rem[k + db] / lc;
        quo[k] = q;
        if (q.is_zero()) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs()[j];
    }
    rem.resize(db);
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly divide_exact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("divide_exact: nonzero remainder");
    return q;
}

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Rational resultant(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("resultant: both polynomials are zero");
    if (a.is_zero() || b.is_zero()) {
        // Res(0, c) = 1 for a nonzero constant c, else 0.
        const UniPoly& other = a.is_zero() ? b : a;
        return other.degree() == 0 ? Rational(1) : Rational(0);
    }
    const auto m = static_cast<std::size_t>(a.degree());
    const auto n = static_cast<std::size_t>(b.degree());
    if (m == 0) return pow(a.leading(), static_cast<long>(n));
    if (n == 0) return pow(b.leading(), static_cast<long>(m));
    const std::size_t size = m + n;
    RationalMatrix syl = RationalMatrix::Constant(static_cast<Eigen::Index>(size),
                                                  static_cast<Eigen::Index>(size), Rational(0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j <= m; ++j)
            syl(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r + j)) = a.coeffs()[m - j];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j <= n; ++j)
            syl(static_cast<Eigen::Index>(n + r), static_cast<Eigen::Index>(r + j)) = b.coeffs()[n - j];
    return exact_determinant(syl);
}

}  // namespace mahlerkit
