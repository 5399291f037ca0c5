#include "mahlerkit/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mahlerkit/errors.hpp"

namespace mahlerkit {

MultiPoly::MultiPoly(std::size_t arity, Terms terms) : arity_(arity), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.size() != arity_) throw PreconditionError("MultiPoly: exponent arity mismatch");
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
}

MultiPoly MultiPoly::constant(std::size_t arity, const Rational& c) {
    MultiPoly p(arity);
    if (!c.is_zero()) p.terms_.emplace(Exponent(arity, 0), c);
    return p;
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Rational& c) {
    MultiPoly p(e.size());
    if (!c.is_zero()) p.terms_.emplace(e, c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t index) {
    Exponent e(arity, 0);
    e.at(index) = 1;
    return monomial(e);
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

Rational MultiPoly::constant_term() const { return coeff(Exponent(arity_, 0)); }

Rational MultiPoly::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::uint64_t MultiPoly::degree_in(std::size_t var) const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

std::uint64_t MultiPoly::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) {
        std::uint64_t s = 0;
        for (auto x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

const MultiPoly::Terms::value_type& MultiPoly::leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading_term: zero polynomial");
    return *terms_.rbegin();
}

MultiPoly MultiPoly::normalized() const {
    if (terms_.empty()) return *this;
    MultiPoly out = *this;
    const Rational inv = Rational(1) / leading_term().second;
    for (auto& [e, c] : out.terms_) c *= inv;
    return out;
}

void MultiPoly::check_arity(const MultiPoly& o) const {
    if (o.arity_ != arity_) throw PreconditionError("MultiPoly: arity mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_arity(b);
    MultiPoly out(a.arity_);
    Exponent e(a.arity_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto [it, inserted] = out.terms_.try_emplace(e, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
    }
    return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::shifted(const Exponent& s) const {
    if (s.size() != arity_) throw PreconditionError("MultiPoly::shifted: arity mismatch");
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        for (std::size_t i = 0; i < arity_; ++i) f[i] += s[i];
        out.terms_.emplace_hint(out.terms_.end(), std::move(f), c);
    }
    return out;
}

std::map<std::uint64_t, MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
    std::map<std::uint64_t, MultiPoly> out;
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        const auto d = f[var];
        f[var] = 0;
        auto [it, inserted] = out.try_emplace(d, MultiPoly(arity_));
        it->second.terms_.emplace(std::move(f), c);
    }
    return out;
}

MultiPoly MultiPoly::specialize(std::size_t var, const Rational& value) const {
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        const auto d = f[var];
        f[var] = 0;
        MultiPoly t = monomial(f, c * pow(value, static_cast<long>(d)));
        out += t;
    }
    return out;
}

UniPoly MultiPoly::to_unipoly(std::size_t var) const {
    std::vector<Rational> c(degree_in(var) + 1);
    for (const auto& [e, v] : terms_) {
        for (std::size_t i = 0; i < arity_; ++i)
            if (i != var && e[i] != 0) throw PreconditionError("to_unipoly: other variables present");
        c[e[var]] += v;
    }
    return UniPoly(std::move(c));
}

Rational MultiPoly::operator()(const std::vector<Rational>& point) const {
    if (point.size() != arity_) throw PreconditionError("MultiPoly: evaluation point arity mismatch");
    return eval(
        point, [](const Rational& r) { return r; },
        [](const Rational& x, std::uint64_t k) { return pow(x, static_cast<long>(k)); });
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool is_const = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
        const Rational mag = abs(c);
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = mag == Rational(1);
        if (is_const || !unit) os << mag;
        bool need_star = !is_const && !unit;
        for (std::size_t i = 0; i < arity_; ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << "*";
            os << "z" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

MultiPoly pow(const MultiPoly& p, unsigned k) {
    MultiPoly out = MultiPoly::constant(p.arity(), 1);
    MultiPoly base = p;
    while (k) {
        if (k & 1U) out *= base;
        k >>= 1U;
        if (k) base *= base;
    }
    return out;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw std::domain_error("divide_exact: zero divisor");
    if (a.arity() != b.arity()) throw PreconditionError("divide_exact: arity mismatch");
    const auto& [lb_e, lb_c] = b.leading_term();
    MultiPoly quotient(a.arity());
    MultiPoly rem = a;
    const std::size_t n = a.arity();
    while (!rem.is_zero()) {
        const auto& [lr_e, lr_c] = rem.leading_term();
        Exponent q(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (lr_e[i] < lb_e[i]) return std::nullopt;
            q[i] = lr_e[i] - lb_e[i];
        }
        const MultiPoly t = MultiPoly::monomial(q, lr_c / lb_c);
        quotient += t;
        rem -= t * b;
    }
    return quotient;
}

namespace {

using Univariate = std::map<std::uint64_t, MultiPoly>;  // degree -> coefficient

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
    MultiPoly g(p.arity());
    for (const auto& [d, c] : p.coefficients_in(var)) {
        g = poly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

MultiPoly primitive_part(const MultiPoly& p, std::size_t var) {
    if (p.is_zero()) return p;
    const MultiPoly c = content_in(p, var);
    return divide_exact(p, c).value().normalized();
}

// Pseudo-remainder of a by b with respect to var.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
    Univariate bu = b.coefficients_in(var);
    const std::uint64_t db = bu.rbegin()->first;
    const MultiPoly lcb = bu.rbegin()->second;
    MultiPoly r = a;
    while (!r.is_zero()) {
        Univariate ru = r.coefficients_in(var);
        const std::uint64_t dr = ru.rbegin()->first;
        if (dr < db) break;
        Exponent shift(a.arity(), 0);
        shift[var] = dr - db;
        r = r * lcb - (b * ru.rbegin()->second).shifted(shift);
    }
    return r;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.arity() != b.arity()) throw PreconditionError("poly_gcd: arity mismatch");
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant()) return MultiPoly::constant(a.arity(), 1);

    std::size_t var = a.arity();
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (a.uses_variable(i) || b.uses_variable(i)) {
            var = i;
            break;
        }
    }
    if (!a.uses_variable(var)) return poly_gcd(a, content_in(b, var));
    if (!b.uses_variable(var)) return poly_gcd(content_in(a, var), b);

    const MultiPoly ca = content_in(a, var);
    const MultiPoly cb = content_in(b, var);
    const MultiPoly c = poly_gcd(ca, cb);
    MultiPoly x = divide_exact(a, ca).value();
    MultiPoly y = divide_exact(b, cb).value();
    if (x.degree_in(var) < y.degree_in(var)) std::swap(x, y);
    while (!y.is_zero() && y.degree_in(var) > 0) {
        MultiPoly r = pseudo_remainder(x, y, var);
        x = std::move(y);
        y = primitive_part(r, var);
    }
    MultiPoly g = y.is_zero() ? primitive_part(x, var) : MultiPoly::constant(a.arity(), 1);
    return (c * g).normalized();
}

UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
    // Newton divided differences.
    const std::size_t n = xs.size();
    std::vector<Rational> coef = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    UniPoly p;
    for (std::size_t k = n; k-- > 0;) {
        p *= UniPoly({-xs[k], 1});
        p += UniPoly::constant(coef[k]);
    }
    return p;
}

UniPoly resultant_eliminate(const MultiPoly& a, const MultiPoly& b, std::size_t eliminate) {
    if (a.arity() != 2 || b.arity() != 2) throw PreconditionError("resultant_eliminate: bivariate inputs required");
    if (eliminate > 1) throw PreconditionError("resultant_eliminate: variable index out of range");
    const std::size_t keep = 1 - eliminate;
    const auto ua = a.coefficients_in(eliminate);
    const auto ub = b.coefficients_in(eliminate);
    if (ua.empty() || ub.empty()) throw std::domain_error("resultant_eliminate: zero polynomial");
    const MultiPoly lca = ua.rbegin()->second;
    const MultiPoly lcb = ub.rbegin()->second;
    const std::uint64_t bound =
        a.degree_in(eliminate) * b.degree_in(keep) + b.degree_in(eliminate) * a.degree_in(keep);

    std::vector<Rational> xs, ys;
    for (long x = 1; xs.size() < bound + 1; ++x) {
        const Rational xv(x);
        if (lca.specialize(keep, xv).is_zero() || lcb.specialize(keep, xv).is_zero()) continue;
        const UniPoly pa = a.specialize(keep, xv).to_unipoly(eliminate);
        const UniPoly pb = b.specialize(keep, xv).to_unipoly(eliminate);
        xs.push_back(xv);
        ys.push_back(resultant(pa, pb));
    }
    return interpolate(xs, ys);
}

RationalFunction::RationalFunction(std::size_t arity)
    : num_(arity), den_(MultiPoly::constant(arity, 1)) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) {
    if (den.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    if (num.arity() != den.arity()) throw PreconditionError("RationalFunction: arity mismatch");
    if (num.is_zero()) {
        num_ = std::move(num);
        den_ = MultiPoly::constant(den.arity(), 1);
        return;
    }
    const MultiPoly g = poly_gcd(num, den);
    num = divide_exact(num, g).value();
    den = divide_exact(den, g).value();
    const Rational lc = den.leading_term().second;
    num_ = num * (Rational(1) / lc);
    den_ = den * (Rational(1) / lc);
}

Rational RationalFunction::operator()(const std::vector<Rational>& point) const {
    const Rational d = den_(point);
    if (d.is_zero()) throw PreconditionError("RationalFunction: evaluation at a pole");
    return num_(point) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

}  // namespace mahlerkit
