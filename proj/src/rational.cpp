#include "mahlerkit/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace mahlerkit {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");

    auto parse_int = [&](const std::string& part) {
        if (part.empty()) throw std::invalid_argument("Rational::parse: malformed '" + s + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw std::invalid_argument("Rational::parse: malformed '" + s + "'");
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9')
                throw std::invalid_argument("Rational::parse: malformed '" + s + "'");
        }
        return BigInt(part[0] == '+' ? part.substr(1) : part, 10);
    };

    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    const BigInt num = parse_int(s.substr(0, slash));
    const std::string den_text = s.substr(slash + 1);
    if (!den_text.empty() && den_text[0] == '-')
        throw std::invalid_argument("Rational::parse: negative denominator in '" + s + "'");
    const BigInt den = parse_int(den_text);
    if (den == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
    return Rational(num, den);
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return Rational(mpq_class(::abs(r.get()))); }

Rational pow(const Rational& r, long e) {
    if (e < 0) {
        if (r.is_zero()) throw std::domain_error("pow: zero to a negative power");
        return Rational(1) / pow(r, -e);
    }
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

Rational pow(const Rational& r, const BigInt& e) {
    if (!e.fits_slong_p()) throw std::overflow_error("pow: exponent too large");
    return pow(r, e.get_si());
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

BigInt factorial(unsigned long n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

}  // namespace mahlerkit
