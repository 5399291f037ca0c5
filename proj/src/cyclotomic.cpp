#include "mahlerkit/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace mahlerkit {

std::uint64_t euler_phi(std::uint64_t d) {
    std::uint64_t result = d;
    for (std::uint64_t p = 2; p * p <= d; ++p) {
        if (d % p != 0) continue;
        while (d % p == 0) d /= p;
        result -= result / p;
    }
    if (d > 1) result -= result / d;
    return result;
}

UniPoly cyclotomic(std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("cyclotomic: order must be positive");
    static std::mutex mu;
    static std::map<std::uint64_t, UniPoly> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(d); it != cache.end()) return it->second;
    }
    // X^d - 1 divided by every cyclotomic factor of proper divisor order.
    UniPoly p = UniPoly::monomial(1, d) - UniPoly::constant(1);
    for (std::uint64_t e = 1; e < d; ++e)
        if (d % e == 0) p = divide_exact(p, cyclotomic(e));
    std::lock_guard lock(mu);
    cache.emplace(d, p);
    return p;
}

std::optional<std::uint64_t> has_root_of_unity_root(const UniPoly& p, bool exclude_one) {
    if (p.is_zero()) throw std::invalid_argument("has_root_of_unity_root: zero polynomial");
    UniPoly q = p;
    if (exclude_one) {
        const UniPoly x1({-1, 1});
        while (q.degree() > 0) {
            auto [quo, rem] = divmod(q, x1);
            if (!rem.is_zero()) break;
            q = std::move(quo);
        }
    }
    const auto deg = static_cast<std::uint64_t>(q.degree());
    if (deg == 0) return std::nullopt;
    const std::uint64_t limit = 2 * deg * deg + 4;
    for (std::uint64_t d = 1; d <= limit; ++d) {
        if (euler_phi(d) > deg) continue;
        if (poly_gcd(q, cyclotomic(d)).degree() > 0) return d;
    }
    return std::nullopt;
}

}  // namespace mahlerkit
