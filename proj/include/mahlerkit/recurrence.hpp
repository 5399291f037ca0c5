#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mahlerkit/rational.hpp"
#include "mahlerkit/unipoly.hpp"

namespace mahlerkit {

/// R_{k+n} = c_1 R_{k+n-1} + ... + c_n R_k with nonnegative integer data,
/// c_n >= 1 and initial terms not all zero.
class Recurrence {
public:
    /// Throws PreconditionError when the data violates the invariants.
    Recurrence(std::vector<BigInt> coeffs, std::vector<BigInt> initial);

    [[nodiscard]] std::size_t order() const { return c_.size(); }
    [[nodiscard]] const std::vector<BigInt>& coeffs() const { return c_; }
    [[nodiscard]] const std::vector<BigInt>& initial() const { return init_; }

    /// R_0, ..., R_K.
    [[nodiscard]] std::vector<BigInt> extend(std::size_t K) const;

    friend bool operator==(const Recurrence&, const Recurrence&) = default;

private:
    std::vector<BigInt> c_;
    std::vector<BigInt> init_;
};

/// X^n - c_1 X^{n-1} - ... - c_n.
UniPoly char_poly(const Recurrence& rec);

/// Length of the shortest linear recurrence over Q satisfied by the first
/// 2n terms (Berlekamp-Massey).
std::size_t minimal_order(const Recurrence& rec);

/// Res_y(Phi(y), Phi(x y)) as a polynomial in x; its roots are the ratios of
/// pairs of roots of Phi.
UniPoly root_ratio_polynomial(const Recurrence& rec);

/// Smallest K0 <= scan_limit such that D_k = R_{k+1} - R_k >= 1 for
/// K0 <= k < K0 + n. The differences obey the same recurrence, so D_k >= 1
/// then holds for every k >= K0.
std::optional<std::size_t> strict_growth_index(const Recurrence& rec, std::size_t scan_limit);

struct NdReport {
    Rational phi_at_one;
    Rational phi_at_minus_one;
    std::optional<std::uint64_t> ratio_unity_witness;
    std::size_t minimal_order = 0;
    bool geometric = false;
    bool squarefree = true;
    bool nd_ok = false;
    std::optional<std::size_t> strict_growth_from;
};

inline constexpr std::size_t kDefaultGrowthScan = 256;

NdReport check_nd(const Recurrence& rec, std::size_t scan_limit = kDefaultGrowthScan);

}  // namespace mahlerkit
