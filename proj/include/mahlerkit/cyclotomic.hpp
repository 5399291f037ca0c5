#pragma once

#include <cstdint>
#include <optional>

#include "mahlerkit/unipoly.hpp"

namespace mahlerkit {

/// The d-th cyclotomic polynomial. Throws std::invalid_argument for d = 0.
UniPoly cyclotomic(std::uint64_t d);

std::uint64_t euler_phi(std::uint64_t d);

/// Smallest d such that p shares a root with the d-th cyclotomic polynomial.
/// Every d with euler_phi(d) <= deg p is examined, found by scanning
/// d <= 2 deg(p)^2 + 4. With exclude_one, all factors (X - 1) are divided out
/// first. Throws std::invalid_argument for the zero polynomial.
std::optional<std::uint64_t> has_root_of_unity_root(const UniPoly& p, bool exclude_one = false);

}  // namespace mahlerkit
