#pragma once

#include <vector>

#include "mahlerkit/rational.hpp"

namespace mahlerkit {

/// Integer lattice basis given by its rows.
struct IntLatticeBasis {
    std::vector<std::vector<BigInt>> rows;

    [[nodiscard]] std::size_t size() const { return rows.size(); }
    [[nodiscard]] std::size_t dim() const { return rows.empty() ? 0 : rows.front().size(); }
    friend bool operator==(const IntLatticeBasis&, const IntLatticeBasis&) = default;
};

/// delta-LLL reduction, 1/4 < delta < 1. A floating pass on MPFR Gram-Schmidt
/// data does the bulk of the work; an exact integral pass then enforces the
/// size and Lovasz conditions exactly. Throws PreconditionError on dependent
/// rows or an out-of-range delta.
IntLatticeBasis lll_reduce(const IntLatticeBasis& basis, const Rational& delta);

/// Exact check of the size condition |mu_kj| <= 1/2 and the Lovasz condition.
bool is_lll_reduced(const IntLatticeBasis& basis, const Rational& delta);

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b);
BigInt squared_norm(const std::vector<BigInt>& v);

}  // namespace mahlerkit
