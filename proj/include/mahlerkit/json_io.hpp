#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mahlerkit/ball.hpp"
#include "mahlerkit/multipoly.hpp"
#include "mahlerkit/rational.hpp"
#include "mahlerkit/recurrence.hpp"
#include "mahlerkit/relations.hpp"
#include "mahlerkit/unipoly.hpp"

namespace mahlerkit {

using Json = nlohmann::json;

/// Input that does not match a job schema. Maps to CLI exit code 3.
class MalformedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parsers accept integers or "num/den" strings wherever a rational is
// expected, and throw MalformedInput on anything else.
BigInt bigint_from_json(const Json& j);
Rational rational_from_json(const Json& j);
std::vector<Rational> rationals_from_json(const Json& j);
std::vector<std::size_t> indices_from_json(const Json& j);

Json to_json(const BigInt& v);
Json to_json(const Rational& q);
Json to_json(const std::vector<Rational>& v);
Json to_json(const std::vector<BigInt>& v);

/// Term list [[e_1, ..., e_k], "num/den"], sorted by exponent.
MultiPoly poly_from_json(const Json& j, std::size_t arity);
Json to_json(const MultiPoly& p);
/// Coefficient list c_0, c_1, ... of a univariate polynomial.
UniPoly unipoly_from_json(const Json& j);

/// {"coeffs": [c_1, ..., c_n], "initial": [R_0, ..., R_{n-1}]}
Recurrence recurrence_from_json(const Json& j);
Json to_json(const Recurrence& rec);
Json to_json(const NdReport& r);

/// {"mid_re", "mid_im", "rad", "exact_zero"} with `digits` fractional digits.
Json to_json(const Ball& b, unsigned digits);
Json to_json(const RenderedBall& b);

/// Rows of rational strings plus an order-convention header.
Json to_json(const UnitLowerTriangular<Rational>& m, const std::string& order);

}  // namespace mahlerkit
