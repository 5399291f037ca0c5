#include "mahlerkit/json_io.hpp"

#include <algorithm>

namespace mahlerkit {

BigInt bigint_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        try {
            const Rational q = Rational::parse(j.get<std::string>());
            if (q.den() == 1) return q.num();
        } catch (const std::exception&) {
        }
    }
    throw MalformedInput("expected an integer, got " + j.dump());
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(bigint_from_json(j));
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw MalformedInput("expected a rational (integer or \"num/den\"), got " + j.dump());
}

std::vector<Rational> rationals_from_json(const Json& j) {
    if (!j.is_array()) throw MalformedInput("expected an array of rationals, got " + j.dump());
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(rational_from_json(x));
    return out;
}

std::vector<std::size_t> indices_from_json(const Json& j) {
    if (!j.is_array()) throw MalformedInput("expected an array of nonnegative integers, got " + j.dump());
    std::vector<std::size_t> out;
    for (const auto& x : j) {
        if (!x.is_number_unsigned()) throw MalformedInput("expected a nonnegative integer, got " + x.dump());
        out.push_back(x.get<std::size_t>());
    }
    return out;
}

Json to_json(const BigInt& v) { return v.get_str(); }
Json to_json(const Rational& q) { return q.str(); }

Json to_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_json(q));
    return out;
}

Json to_json(const std::vector<BigInt>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

MultiPoly poly_from_json(const Json& j, std::size_t arity) {
    if (!j.is_array()) throw MalformedInput("polynomial must be a term list");
    MultiPoly p(arity);
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2) throw MalformedInput("term must be [[exponents], coefficient]");
        const auto e = indices_from_json(term[0]);
        if (e.size() != arity)
            throw MalformedInput("term " + term.dump() + " has " + std::to_string(e.size()) + " exponents, expected " +
                                 std::to_string(arity));
        p += MultiPoly::monomial(Exponent(e.begin(), e.end()), rational_from_json(term[1]));
    }
    return p;
}

Json to_json(const MultiPoly& p) {
    Json out = Json::array();
    for (const auto& [e, c] : p.terms()) out.push_back(Json::array({Json(std::vector<std::uint64_t>(e.begin(), e.end())), c.str()}));
    return out;
}

UniPoly unipoly_from_json(const Json& j) { return UniPoly(rationals_from_json(j)); }

Recurrence recurrence_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j.contains("initial"))
        throw MalformedInput("recurrence must be {\"coeffs\": [...], \"initial\": [...]}");
    std::vector<BigInt> c, r;
    for (const auto& x : j.at("coeffs")) c.push_back(bigint_from_json(x));
    for (const auto& x : j.at("initial")) r.push_back(bigint_from_json(x));
    if (c.empty() || c.size() != r.size()) throw MalformedInput("coeffs and initial must have equal positive length");
    return Recurrence(std::move(c), std::move(r));
}

Json to_json(const Recurrence& rec) { return {{"coeffs", to_json(rec.coeffs())}, {"initial", to_json(rec.initial())}}; }

Json to_json(const NdReport& r) {
    auto opt = [](const auto& o) -> Json { return o ? Json(std::to_string(*o)) : Json(nullptr); };
    return {{"phi_at_one", r.phi_at_one.str()},
            {"phi_at_minus_one", r.phi_at_minus_one.str()},
            {"ratio_unity_witness", opt(r.ratio_unity_witness)},
            {"minimal_order", std::to_string(r.minimal_order)},
            {"geometric", r.geometric},
            {"squarefree", r.squarefree},
            {"nd_ok", r.nd_ok},
            {"strict_growth_from", opt(r.strict_growth_from)}};
}

Json to_json(const RenderedBall& b) {
    return {{"mid_re", b.mid_re}, {"mid_im", b.mid_im}, {"rad", b.rad}, {"exact_zero", b.exact_zero}};
}

Json to_json(const Ball& b, unsigned digits) { return to_json(render(b, digits)); }

Json to_json(const UnitLowerTriangular<Rational>& m, const std::string& order) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return {{"order", order}, {"unit", m.unit()}, {"rows", std::move(rows)}};
}

}  // namespace mahlerkit
