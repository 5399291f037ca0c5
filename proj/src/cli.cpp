#include "mahlerkit/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "mahlerkit/errors.hpp"
#include "mahlerkit/independence.hpp"
#include "mahlerkit/mahler.hpp"
#include "mahlerkit/relations.hpp"
#include "mahlerkit/series.hpp"

namespace mahlerkit::cli {

namespace {

// Thrown inside a command when a sub-check fails after computation finished.
struct CheckFailed {
    std::string what;
};

struct Ctx {
    const Json& payload;
    mpfr_prec_t prec;
    std::uint64_t seed;
    unsigned digits;
    Json artifacts = Json::object();
    Json values = Json::array();
    Json timing = Json::object();

    void value(const std::string& name, const Ball& b) {
        Json row = to_json(b, digits);
        row["name"] = name;
        values.push_back(std::move(row));
    }
};

const Json& field(const Json& payload, const char* key) {
    if (!payload.contains(key)) throw MalformedInput(std::string("payload is missing \"") + key + "\"");
    return payload.at(key);
}

std::size_t size_field(const Json& payload, const char* key, std::size_t fallback) {
    if (!payload.contains(key)) return fallback;
    const Json& v = payload.at(key);
    if (!v.is_number_unsigned()) throw MalformedInput(std::string("\"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::string index_label(const std::vector<std::size_t>& m) {
    std::string out = "(";
    for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + std::to_string(m[i]);
    return out + ")";
}

EvalContext make_context(const Ctx& c) {
    EvalContext ctx(recurrence_from_json(field(c.payload, "recurrence")), rationals_from_json(field(c.payload, "a")),
                    c.prec);
    return ctx;
}

void record_context(Ctx& c, const EvalContext& ctx) {
    c.timing["terms"] = ctx.term_count();
    c.timing["working_prec"] = ctx.working_prec();
}

void cmd_check_recurrence(Ctx& c) {
    const Recurrence rec = recurrence_from_json(field(c.payload, "recurrence"));
    const NdReport nd = check_nd(rec, size_field(c.payload, "scan_limit", kDefaultGrowthScan));
    c.artifacts["nd"] = to_json(nd);
    c.artifacts["char_poly"] = to_json(char_poly(rec).coeffs());
    c.artifacts["terms"] = to_json(rec.extend(size_field(c.payload, "terms", 10)));
    if (!nd.nd_ok) {
        std::string why;
        if (nd.phi_at_one.is_zero()) why += " phi(1) = 0;";
        if (nd.phi_at_minus_one.is_zero()) why += " phi(-1) = 0;";
        if (nd.ratio_unity_witness) why += " root ratio is a root of unity of order " + std::to_string(*nd.ratio_unity_witness) + ";";
        if (nd.geometric) why += " sequence is geometric;";
        throw PreconditionError("recurrence violates (ND):" + why);
    }
}

void cmd_eval(Ctx& c) {
    const EvalContext ctx = make_context(c);
    const auto beta = rationals_from_json(field(c.payload, "beta"));
    std::vector<std::vector<std::size_t>> orders;
    if (c.payload.contains("orders"))
        for (const auto& m : c.payload.at("orders")) orders.push_back(indices_from_json(m));
    else
        orders.emplace_back(ctx.s(), 0);
    std::vector<std::string> fns{"G", "H", "Theta"};
    if (c.payload.contains("functions")) fns = c.payload.at("functions").get<std::vector<std::string>>();
    for (const auto& f : fns)
        if (f != "G" && f != "H" && f != "Theta" && f != "Xi") throw MalformedInput("unknown function \"" + f + "\"");

    const ZeroProfile zp = zero_profile(ctx, beta);
    c.artifacts["zero_orders"] = zp.counts;
    for (const auto& m : orders)
        for (const auto& f : fns) {
            Ball v;
            if (f == "G") v = eval_G_multi(ctx, beta, m);
            else if (f == "H") v = eval_H_multi(ctx, beta, m);
            else if (f == "Theta") v = eval_Theta(ctx, beta, m);
            else v = eval_Xi(ctx, beta, m);
            c.value(f + "^" + index_label(m), v);
        }
    record_context(c, ctx);
}

void residuals_to_values(Ctx& c, const std::string& prefix, const ResidualReport& r) {
    for (std::size_t k = 0; k < r.residuals.size(); ++k) c.value(prefix + r.labels[k], r.residuals[k]);
}

void cmd_verify_relations(Ctx& c) {
    const EvalContext base = make_context(c);
    const auto beta = rationals_from_json(field(c.payload, "beta"));
    const std::size_t M = size_field(c.payload, "M", 2);
    const long tol = static_cast<long>(size_field(c.payload, "tol_bits", static_cast<std::size_t>(c.prec - 56)));
    const std::size_t k0 = c.payload.contains("shift") ? size_field(c.payload, "shift", 0) : select_shift(base, beta);
    const EvalContext ctx = base.with_shift(k0);
    c.artifacts["shift"] = k0;
    c.artifacts["tol_bits"] = tol;

    bool ok = true;
    Json certs = Json::array();
    for (std::size_t i = 0; i < ctx.s(); ++i) {
        const LCertificate cert = build_L(ctx, i, beta[i], M);
        certs.push_back({{"i", i},
                         {"n", cert.n},
                         {"p", cert.p.str()},
                         {"q", cert.q.str()},
                         {"L", to_json(cert.L, "row m, column mu, both 0..M")}});
        const ResidualReport r = verify_L(ctx, i, beta[i], M);
        residuals_to_values(c, "L" + std::to_string(i + 1) + ":", r);
        ok = ok && r.ok(-tol);
    }
    c.artifacts["certificates"] = std::move(certs);
    const ResidualReport theta = verify_theta_decomposition(ctx, beta, M);
    residuals_to_values(c, "theta:", theta);
    ok = ok && theta.ok(-tol);
    record_context(c, ctx);
    if (!ok) throw CheckFailed{"a residual is not certified below 2^-" + std::to_string(tol)};
}

std::vector<std::vector<Rational>> seeded_samples(std::uint64_t seed, std::size_t count, std::size_t dim) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(1, 5);
    std::vector<std::vector<Rational>> out(count);
    for (auto& z : out)
        for (std::size_t k = 0; k < dim; ++k) z.emplace_back(BigInt(num(rng)), BigInt(10));
    return out;
}

void cmd_verify_funceq(Ctx& c) {
    const EvalContext ctx = make_context(c);
    const auto betas = rationals_from_json(field(c.payload, "betas"));
    const auto j = indices_from_json(field(c.payload, "j"));
    const auto m = indices_from_json(field(c.payload, "m"));
    const long tol = static_cast<long>(size_field(c.payload, "tol_bits", static_cast<std::size_t>(c.prec - 40)));
    std::vector<std::vector<Rational>> samples;
    if (c.payload.contains("samples")) {
        for (const auto& z : c.payload.at("samples")) samples.push_back(rationals_from_json(z));
    } else {
        samples = seeded_samples(c.seed, size_field(c.payload, "sample_count", 10), j.size() * ctx.rec().order());
    }
    Json pts = Json::array();
    for (const auto& z : samples) pts.push_back(to_json(z));
    c.artifacts["samples"] = std::move(pts);
    c.artifacts["tol_bits"] = tol;

    bool ok = true;
    for (const auto& r : verify_functional_equations(ctx, betas, j, m, samples)) {
        c.value(r.tag + "[sample " + std::to_string(r.sample) + ", block " + std::to_string(r.block + 1) + "]",
                r.residual);
        ok = ok && r.residual.contains_zero() && r.residual.rad_below_pow2(-tol);
    }
    record_context(c, ctx);
    if (!ok) throw CheckFailed{"a residual is not certified below 2^-" + std::to_string(tol)};
}

void cmd_rank_check(Ctx& c) {
    const auto betas = rationals_from_json(field(c.payload, "betas"));
    const RankReport r = rank_check_lemma38(betas, size_field(c.payload, "M", 1), size_field(c.payload, "s", 1),
                                            size_field(c.payload, "D", 0));
    c.artifacts["functions"] = r.functions;
    c.artifacts["rank"] = r.rank;
    c.artifacts["degree"] = r.degree;
    c.artifacts["columns"] = r.columns;
    c.artifacts["full_rank"] = r.full_rank;
    if (!r.full_rank) throw CheckFailed{"coefficient matrix is rank deficient at degree " + std::to_string(r.degree)};
}

void cmd_falsify(Ctx& c) {
    const Recurrence rec = recurrence_from_json(field(c.payload, "recurrence"));
    const std::size_t s = size_field(c.payload, "s", 1);
    const Rational alpha = rational_from_json(field(c.payload, "alpha"));
    const std::size_t D = size_field(c.payload, "D", 4);
    FalsifierReport r;
    if (c.payload.contains("Q")) {
        std::vector<UniPoly> Q;
        for (const auto& q : c.payload.at("Q")) Q.push_back(unipoly_from_json(q));
        r = falsify_theorem37(rec, s, alpha, poly_from_json(field(c.payload, "P"), s), Q, D);
    } else {
        const Json& R = field(c.payload, "R");
        MultiPoly den = R.contains("den") ? poly_from_json(R.at("den"), s) : MultiPoly::constant(s, Rational(1));
        r = falsify_theorem37(rec, s, alpha, RationalFunction(poly_from_json(field(R, "num"), s), std::move(den)), D);
    }
    c.artifacts["unknowns"] = r.unknowns;
    c.artifacts["equations"] = r.equations;
    c.artifacts["solvable"] = r.consistent;
    c.artifacts["rank"] = r.rank;
    c.artifacts["nullity"] = r.nullity;
    c.artifacts["solution"] = r.solution ? to_json(*r.solution) : Json(nullptr);
    c.artifacts["scope"] = "verified over Q";
}

Ball scan_value(const EvalContext& ctx, const Json& spec) {
    const std::string kind = field(spec, "kind").get<std::string>();
    if (kind == "G_i" || kind == "H_i") {
        const std::size_t i = size_field(spec, "i", 0);
        const std::size_t m = size_field(spec, "m", 0);
        const Rational beta = rational_from_json(field(spec, "beta"));
        const Jet jet = kind == "G_i" ? eval_G_jet(ctx, i, beta, m) : eval_H_jet(ctx, i, beta, m);
        Ball v = jet[m];
        for (std::size_t k = 2; k <= m; ++k) v *= Ball(static_cast<long>(k), v.prec());
        return v;
    }
    const auto beta = rationals_from_json(field(spec, "beta"));
    const auto m = spec.contains("m") ? indices_from_json(spec.at("m")) : MultiIndex(ctx.s(), 0);
    if (kind == "G") return eval_G_multi(ctx, beta, m);
    if (kind == "H") return eval_H_multi(ctx, beta, m);
    if (kind == "Theta") return eval_Theta(ctx, beta, m);
    if (kind == "Xi") return eval_Xi(ctx, beta, m);
    throw MalformedInput("unknown value kind \"" + kind + "\"");
}

void cmd_scan(Ctx& c) {
    const EvalContext ctx = make_context(c);
    std::vector<Ball> vals;
    Json names = Json::array();
    for (const auto& spec : field(c.payload, "values")) {
        vals.push_back(scan_value(ctx, spec));
        names.push_back(spec.contains("name") ? spec.at("name") : Json(spec.dump()));
        c.value(names.back().get<std::string>(), vals.back());
    }
    const double H = c.payload.contains("height") ? c.payload.at("height").get<double>() : 1e10;
    const RelationScanReport r = relation_scan(vals, size_field(c.payload, "degree", 2), H, c.prec);
    c.artifacts["legend"] = {{"values", names}, {"monomials", r.monomials}};
    c.artifacts["found"] = r.found ? to_json(*r.found) : Json(nullptr);
    c.artifacts["found_height"] = r.found ? Json(r.found_height.get_str()) : Json(nullptr);
    c.artifacts["absent_below_log10"] = r.absent_below_log10;
    c.artifacts["verdict"] = r.verdict;
    record_context(c, ctx);
}

Json property_json(const PropertyRunReport& r) {
    return {{"instances", r.instances}, {"counterexamples", r.counterexamples}, {"failures", r.failures}};
}

void cmd_lemma4x(Ctx& c) {
    const Recurrence rec = recurrence_from_json(field(c.payload, "recurrence"));
    const std::size_t s = size_field(c.payload, "s", 1);
    const std::size_t inst = size_field(c.payload, "instances", 100);
    const BlockTransform t(CompanionMatrix::from(rec), s);
    bool ok = true;

    const auto l41 = property_run_lemma41(t, inst, c.seed);
    const auto l42 = property_run_lemma42(rec, inst, c.seed + 1);
    const auto l44 = property_run_lemma44(t, inst, c.seed + 2);
    c.artifacts["lemma41"] = property_json(l41);
    c.artifacts["lemma42"] = property_json(l42);
    c.artifacts["lemma44"] = property_json(l44);
    c.artifacts["scope"] = "verified over Q";
    ok = l41.counterexamples == 0 && l42.counterexamples == 0 && l44.counterexamples == 0;

    Json l43 = Json::array();
    for (const auto& e : check_lemma43(rec, size_field(c.payload, "l_max", 5), size_field(c.payload, "K", 20))) {
        l43.push_back({{"l", e.l},
                       {"c", e.c.str()},
                       {"violation", e.violation ? Json(*e.violation) : Json(nullptr)},
                       {"verdict", e.violation ? "relation fails" : "relation holds on window"}});
        ok = ok && e.violation.has_value();
    }
    c.artifacts["lemma43"] = std::move(l43);

    const MultiPoly g = poly_gcd(orbit_monomial_minus(rec, 0, 1), orbit_monomial_minus(rec, 1, 1));
    c.artifacts["orbit_gcd"] = {{"k", {0, 1}}, {"gamma", {"1", "1"}}, {"gcd", to_json(g)}};
    ok = ok && g.is_constant();
    if (!ok) throw CheckFailed{"a property check produced a counterexample"};
}

const std::map<std::string, std::function<void(Ctx&)>>& commands() {
    static const std::map<std::string, std::function<void(Ctx&)>> table{
        {"check-recurrence", cmd_check_recurrence},
        {"eval", cmd_eval},
        {"verify-relations", cmd_verify_relations},
        {"verify-funceq", cmd_verify_funceq},
        {"rank-check", cmd_rank_check},
        {"falsify", cmd_falsify},
        {"scan", cmd_scan},
        {"lemma4x", cmd_lemma4x},
    };
    return table;
}

Outcome fail(Json report, int code, const char* status, const std::string& what) {
    report["status"] = status;
    report["error"] = what;
    return {code, std::move(report)};
}

}  // namespace

Outcome run(const Json& job, const Options& opt) {
    Json report{{"job", job}, {"status", "ok"}, {"artifacts", Json::object()}, {"values", Json::array()},
                {"timing", Json::object()}};
    try {
        if (!job.is_object()) throw MalformedInput("job must be a JSON object");
        const std::string command = field(job, "command").get<std::string>();
        const auto it = commands().find(command);
        if (it == commands().end()) throw MalformedInput("unknown command \"" + command + "\"");
        const Json payload = job.contains("payload") ? job.at("payload") : Json::object();
        if (!payload.is_object()) throw MalformedInput("payload must be a JSON object");

        long prec = job.contains("precision_bits") ? job.at("precision_bits").get<long>() : kDefaultPrec;
        if (opt.prec) prec = *opt.prec;
        if (prec < 16) throw MalformedInput("precision_bits must be at least 16");
        std::uint64_t seed = job.contains("seed") ? job.at("seed").get<std::uint64_t>() : kDefaultSeed;
        if (opt.seed) seed = *opt.seed;
        report["job"]["precision_bits"] = prec;
        report["job"]["seed"] = seed;

        Ctx c{payload, static_cast<mpfr_prec_t>(prec), seed, decimal_digits(prec)};
        auto keep = [&] {
            report["artifacts"] = std::move(c.artifacts);
            report["values"] = std::move(c.values);
            report["timing"] = std::move(c.timing);
        };
        try {
            it->second(c);
        } catch (const CheckFailed& e) {
            keep();
            return fail(std::move(report), kNumericFailed, "numeric-failed", e.what);
        } catch (...) {
            keep();
            throw;
        }
        keep();
        return {kOk, std::move(report)};
    } catch (const MalformedInput& e) {
        return fail(std::move(report), kMalformed, "malformed-input", e.what());
    } catch (const Json::exception& e) {
        return fail(std::move(report), kMalformed, "malformed-input", e.what());
    } catch (const PreconditionError& e) {
        return fail(std::move(report), kPreconditionFailed, "precondition-failed", e.what());
    } catch (const NumericError& e) {
        return fail(std::move(report), kNumericFailed, "numeric-failed", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(std::move(report), kMalformed, "malformed-input", e.what());
    }
}

Outcome run_text(const std::string& text, const Options& opt) {
    Json job;
    try {
        job = Json::parse(text);
    } catch (const Json::parse_error& e) {
        return fail(Json{{"job", nullptr}, {"artifacts", Json::object()}, {"values", Json::array()},
                         {"timing", Json::object()}},
                    kMalformed, "malformed-input", e.what());
    }
    return run(job, opt);
}

std::string emit_table(const Json& report, Format format) {
    if (format == Format::Json) return report.dump(2) + "\n";
    std::ostringstream os;
    os << "name,mid_re,mid_im,rad,exact_zero\n";
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    };
    if (report.contains("values"))
        for (const auto& v : report.at("values"))
            os << quote(v.at("name").get<std::string>()) << ',' << v.at("mid_re").get<std::string>() << ','
               << v.at("mid_im").get<std::string>() << ',' << v.at("rad").get<std::string>() << ','
               << (v.at("exact_zero").get<bool>() ? "true" : "false") << '\n';
    return os.str();
}

int main_with(const Options& opt, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ifstream in(opt.job_path);
    Outcome o;
    if (!in) {
        o = run_text("", opt);
        o.report["error"] = "cannot read job file " + opt.job_path;
    } else {
        std::stringstream buf;
        buf << in.rdbuf();
        o = run_text(buf.str(), opt);
    }
    const std::string table = emit_table(o.report, opt.format);
    if (opt.out) {
        std::ofstream f(*opt.out, std::ios::binary);
        f << table;
    } else {
        out << table;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    err << "status " << o.report.value("status", std::string("?")) << ", wall " << ms.count() << " ms\n";
    if (o.report.contains("error")) err << "error: " << o.report.at("error").get<std::string>() << "\n";
    return o.exit_code;
}

}  // namespace mahlerkit::cli
