#include <doctest.h>

#include "mahlerkit/cli.hpp"

using namespace mahlerkit;
using namespace mahlerkit::cli;

namespace {

constexpr const char* kFib = R"({"coeffs": [1, 1], "initial": [1, 2]})";

Json job(const std::string& command, const std::string& payload) {
    return {{"command", command}, {"payload", Json::parse(payload)}};
}

std::string with_fib(const std::string& rest) { return std::string(R"({"recurrence": )") + kFib + rest + "}"; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check-recurrence") {
    const auto ok = run(job("check-recurrence", with_fib("")));
    CHECK(ok.exit_code == kOk);
    CHECK(ok.report["status"] == "ok");
    CHECK(ok.report["artifacts"]["nd"]["nd_ok"] == true);
    CHECK(ok.report["artifacts"]["nd"]["minimal_order"] == "2");

    const auto bad = run(job("check-recurrence", R"({"recurrence": {"coeffs": [0, 1], "initial": [1, 2]}})"));
    CHECK(bad.exit_code == kPreconditionFailed);
    CHECK(bad.report["status"] == "precondition-failed");
    CHECK(bad.report["artifacts"]["nd"]["phi_at_one"] == "0");

    const auto geo = run(job("check-recurrence", R"({"recurrence": {"coeffs": [2], "initial": [1]}})"));
    CHECK(geo.exit_code == kPreconditionFailed);
    CHECK(geo.report["artifacts"]["nd"]["geometric"] == true);
}

TEST_CASE("eval reports poles by coordinate") {
    const auto r = run(job("eval", with_fib(R"(, "a": ["1/2", "1/3"], "beta": [0, 9])")));
    CHECK(r.exit_code == kPreconditionFailed);
    CHECK(r.report["error"].get<std::string>().find("beta_2") != std::string::npos);
}

TEST_CASE("malformed input") {
    CHECK(run_text("{\"command\":").exit_code == kMalformed);
    CHECK(run(Json{{"command", "nope"}}).exit_code == kMalformed);
    CHECK(run(job("eval", R"({"a": ["1/2"]})")).exit_code == kMalformed);
    CHECK(run(job("eval", with_fib(R"(, "a": ["x"], "beta": [0])"))).exit_code == kMalformed);
}

TEST_CASE("tables are deterministic and consistent") {
    Json j = job("eval", with_fib(R"(, "a": ["1/2"], "beta": ["1/3"], "orders": [[0], [1]])"));
    j["precision_bits"] = 64;
    const auto a = run(j), b = run(j);
    CHECK(a.exit_code == kOk);
    CHECK(emit_table(a.report, Format::Json) == emit_table(b.report, Format::Json));
    CHECK(Json::parse(emit_table(a.report, Format::Json)) == a.report);

    const std::string csv = emit_table(a.report, Format::Csv);
    CHECK(a.report["values"].size() == 6);
    for (const auto& v : a.report["values"]) CHECK(csv.find(v["mid_re"].get<std::string>()) != std::string::npos);
    CHECK(emit_table(Json{{"values", Json::array()}}, Format::Csv) == "name,mid_re,mid_im,rad,exact_zero\n");
}

TEST_CASE("ball rendering") {
    const Ball b(Rational(1, 2), 64);
    CHECK(render(b, decimal_digits(64)).mid_re == "0.5000000000000000000");
    CHECK(to_json(b, decimal_digits(64))["exact_zero"] == false);
}

TEST_CASE("seed and precision overrides") {
    Json j = job("lemma4x", with_fib(R"(, "instances": 5)"));
    j["seed"] = 3;
    Options opt;
    opt.seed = 17;
    opt.prec = 96;
    const auto r = run(j, opt);
    CHECK(r.exit_code == kOk);
    CHECK(r.report["job"]["seed"] == 17);
    CHECK(r.report["job"]["precision_bits"] == 96);
    CHECK(run(j, opt).report == r.report);
}

TEST_CASE("other commands") {
    CHECK(run(job("rank-check", R"({"betas": [2, 3], "M": 1, "s": 2})")).report["artifacts"]["rank"] == 36);

    const auto f = run(job("falsify", with_fib(R"(, "s": 2, "alpha": 2, "D": 4, "R": {"num": [[[0, 0], "5"]]})")));
    CHECK(f.report["artifacts"]["solvable"] == true);
    CHECK(f.report["artifacts"]["solution"] == Json::parse(R"([[[0, 0, 0, 0], "-5"]])"));

    Json v = job("verify-funceq",
                 with_fib(R"(, "a": ["1/2", "1/3"], "betas": [2], "j": [1, 0], "m": [0, 1], "sample_count": 2)"));
    v["precision_bits"] = 128;
    CHECK(run(v).exit_code == kOk);

    Json s = job("verify-relations", with_fib(R"(, "a": ["1/2", "1/3"], "beta": [4, 0], "M": 1)"));
    s["precision_bits"] = 256;
    const auto rel = run(s);
    CHECK(rel.exit_code == kOk);
    CHECK(rel.report["artifacts"]["shift"] == 2);
}

}
