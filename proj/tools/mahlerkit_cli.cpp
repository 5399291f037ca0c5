#include <iostream>

#include <CLI11.hpp>

#include "mahlerkit/cli.hpp"

int main(int argc, char** argv) {
    using namespace mahlerkit::cli;
    CLI::App app{"mahlerkit: certified evaluation and verification jobs"};
    Options opt;
    long prec = 0;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    app.add_option("--job", opt.job_path, "job file (JSON)")->required();
    auto* prec_opt = app.add_option("--prec", prec, "precision override in bits")->check(CLI::Range(16L, 1L << 24));
    auto* seed_opt = app.add_option("--seed", seed, "seed override for randomized checks");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    auto* out_opt = app.add_option("--out", out, "write the report here instead of stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kMalformed;
    }
    if (*prec_opt) opt.prec = prec;
    if (*seed_opt) opt.seed = seed;
    if (*out_opt) opt.out = out;
    opt.format = format == "csv" ? Format::Csv : Format::Json;
    return main_with(opt, std::cout, std::cerr);
}
