#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "mahlerkit/json_io.hpp"

namespace mahlerkit::cli {

enum class Format { Json, Csv };

struct Options {
    std::string job_path;
    std::optional<long> prec;
    std::optional<std::uint64_t> seed;
    Format format = Format::Json;
    std::optional<std::string> out;
};

enum ExitCode : int { kOk = 0, kPreconditionFailed = 1, kNumericFailed = 2, kMalformed = 3 };

struct Outcome {
    int exit_code = kOk;
    /// {"job", "status", "artifacts", "values", "timing", "error"?}
    Json report;
};

inline constexpr long kDefaultPrec = 128;
inline constexpr std::uint64_t kDefaultSeed = 1;

/// Runs one job. Never throws: failures are reported through the status
/// field and the exit code. Overrides in `opt` take precedence over the job.
Outcome run(const Json& job, const Options& opt = {});

/// Parses `text` as a job (malformed JSON gives exit code 3) and runs it.
Outcome run_text(const std::string& text, const Options& opt = {});

/// JSON: the whole report. CSV: the value table with columns
/// name,mid_re,mid_im,rad,exact_zero (header only when there are no values).
std::string emit_table(const Json& report, Format format);

/// Reads the job file, runs it and writes the table to --out or `out`.
/// Wall-clock time goes to `err`.
int main_with(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace mahlerkit::cli
