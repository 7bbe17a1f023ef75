#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "relcone/io.hpp"

namespace relcone::cli {

enum class Command { Cone, Join, Oracle, Normalize };
enum class Format { Json, Text };

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInput = 2,
    kPrecision = 3,
    kFieldExtension = 4,
    kValidationFailed = 5,
};

struct OracleParams {
    double radius = 1e-3;
    std::size_t samples = 2000;
    std::uint64_t seed = 7;
    double tol = 1e-2;
};

struct JobSpec {
    Command command = Command::Cone;
    std::string input_path;   // "-" reads stdin
    std::string output_path;  // empty writes stdout
    std::optional<long> trunc;
    std::optional<long> max_conductor;
    OracleParams oracle;
    bool validate = false;
    Format format = Format::Json;
};

struct RunResult {
    int exit_code = kOk;
    std::string output;  // rendered document, empty on failure
    std::string error;   // diagnostic for stderr
};

std::optional<Command> parse_command(const std::string& name);

/// Runs a job on an already parsed input document.
RunResult run_document(const JobSpec& spec, const io::Json& input);

/// Reads spec.input_path and runs the job; never throws.
RunResult run(const JobSpec& spec);

std::string render_text(Command command, const io::Json& doc);

}  // namespace relcone::cli
