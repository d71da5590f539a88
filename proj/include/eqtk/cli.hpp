#pragma once

#include "eqtk/io.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eqtk::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kSchemaError = 2, kNumericalError = 3, kInvariantViolation = 4 };

struct RunConfig {
    std::string command;  // "group sub", e.g. "count sp"
    io::Json params = io::Json::object();
    std::optional<std::uint64_t> seed;
    std::string out;       // empty: write to the stream passed to run()
    std::string format = "json";
    unsigned threads = 1;  // affects speed only, never the output
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct CommandOutput {
    io::Json result;
    Table table;
};

/// All "group sub" command names.
std::vector<std::string> command_names();

/// Runs one command and returns its output; params gain any defaults that were applied.
/// Throws eqtk::Error subclasses on failure.
CommandOutput execute(RunConfig& config);

/// The document written for a finished run in the configured format.
std::string render(const RunConfig& config, const CommandOutput& output);

/// Executes, writes the rendered output, reports errors on `err`, and returns the exit code.
int run(RunConfig config, std::ostream& out, std::ostream& err);

/// Command-line entry point.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace eqtk::cli
