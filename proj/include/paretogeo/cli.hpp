#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace paretogeo::cli {

enum class OutputFormat { json, csv };

struct RunConfig {
    std::uint64_t seed = 42;
    std::optional<std::string> input_path;
    OutputFormat output_format = OutputFormat::json;
    double tolerance = 1e-10;
    int precision = 6;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line (without the program name). Results go to `out`,
/// diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paretogeo::cli
