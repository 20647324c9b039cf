#pragma once
// Command-line front end: experiment dispatch, output and exit codes.
//
// Exit status: 0 when every invariant flag passes, 2 for configuration errors,
// 3 for numerical failures (a raised phqm::Error or a failing flag).

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "phqm/report.hpp"

namespace phqm::cli {

enum class Command { spinflip, equivalence, brachistochrone, composite, verify };
enum class Format { json, csv };

using ParamValue = std::variant<double, std::int64_t, bool, std::string>;

struct RunConfig {
    Command command = Command::verify;
    std::map<std::string, ParamValue> params;  // only keys known to the command
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
    std::string output_path = "-";  // "-" writes to the supplied stream
    Format format = Format::json;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view command_name(Command c);

/// Runs the experiment and returns its report. Throws ConfigError for unknown
/// keys, wrong value types or invalid values; numerical failures propagate as
/// phqm::Error.
ExperimentReport build_report(const RunConfig& config);

/// build_report + serialization to config.output_path (or out for "-").
/// Diagnostics go to err. Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phqm::cli
