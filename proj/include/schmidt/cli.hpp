#pragma once

#include "schmidt/core.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace schmidt::cli {

inline constexpr const char* version = "0.1.0";

enum class Command { sample, theory, eta, compare, laguerre, fixtures };
enum class Format { csv, svg, both };

// Invalid flags or flag combinations; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct QubitCut {
    int n;
    int r;
};

struct RunConfig {
    Command command = Command::theory;
    BipartiteDims dims{1, 1};
    std::optional<QubitCut> qubits;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    std::size_t grid = 512;
    std::optional<std::string> out;
    Format format = Format::csv;
    bool log_y = false;
    std::optional<double> retained;
    bool rescaled = false;  // eta: add the y = x sqrt(w) column
    unsigned workers = 0;
    bool progress = false;
};

// N = 2^(n/2 - r), K = 2^(n/2 + r); n must be even and 0 <= r <= n/2.
BipartiteDims dims_from_qubits(int n, int r);

struct CommandOutput {
    std::string csv;
    std::string svg;      // empty unless the format asks for it
    std::string report;   // human-readable lines for stderr
    int exit_code = 0;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

CommandOutput cmd_sample(const RunConfig& config);
CommandOutput cmd_theory(const RunConfig& config);
CommandOutput cmd_eta(const RunConfig& config);
CommandOutput cmd_compare(const RunConfig& config);
CommandOutput cmd_laguerre(const RunConfig& config);
CommandOutput cmd_fixtures(const RunConfig& config);

CommandOutput dispatch(const RunConfig& config);

// Runs the command and writes its files (or CSV to `out` when no path is
// given). Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv with the subcommand layout of the `schmidt` tool and runs it.
int main_entry(int argc, char** argv);

}  // namespace schmidt::cli
