#pragma once

// Command-line front end. Each verb is reachable through run() so tests can
// drive the tool without spawning a process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmin/measures.hpp"
#include "qmin/states.hpp"

namespace qmin::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kFailure = 3 };

/// Bad command line or state description (exit 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StateSpec {
    std::string family = "bell";  ///< or "file:<path>"
    std::size_t m = 2;
    std::size_t n = 0;  ///< 0: family default
    std::optional<double> x;
    std::vector<double> c;        ///< bell-diagonal coefficients
    std::vector<double> p;        ///< memes weights, or classical table row-major
    std::vector<double> schmidt;  ///< pure-state coefficients
    std::size_t rank = 0;         ///< random: 0 means full rank
    std::optional<std::uint64_t> state_seed;
};

/// Builds the described state. Throws UsageError for unknown families or
/// missing parameters; validation errors propagate unchanged.
[[nodiscard]] DensityMatrix build_state(const StateSpec& spec, std::uint64_t seed);

/// Family name plus the parameters that were used.
[[nodiscard]] nlohmann::json describe(const StateSpec& spec);

/// `points` evenly spaced values on [from, to]; each pinned value replaces
/// the grid point nearest to it, so a sweep hits it exactly.
[[nodiscard]] std::vector<double> sweep_grid(double from, double to, std::size_t points,
                                             std::span<const double> pins = {});

[[nodiscard]] nlohmann::json measure_to_json(const MeasureResult& r);

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qmin::cli
