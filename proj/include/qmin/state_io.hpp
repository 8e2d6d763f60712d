#pragma once

// JSON state files: {"dims": [m, n], "matrix": [[[re, im], ...], ...]},
// rows and columns in the composite index i*n + j.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "qmin/states.hpp"

namespace qmin {

/// Throws ValidationError(Malformed) on schema problems and the usual
/// density validation errors on the matrix itself.
[[nodiscard]] DensityMatrix state_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json state_to_json(const DensityMatrix& rho);

[[nodiscard]] DensityMatrix parse_state(const std::string& text);
[[nodiscard]] DensityMatrix load_state(const std::filesystem::path& path);
void save_state(const DensityMatrix& rho, const std::filesystem::path& path);

} // namespace qmin
