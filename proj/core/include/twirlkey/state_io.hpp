#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "twirlkey/qubit_algebra.hpp"

namespace twirlkey {

// State files hold exactly one of three representations:
//
//   {"matrix": [[{"re": .., "im": ..}, x4], x4]}
//   {"pauli": {"x": [3], "y": [3], "T": [[3], [3], [3]]}}
//   {"family": "pure" | "werner" | "depolarized", "gamma": .., "F": .., "p": ..}
//
// "pure" needs gamma, "werner" needs F, "depolarized" needs gamma and p.
// Parse failures throw kSchemaViolation; invalid densities propagate the
// validate_density error.
TwoQubitState parse_state_json(std::string_view text);

// Throws kFileNotFound / kIoFailure before parsing.
TwoQubitState load_state_file(const std::filesystem::path& path);

// Matrix representation of `rho`; parse_state_json inverts it.
std::string state_to_json(const TwoQubitState& rho);

}  // namespace twirlkey
