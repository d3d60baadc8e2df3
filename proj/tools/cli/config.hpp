#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twirlkey/qubit_algebra.hpp"

namespace twirlkey::cli {

enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 1, kExitPropertyFailure = 2 };

enum class OutputFormat { kCsv, kJson };

enum class Family { kPure, kWerner, kDepolarized };

std::string_view to_string(Family f);

// Named tolerances used by the property suite; `--tol name=value` overrides.
std::map<std::string, double> default_tolerances();

struct RunConfig {
  std::uint64_t seed = 42;
  std::optional<std::size_t> n;  // rounds or samples, command dependent
  unsigned workers = 0;           // 0 = hardware concurrency
  std::map<std::string, double> tolerances = default_tolerances();

  double tol(const std::string& name) const;
};

struct SweepSpec {
  Family family = Family::kPure;
  std::vector<double> grid;  // gamma for pure / depolarized, F for werner
  double p = 1.0;            // depolarized only
};

// Arithmetic over numbers and `pi` with * and /, e.g. "pi/3", "2*pi/3", "0.25".
// Throws kInvalidSpec.
double parse_scalar(std::string_view text);

// "start:stop:steps" (inclusive endpoints) or a comma separated list.
std::vector<double> parse_grid(std::string_view text);

// "x,y,z"
Vector3 parse_vector3(std::string_view text);

Family parse_family(std::string_view text);

OutputFormat parse_format(std::string_view text);

// Applies "name=value" to config.tolerances; unknown names throw kInvalidSpec.
void apply_tolerance_override(RunConfig& config, std::string_view assignment);

// Range checks on the grid and p; throws kInvalidSpec.
void validate(const SweepSpec& spec);

}  // namespace twirlkey::cli
