#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "twirlkey/protocol.hpp"
#include "twirlkey/qubit_algebra.hpp"

namespace twirlkey::cli {

// ---- sweep ----------------------------------------------------------------

// *_pure columns describe the untwirled input state of the family, *_twirled
// its exact twirl.
struct SweepRow {
  double param = 0.0;
  double delta_pure = 0.0;
  double delta_twirled = 0.0;
  double ratio = 0.0;  // NaN when delta_pure vanishes
  bool ratio_defined = false;
  double dg_pure = 0.0;
  double dg_twirled = 0.0;
  double concurrence_pure = 0.0;
  double concurrence_twirled = 0.0;
  double eof_pure = 0.0;
  double eof_twirled = 0.0;
};

// delta_pure at or below this is treated as zero and the ratio is undefined.
inline constexpr double kRatioFloor = 1e-14;

inline constexpr std::string_view kSweepHeader =
    "param,delta_pure,delta_twirled,ratio,ratio_defined,dg_pure,dg_twirled,"
    "concurrence_pure,concurrence_twirled,eof_pure,eof_twirled";

// Rows in grid order; rows are computed in parallel.
std::vector<SweepRow> compute_sweep(const SweepSpec& spec, unsigned workers);

void write_sweep(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows,
                 OutputFormat format);

// ---- simulate -------------------------------------------------------------

struct SimulateRequest {
  std::optional<Vector3> b;  // defaults to the optimal settings
  std::optional<Vector3> b_prime;
};

struct SimulateResult {
  ProtocolRun run;
  double delta_analytic = 0.0;
};

inline constexpr std::size_t kDefaultRounds = 1'000'000;

SimulateResult run_simulate(const TwoQubitState& rho, const RunConfig& config,
                            const SimulateRequest& request);

// Keys: n_rounds, m_sifted, delta_x_hat, delta_y_hat, delta_hat, delta_analytic.
void write_simulate_summary(std::ostream& out, const SimulateResult& result, OutputFormat format);

// ---- twirl ----------------------------------------------------------------

inline constexpr std::size_t kDefaultTwirlSamples = 100'000;

void write_twirl_report(std::ostream& out, const TwoQubitState& rho, const RunConfig& config);

// ---- check ----------------------------------------------------------------

enum class PropertyStatus { kPass, kFail, kSkipped };

std::string_view to_string(PropertyStatus s);

struct PropertyResult {
  std::string name;
  std::size_t sample_size = 0;
  double worst_margin = 0.0;  // tolerance minus worst observed error; < 0 fails
  PropertyStatus status = PropertyStatus::kPass;
};

enum class Fault { kNone, kNegateRho14 };

Fault parse_fault(std::string_view text);

// Monte Carlo twirl property is skipped below this many samples per state.
inline constexpr std::size_t kMinMcSamples = 10'000;

std::vector<PropertyResult> run_property_suite(const RunConfig& config, Fault fault);

bool all_pass(const std::vector<PropertyResult>& results);

void write_check_report(std::ostream& out, const std::vector<PropertyResult>& results,
                        const RunConfig& config, Fault fault, OutputFormat format);

}  // namespace twirlkey::cli
