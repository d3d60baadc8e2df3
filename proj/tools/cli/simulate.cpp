#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "commands.hpp"

namespace twirlkey::cli {
namespace {

nlohmann::ordered_json rate(double v) {
  return std::isnan(v) ? nlohmann::ordered_json() : nlohmann::ordered_json(v);
}

}  // namespace

SimulateResult run_simulate(const TwoQubitState& rho, const RunConfig& config,
                            const SimulateRequest& request) {
  const MinErrorRate opt = min_error_rate(rho);
  const MeasurementSetting b = request.b ? MeasurementSetting::along(*request.b) : opt.b;
  const MeasurementSetting bp =
      request.b_prime ? MeasurementSetting::along(*request.b_prime) : opt.b_prime;
  const std::size_t n = config.n.value_or(kDefaultRounds);
  return SimulateResult{simulate_protocol(rho, n, config.seed, b, bp), error_rate(rho, b, bp)};
}

void write_simulate_summary(std::ostream& out, const SimulateResult& result, OutputFormat format) {
  const ProtocolRun& run = result.run;
  if (format == OutputFormat::kCsv) {
    out << "n_rounds,m_sifted,delta_x_hat,delta_y_hat,delta_hat,delta_analytic\n"
        << fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g}\n", run.n_rounds,
                       run.sifted_indices.size(), run.empirical_delta_x, run.empirical_delta_y,
                       run.empirical_delta, result.delta_analytic);
    return;
  }
  nlohmann::ordered_json doc;
  doc["n_rounds"] = run.n_rounds;
  doc["m_sifted"] = run.sifted_indices.size();
  doc["delta_x_hat"] = rate(run.empirical_delta_x);
  doc["delta_y_hat"] = rate(run.empirical_delta_y);
  doc["delta_hat"] = run.empirical_delta;
  doc["delta_analytic"] = result.delta_analytic;
  out << doc.dump(2) << '\n';
}

}  // namespace twirlkey::cli
