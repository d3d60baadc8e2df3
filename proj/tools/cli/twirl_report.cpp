#include <ostream>

#include <json.hpp>

#include "commands.hpp"
#include "twirlkey/measures.hpp"
#include "twirlkey/states.hpp"
#include "twirlkey/twirl.hpp"

namespace twirlkey::cli {

void write_twirl_report(std::ostream& out, const TwoQubitState& rho, const RunConfig& config) {
  const TwoQubitState analytic = twirl_analytic(rho);
  const std::size_t n = config.n.value_or(kDefaultTwirlSamples);
  const TwirlReport mc = twirl_monte_carlo(rho, n, config.seed, config.workers);
  const TwirlComparison cmp = twirl_discord_comparison(rho);

  auto vec = [](const Vector3& v) { return nlohmann::ordered_json{v(0), v(1), v(2)}; };
  nlohmann::ordered_json pauli;
  pauli["x"] = vec(analytic.bloch_a());
  pauli["y"] = vec(analytic.bloch_b());
  pauli["T"] = nlohmann::ordered_json::array();
  for (int i = 0; i < 3; ++i) pauli["T"].push_back(vec(analytic.correlations().row(i)));

  nlohmann::ordered_json doc;
  doc["F"] = fidelity_phi_plus(rho).value();
  doc["analytic"] = pauli;
  doc["n_samples"] = mc.n_samples;
  doc["seed"] = config.seed;
  doc["trace_distance_mc"] = mc.trace_distance_to_analytic;
  doc["trace_distance_input"] = trace_distance(rho, analytic);
  doc["d_before"] = cmp.d_before;
  doc["d_after"] = cmp.d_after;
  doc["c_before"] = cmp.c_before;
  doc["c_after"] = cmp.c_after;
  out << doc.dump(2) << '\n';
}

}  // namespace twirlkey::cli
