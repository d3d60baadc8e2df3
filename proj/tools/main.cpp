#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "twirlkey/error.hpp"
#include "twirlkey/state_io.hpp"

namespace cli = twirlkey::cli;

namespace {

struct CommonArgs {
  std::uint64_t seed = 42;
  std::string out;
  std::size_t n = 0;
  std::string format;
  unsigned workers = 0;
  std::vector<std::string> tolerances;
};

void add_common(CLI::App* cmd, CommonArgs& a, const std::string& default_format) {
  a.format = default_format;
  cmd->add_option("--seed", a.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", a.out, "Output path (stdout if omitted)");
  cmd->add_option("--n", a.n, "Rounds (simulate) or samples per state (twirl, check)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", a.format, "csv or json")->capture_default_str();
  cmd->add_option("--workers", a.workers, "Worker threads, 0 = all cores")->capture_default_str();
  cmd->add_option("--tol", a.tolerances, "Tolerance override name=value (repeatable)");
}

cli::RunConfig to_config(const CommonArgs& a) {
  cli::RunConfig c;
  c.seed = a.seed;
  if (a.n > 0) c.n = a.n;
  c.workers = a.workers;
  for (const auto& t : a.tolerances) cli::apply_tolerance_override(c, t);
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw twirlkey::Error(twirlkey::ErrorCode::kIoFailure, "cannot open " + path);
  out << text;
  if (!out.flush()) throw twirlkey::Error(twirlkey::ErrorCode::kIoFailure, "write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twirling, key-rate and discord toolkit for two-qubit states"};
  app.require_subcommand(1);

  CommonArgs sweep_args;
  std::string family = "pure";
  std::string grid;
  double p = 1.0;
  auto* sweep = app.add_subcommand("sweep", "Tabulate error rates, discord and entanglement over a family");
  add_common(sweep, sweep_args, "csv");
  sweep->add_option("--family", family, "pure, werner or depolarized")->capture_default_str();
  sweep->add_option("--grid", grid, "start:stop:steps or a comma list; pi allowed");
  sweep->add_option("--p", p, "Mixing weight for the depolarized family")->capture_default_str();

  CommonArgs sim_args;
  std::string sim_state;
  std::string b_text;
  std::string bp_text;
  std::string rounds_path;
  auto* simulate = app.add_subcommand("simulate", "Run the key-generation protocol on a state");
  add_common(simulate, sim_args, "json");
  simulate->add_option("--state", sim_state, "State JSON file")->required();
  simulate->add_option("--b", b_text, "Bob's first setting x,y,z (default optimal)");
  simulate->add_option("--bp", bp_text, "Bob's second setting x,y,z (default optimal)");
  simulate->add_option("--rounds", rounds_path, "Write the per-round ledger CSV here");

  CommonArgs twirl_args;
  std::string twirl_state;
  auto* twirl = app.add_subcommand("twirl", "Exact and Monte Carlo U x U* twirl of a state");
  add_common(twirl, twirl_args, "json");
  twirl->add_option("--state", twirl_state, "State JSON file")->required();

  CommonArgs check_args;
  std::string fault = "none";
  auto* check = app.add_subcommand("check", "Run the invariant suite");
  add_common(check, check_args, "json");
  check->add_option("--inject-fault", fault, "none or negate-rho14")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitInvalidInput;
  }

  try {
    std::ostringstream text;
    if (*sweep) {
      const cli::RunConfig config = to_config(sweep_args);
      cli::SweepSpec spec;
      spec.family = cli::parse_family(family);
      spec.p = p;
      if (grid.empty()) grid = spec.family == cli::Family::kWerner ? "0.25:1:50" : "0:pi/2:50";
      spec.grid = cli::parse_grid(grid);
      const auto format = cli::parse_format(sweep_args.format);
      cli::write_sweep(text, spec, cli::compute_sweep(spec, config.workers), format);
      emit(sweep_args.out, text.str());
    } else if (*simulate) {
      const cli::RunConfig config = to_config(sim_args);
      const auto format = cli::parse_format(sim_args.format);
      cli::SimulateRequest request;
      if (!b_text.empty()) request.b = cli::parse_vector3(b_text);
      if (!bp_text.empty()) request.b_prime = cli::parse_vector3(bp_text);
      const auto result = cli::run_simulate(twirlkey::load_state_file(sim_state), config, request);
      if (!rounds_path.empty()) {
        std::ostringstream rounds;
        twirlkey::write_rounds_csv(rounds, result.run);
        emit(rounds_path, rounds.str());
      }
      cli::write_simulate_summary(text, result, format);
      emit(sim_args.out, text.str());
    } else if (*twirl) {
      const cli::RunConfig config = to_config(twirl_args);
      if (cli::parse_format(twirl_args.format) != cli::OutputFormat::kJson) {
        throw twirlkey::Error(twirlkey::ErrorCode::kInvalidSpec, "twirl reports are JSON only");
      }
      cli::write_twirl_report(text, twirlkey::load_state_file(twirl_state), config);
      emit(twirl_args.out, text.str());
    } else if (*check) {
      const cli::RunConfig config = to_config(check_args);
      const auto format = cli::parse_format(check_args.format);
      const cli::Fault f = cli::parse_fault(fault);
      const auto results = cli::run_property_suite(config, f);
      cli::write_check_report(text, results, config, f, format);
      emit(check_args.out, text.str());
      return cli::all_pass(results) ? cli::kExitOk : cli::kExitPropertyFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "twirlkey: " << e.what() << '\n';
    return cli::kExitInvalidInput;
  }
  return cli::kExitOk;
}
