#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "commands.hpp"
#include "twirlkey/measures.hpp"
#include "twirlkey/parallel.hpp"
#include "twirlkey/states.hpp"
#include "twirlkey/twirl.hpp"

namespace twirlkey::cli {
namespace {

TwoQubitState family_state(const SweepSpec& spec, double v) {
  switch (spec.family) {
    case Family::kPure: return pure_state(v);
    case Family::kWerner: return werner(WernerFidelity(v));
    case Family::kDepolarized: return depolarized_pure(v, spec.p);
  }
  return maximally_mixed();
}

SweepRow compute_row(const SweepSpec& spec, double v) {
  const TwoQubitState rho = family_state(spec, v);
  const TwoQubitState tw = twirl_analytic(rho);
  SweepRow r;
  r.param = v;
  r.delta_pure = min_error_rate(rho).delta;
  r.delta_twirled = min_error_rate(tw).delta;
  r.ratio_defined = r.delta_pure > kRatioFloor;
  r.ratio = r.ratio_defined ? r.delta_twirled / r.delta_pure
                            : std::numeric_limits<double>::quiet_NaN();
  r.dg_pure = discord_grid_oracle(rho).value;
  r.dg_twirled = discord_grid_oracle(tw).value;
  r.concurrence_pure = concurrence(rho);
  r.concurrence_twirled = concurrence(tw);
  r.eof_pure = entanglement_of_formation(rho);
  r.eof_twirled = entanglement_of_formation(tw);
  return r;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

std::vector<SweepRow> compute_sweep(const SweepSpec& spec, unsigned workers) {
  validate(spec);
  std::vector<SweepRow> rows(spec.grid.size());
  detail::parallel_for(rows.size(), workers,
                       [&](std::size_t i) { rows[i] = compute_row(spec, spec.grid[i]); });
  return rows;
}

void write_sweep(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows,
                 OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << kSweepHeader << '\n';
    for (const SweepRow& r : rows) {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", num(r.param), num(r.delta_pure),
                         num(r.delta_twirled), num(r.ratio), r.ratio_defined ? 1 : 0,
                         num(r.dg_pure), num(r.dg_twirled), num(r.concurrence_pure),
                         num(r.concurrence_twirled), num(r.eof_pure), num(r.eof_twirled));
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["family"] = to_string(spec.family);
  if (spec.family == Family::kDepolarized) doc["p"] = spec.p;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) {
    nlohmann::ordered_json row;
    row["param"] = r.param;
    row["delta_pure"] = r.delta_pure;
    row["delta_twirled"] = r.delta_twirled;
    row["ratio"] = r.ratio_defined ? nlohmann::ordered_json(r.ratio) : nlohmann::ordered_json();
    row["ratio_defined"] = r.ratio_defined;
    row["dg_pure"] = r.dg_pure;
    row["dg_twirled"] = r.dg_twirled;
    row["concurrence_pure"] = r.concurrence_pure;
    row["concurrence_twirled"] = r.concurrence_twirled;
    row["eof_pure"] = r.eof_pure;
    row["eof_twirled"] = r.eof_twirled;
    doc["rows"].push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace twirlkey::cli
