#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include <fmt/format.h>
#include <json.hpp>

#include "commands.hpp"
#include "twirlkey/error.hpp"
#include "twirlkey/measures.hpp"
#include "twirlkey/sphere_search.hpp"
#include "twirlkey/states.hpp"
#include "twirlkey/twirl.hpp"

namespace twirlkey::cli {
namespace {

constexpr double kPi = std::numbers::pi;

using DiscordFn = std::function<double(const TwoQubitState&)>;

// Discord evaluators consulted by the suite; the fault swaps both.
struct DiscordProbe {
  DiscordFn grid;
  DiscordFn fast;
};

// Grid search against a corrupted CQ state whose rho14 coherence is negated
// instead of removed.
double negated_rho14_discord(const TwoQubitState& rho) {
  const Matrix4& m = rho.rho();
  const Matrix2 id = Matrix2::Identity();
  auto f = [&](const Vector3& n) {
    Matrix2 ns = Matrix2::Zero();
    for (int i = 0; i < 3; ++i) ns += n(i) * pauli(i + 1);
    const Matrix4 plus = tensor(0.5 * (id + ns), id);
    const Matrix4 minus = tensor(0.5 * (id - ns), id);
    Matrix4 chi = plus * m * plus + minus * m * minus;
    chi(0, 3) = -m(0, 3);
    chi(3, 0) = -m(3, 0);
    return hs_norm_sq(m - chi);
  };
  return minimize_on_hemisphere(f, kDefaultCoarseSteps).value;
}

DiscordProbe make_probe(Fault fault) {
  if (fault == Fault::kNegateRho14) return {negated_rho14_discord, negated_rho14_discord};
  return {[](const TwoQubitState& r) { return discord_grid_oracle(r).value; },
          [](const TwoQubitState& r) { return discord_eigen_closed_form(r).value; }};
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream * 1'000'003ull + i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Vector3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Vector3(g(rng), g(rng), g(rng)).normalized();
}

Matrix2 random_su2(std::mt19937_64& rng) { return haar_su2(rng).matrix(); }

double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

// Tracks the smallest tolerance - error over a property's samples.
struct Margin {
  double worst = std::numeric_limits<double>::infinity();
  std::size_t n = 0;
  void add(double margin) {
    worst = std::min(worst, margin);
    ++n;
  }
  void add_error(double tol, double err) { add(std::isnan(err) ? -1.0 : tol - err); }
  PropertyResult result(std::string name) const {
    return {std::move(name), n, worst, worst >= 0.0 ? PropertyStatus::kPass : PropertyStatus::kFail};
  }
};

class Suite {
 public:
  Suite(const RunConfig& config, Fault fault) : c_(config), probe_(make_probe(fault)) {}

  std::vector<PropertyResult> run() {
    std::vector<PropertyResult> out;
    out.push_back(pauli_round_trip());
    out.push_back(purity_identity());
    out.push_back(eigenvalue_range());
    out.push_back(fidelity_grid());
    out.push_back(cross_constructor());
    out.push_back(twirl_idempotence());
    out.push_back(twirl_fidelity_preservation());
    out.push_back(twirl_linearity());
    out.push_back(twirl_monte_carlo_consistency());
    out.push_back(probability_closure());
    out.push_back(correlation_identity());
    out.push_back(optimal_partner_maximality());
    out.push_back(row_norm_equivalence());
    out.push_back(simulator_gate());
    out.push_back(discord_oracle_agreement());
    out.push_back(discord_range());
    out.push_back(concurrence_local_unitary());
    out.push_back(discord_bound_property());
    out.push_back(error_rate_from_discord());
    out.push_back(twirl_raises_discord());
    return out;
  }

 private:
  TwoQubitState state(std::uint64_t stream, std::uint64_t i) const {
    return random_state(derive(c_.seed, stream, i));
  }
  std::mt19937_64 rng(std::uint64_t stream) const { return std::mt19937_64(derive(c_.seed, stream, 0)); }

  PropertyResult pauli_round_trip() {
    Margin m;
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState rho = state(1, i);
      m.add_error(c_.tol("algebra"), max_abs(pauli_compose(pauli_decompose(rho.rho())) - rho.rho()));
    }
    return m.result("pauli_round_trip");
  }

  PropertyResult purity_identity() {
    Margin m;
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState rho = state(2, i);
      const double pauli_form = 0.25 * (1 + rho.bloch_a().squaredNorm() +
                                        rho.bloch_b().squaredNorm() + rho.correlations().squaredNorm());
      m.add_error(c_.tol("algebra"), std::abs(hs_norm_sq(rho.rho()) - pauli_form));
    }
    return m.result("purity_identity");
  }

  PropertyResult eigenvalue_range() {
    Margin m;
    const double floor = c_.tol("eigen_floor");
    for (int i = 0; i < 100; ++i) {
      const Vector4 ev = hermitian_eigenvalues(state(3, i).rho());
      m.add(std::min(ev.minCoeff() + floor, 1.0 + floor - ev.maxCoeff()));
      m.add_error(c_.tol("algebra"), std::abs(ev.sum() - 1.0));
    }
    return m.result("eigenvalue_range");
  }

  PropertyResult fidelity_grid() {
    Margin m;
    for (int i = 0; i < 50; ++i) {
      const double g = i * (kPi / 2) / 49;
      m.add_error(c_.tol("algebra"),
                  std::abs(fidelity_phi_plus(pure_state(g)).value() - std::pow(std::cos(g / 2), 2)));
    }
    return m.result("fidelity_grid");
  }

  PropertyResult cross_constructor() {
    Margin m;
    for (int i = 0; i <= 20; ++i) {
      const double f = i / 20.0;
      const TwoQubitState w = werner(WernerFidelity(f));
      m.add_error(c_.tol("algebra"), max_abs(x_state(*x_params_of(w)).rho() - w.rho()));
      const double g = i * (kPi / 2) / 20;
      XStateParams p;
      p.rho11 = (1 + std::sin(g)) / 2;
      p.rho44 = (1 - std::sin(g)) / 2;
      p.rho14 = std::cos(g) / 2;
      m.add_error(c_.tol("algebra"), max_abs(x_state(p).rho() - pure_state(g).rho()));
    }
    return m.result("cross_constructor");
  }

  PropertyResult twirl_idempotence() {
    Margin m;
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState t = twirl_analytic(state(4, i));
      m.add_error(c_.tol("twirl"), max_abs(twirl_analytic(t).rho() - t.rho()));
    }
    return m.result("twirl_idempotence");
  }

  PropertyResult twirl_fidelity_preservation() {
    Margin m;
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState rho = state(5, i);
      m.add_error(c_.tol("twirl"), std::abs(fidelity_phi_plus(twirl_analytic(rho)).value() -
                                            fidelity_phi_plus(rho).value()));
    }
    return m.result("twirl_fidelity_preservation");
  }

  PropertyResult twirl_linearity() {
    Margin m;
    auto r = rng(6);
    std::uniform_real_distribution<double> u;
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState a = state(6, 2 * i);
      const TwoQubitState b = state(6, 2 * i + 1);
      const double p = u(r);
      const Matrix4 lhs = twirl_analytic(validate_density(p * a.rho() + (1 - p) * b.rho())).rho();
      const Matrix4 rhs = p * twirl_analytic(a).rho() + (1 - p) * twirl_analytic(b).rho();
      m.add_error(c_.tol("twirl"), max_abs(lhs - rhs));
    }
    return m.result("twirl_linearity");
  }

  PropertyResult twirl_monte_carlo_consistency() {
    const std::size_t n = c_.n.value_or(kDefaultTwirlSamples);
    if (n < kMinMcSamples) {
      return {"twirl_monte_carlo", 0, std::numeric_limits<double>::quiet_NaN(),
              PropertyStatus::kSkipped};
    }
    Margin m;
    for (int i = 0; i < 100; ++i) {
      const TwirlReport r = twirl_monte_carlo(state(7, i), n, derive(c_.seed, 7, 1000 + i), c_.workers);
      m.add_error(c_.tol("mc_trace"), r.trace_distance_to_analytic);
    }
    return m.result("twirl_monte_carlo");
  }

  PropertyResult probability_closure() {
    Margin m;
    auto r = rng(8);
    for (int i = 0; i < 100; ++i) {
      const OutcomeDistribution w =
          outcome_probs(state(8, i), MeasurementSetting(random_unit(r)), MeasurementSetting(random_unit(r)));
      m.add_error(c_.tol("probability"), std::abs(w.pp + w.pm + w.mp + w.mm - 1.0));
      for (double p : {w.pp, w.pm, w.mp, w.mm}) m.add(std::min(p, 1.0 - p));
    }
    return m.result("probability_closure");
  }

  PropertyResult correlation_identity() {
    Margin m;
    auto r = rng(9);
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState rho = state(9, i);
      const MeasurementSetting a(random_unit(r));
      const MeasurementSetting b(random_unit(r));
      m.add_error(c_.tol("probability"),
                  std::abs(outcome_probs(rho, a, b).correlation() - correlation(rho, a, b)));
    }
    return m.result("correlation_identity");
  }

  PropertyResult optimal_partner_maximality() {
    Margin m;
    auto r = rng(10);
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState rho = state(10, i);
      for (int j = 0; j < 20; ++j) {
        const MeasurementSetting a(random_unit(r));
        const double best = correlation(rho, a, optimal_partner(rho, a).setting);
        double challenger = -1.0;
        for (int k = 0; k < 100; ++k) {
          challenger = std::max(challenger, correlation(rho, a, MeasurementSetting(random_unit(r))));
        }
        m.add(best - challenger + c_.tol("optimality"));
      }
    }
    return m.result("optimal_partner_maximality");
  }

  PropertyResult row_norm_equivalence() {
    Margin m;
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState rho = state(11, i);
      m.add_error(c_.tol("optimality"), std::abs(optimal_partner(rho, MeasurementSetting::x()).value -
                                                 rho.correlations().row(0).norm()));
    }
    return m.result("row_norm_equivalence");
  }

  PropertyResult simulator_gate() {
    Margin m;
    const TwoQubitState states[] = {pure_state(kPi / 3), werner(WernerFidelity(0.75))};
    constexpr int kSeeds = 100;
    std::size_t total = 0;
    for (std::size_t s = 0; s < 2; ++s) {
      const MinErrorRate opt = min_error_rate(states[s]);
      const double delta = error_rate(states[s], opt.b, opt.b_prime);
      int failures = 0;
      for (int k = 0; k < kSeeds; ++k) {
        const ProtocolRun run =
            simulate_protocol(states[s], 20'000, derive(c_.seed, 12 + s, k), opt.b, opt.b_prime);
        const double m_sifted = static_cast<double>(run.sifted_indices.size());
        if (std::abs(run.empirical_delta - delta) > 4 * std::sqrt(delta * (1 - delta) / m_sifted)) {
          ++failures;
        }
      }
      m.add(c_.tol("gate_failure_rate") - double(failures) / kSeeds);
      total += kSeeds;
    }
    PropertyResult r = m.result("simulator_gate");
    r.sample_size = total;
    return r;
  }

  PropertyResult discord_oracle_agreement() {
    Margin m;
    for (std::uint64_t i = 0; m.n < 1000; ++i) {
      const XStateParams p = random_x_params(derive(c_.seed, 14, i));
      const KPair k = k_values(p);
      if (k.k1 > k.k3) continue;
      m.add_error(c_.tol("oracle"),
                  std::abs(probe_.grid(x_state(p)) - discord_x_closed_form(p).value));
    }
    return m.result("discord_oracle_agreement");
  }

  PropertyResult discord_range() {
    Margin m;
    for (int i = 0; i < 10'000; ++i) {
      const double d = probe_.fast(state(15, i));
      m.add(std::min(d, 0.5 - d));
    }
    // Classical-quantum states reach zero.
    auto r = rng(15);
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState chi = cq_state(state(16, i), ProjectorDirection(random_unit(r)));
      m.add_error(c_.tol("zero_discord"), probe_.grid(chi));
    }
    return m.result("discord_range");
  }

  PropertyResult concurrence_local_unitary() {
    Margin m;
    auto r = rng(17);
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState rho = state(17, i);
      const Matrix2 u = random_su2(r);
      const Matrix2 v = random_su2(r);
      const TwoQubitState moved = validate_density(local_unitary(rho.rho(), u, v));
      m.add_error(c_.tol("concurrence"), std::abs(concurrence(moved) - concurrence(rho)));
    }
    return m.result("concurrence_local_unitary");
  }

  PropertyResult discord_bound_property() {
    Margin m;
    for (int i = 0; i < 10'000; ++i) {
      const TwoQubitState rho = state(18, i);
      const double rhs = discord_bound(rho, DiscordMethod::kEigenClosedForm).rhs;
      m.add(rhs + c_.tol("discord_bound") - probe_.fast(rho));
    }
    return m.result("discord_bound");
  }

  PropertyResult error_rate_from_discord() {
    Margin m;
    for (int i = 0; i < 50; ++i) {
      const double g = i * (kPi / 2) / 49;
      for (double p : {1.0, 0.75, 0.5}) {
        const TwoQubitState rho = depolarized_pure(g, p);
        double via_discord = 0.0;
        try {
          via_discord = delta_min_from_discord(rho);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kConditionsNotMet) continue;
          throw;
        }
        m.add_error(c_.tol("error_rate_from_discord"), std::abs(via_discord - min_error_rate(rho).delta));
      }
    }
    return m.result("error_rate_from_discord");
  }

  PropertyResult twirl_raises_discord() {
    Margin m;
    for (int i = 1; i <= 50; ++i) {
      const double g = i * (kPi / 2) / 50;
      const TwoQubitState rho = pure_state(g);
      const TwoQubitState tw = twirl_analytic(rho);
      m.add_error(c_.tol("concurrence"), std::abs(concurrence(rho) - concurrence(tw)));
      m.add(probe_.grid(tw) - probe_.grid(rho) - c_.tol("discord_increase"));
    }
    return m.result("twirl_raises_discord");
  }

  const RunConfig& c_;
  DiscordProbe probe_;
};

}  // namespace

std::string_view to_string(PropertyStatus s) {
  switch (s) {
    case PropertyStatus::kPass: return "pass";
    case PropertyStatus::kFail: return "fail";
    case PropertyStatus::kSkipped: return "skipped";
  }
  return "?";
}

Fault parse_fault(std::string_view text) {
  if (text == "none") return Fault::kNone;
  if (text == "negate-rho14") return Fault::kNegateRho14;
  throw Error(ErrorCode::kInvalidSpec, "unknown fault '" + std::string(text) + "'");
}

std::vector<PropertyResult> run_property_suite(const RunConfig& config, Fault fault) {
  return Suite(config, fault).run();
}

bool all_pass(const std::vector<PropertyResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const PropertyResult& r) { return r.status == PropertyStatus::kFail; });
}

void write_check_report(std::ostream& out, const std::vector<PropertyResult>& results,
                        const RunConfig& config, Fault fault, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << "name,sample_size,worst_margin,status\n";
    for (const PropertyResult& r : results) {
      out << fmt::format("{},{},{:.17g},{}\n", r.name, r.sample_size, r.worst_margin,
                         to_string(r.status));
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["seed"] = config.seed;
  doc["fault"] = fault == Fault::kNone ? "none" : "negate-rho14";
  doc["all_pass"] = all_pass(results);
  doc["properties"] = nlohmann::ordered_json::array();
  for (const PropertyResult& r : results) {
    nlohmann::ordered_json p;
    p["name"] = r.name;
    p["sample_size"] = r.sample_size;
    p["worst_margin"] = std::isnan(r.worst_margin) ? nlohmann::ordered_json() : nlohmann::ordered_json(r.worst_margin);
    p["status"] = to_string(r.status);
    doc["properties"].push_back(std::move(p));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace twirlkey::cli
