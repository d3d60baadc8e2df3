#include "config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "twirlkey/error.hpp"

namespace twirlkey::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void invalid(std::string_view what, std::string_view text) {
  throw Error(ErrorCode::kInvalidSpec, std::string(what) + ": '" + std::string(text) + "'");
}

double parse_factor(std::string_view s) {
  s = trim(s);
  if (s == "pi") return std::numbers::pi;
  if (s.empty()) invalid("empty number", s);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) invalid("bad number", s);
  return v;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kPure: return "pure";
    case Family::kWerner: return "werner";
    case Family::kDepolarized: return "depolarized";
  }
  return "?";
}

std::map<std::string, double> default_tolerances() {
  return {
      {"algebra", 1e-12},
      {"eigen_floor", 1e-10},
      {"twirl", 1e-12},
      {"mc_trace", 0.03},
      {"probability", 1e-12},
      {"optimality", 1e-12},
      {"gate_failure_rate", 0.01},
      {"oracle", 1e-6},
      {"zero_discord", 1e-8},
      {"discord_bound", 1e-9},
      {"error_rate_from_discord", 1e-8},
      {"concurrence", 1e-10},
      {"discord_increase", 1e-6},
  };
}

double RunConfig::tol(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) throw Error(ErrorCode::kInvalidSpec, "unknown tolerance " + name);
  return it->second;
}

double parse_scalar(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) invalid("empty expression", text);
  double value = 1.0;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] != '*' && s[i] != '/') continue;
    const double f = parse_factor(s.substr(start, i - start));
    if (op == '*') {
      value *= f;
    } else {
      if (f == 0.0) invalid("division by zero", text);
      value /= f;
    }
    if (i < s.size()) op = s[i];
    start = i + 1;
  }
  return value;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  const char sep = text.find(':') != std::string_view::npos ? ':' : ',';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  std::vector<double> out;
  if (sep == ',') {
    for (auto p : parts) out.push_back(parse_scalar(p));
    return out;
  }
  if (parts.size() != 3) invalid("grid must be start:stop:steps", text);
  const double lo = parse_scalar(parts[0]);
  const double hi = parse_scalar(parts[1]);
  const double steps_d = parse_scalar(parts[2]);
  if (!(steps_d >= 1.0) || steps_d != std::floor(steps_d) || steps_d > 1e7) {
    invalid("steps must be a positive integer", parts[2]);
  }
  const auto steps = static_cast<std::size_t>(steps_d);
  if (steps == 1) return {lo};
  out.reserve(steps);
  for (std::size_t i = 0; i + 1 < steps; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  out.push_back(hi);
  return out;
}

Vector3 parse_vector3(std::string_view text) {
  Vector3 v;
  int k = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      if (k == 3) invalid("expected three components", text);
      v(k++) = parse_scalar(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (k != 3) invalid("expected three components", text);
  return v;
}

Family parse_family(std::string_view text) {
  if (text == "pure") return Family::kPure;
  if (text == "werner") return Family::kWerner;
  if (text == "depolarized") return Family::kDepolarized;
  invalid("unknown family", text);
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  invalid("unknown format", text);
}

void apply_tolerance_override(RunConfig& config, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) invalid("expected name=value", assignment);
  const std::string name(trim(assignment.substr(0, eq)));
  const auto it = config.tolerances.find(name);
  if (it == config.tolerances.end()) invalid("unknown tolerance", name);
  const double v = parse_scalar(assignment.substr(eq + 1));
  if (!(v >= 0.0)) invalid("tolerance must be >= 0", assignment);
  it->second = v;
}

void validate(const SweepSpec& spec) {
  if (spec.grid.empty()) throw Error(ErrorCode::kInvalidSpec, "empty grid");
  const double hi = spec.family == Family::kWerner ? 1.0 : std::numbers::pi / 2;
  for (double v : spec.grid) {
    if (!(v >= 0.0 && v <= hi)) {
      throw Error(ErrorCode::kInvalidSpec, std::string(to_string(spec.family)) +
                                               " grid value out of range: " + std::to_string(v));
    }
  }
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw Error(ErrorCode::kInvalidSpec, "p out of [0, 1]: " + std::to_string(spec.p));
  }
}

}  // namespace twirlkey::cli
