#include "twirlkey/state_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "twirlkey/error.hpp"
#include "twirlkey/states.hpp"

namespace twirlkey {
namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::kSchemaViolation, what); }

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema(where + " must be a number");
  return j.get<double>();
}

Vector3 vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) schema(where + " must be an array of 3 numbers");
  return Vector3(number(j[0], where), number(j[1], where), number(j[2], where));
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) schema("unexpected key '" + key + "' in " + where);
  }
}

TwoQubitState from_matrix(const json& m) {
  if (!m.is_array() || m.size() != 4) schema("matrix must have 4 rows");
  Matrix4 rho;
  for (int r = 0; r < 4; ++r) {
    if (!m[r].is_array() || m[r].size() != 4) schema("matrix rows must have 4 entries");
    for (int c = 0; c < 4; ++c) {
      const json& e = m[r][c];
      if (!e.is_object() || !e.contains("re") || !e.contains("im")) {
        schema("matrix entries must be {\"re\":..,\"im\":..}");
      }
      only_keys(e, {"re", "im"}, "matrix entry");
      rho(r, c) = Complex(number(e["re"], "re"), number(e["im"], "im"));
    }
  }
  return validate_density(rho);
}

TwoQubitState from_pauli(const json& p) {
  if (!p.is_object()) schema("pauli must be an object");
  only_keys(p, {"x", "y", "T"}, "pauli");
  for (const char* key : {"x", "y", "T"}) {
    if (!p.contains(key)) schema(std::string("pauli missing '") + key + "'");
  }
  PauliDecomposition d;
  d.bloch_a = vec3(p["x"], "pauli.x");
  d.bloch_b = vec3(p["y"], "pauli.y");
  const json& t = p["T"];
  if (!t.is_array() || t.size() != 3) schema("pauli.T must be 3x3");
  for (int i = 0; i < 3; ++i) d.correlations.row(i) = vec3(t[i], "pauli.T row").transpose();
  return validate_density(pauli_compose(d));
}

TwoQubitState from_family(const json& j) {
  if (!j["family"].is_string()) schema("family must be a string");
  const std::string family = j["family"].get<std::string>();
  auto need = [&](const char* key) {
    if (!j.contains(key)) schema("family '" + family + "' requires '" + key + "'");
    return number(j[key], key);
  };
  if (family == "pure") {
    only_keys(j, {"family", "gamma"}, "pure family");
    return pure_state(need("gamma"));
  }
  if (family == "werner") {
    only_keys(j, {"family", "F"}, "werner family");
    return werner(WernerFidelity(need("F")));
  }
  if (family == "depolarized") {
    only_keys(j, {"family", "gamma", "p"}, "depolarized family");
    return depolarized_pure(need("gamma"), need("p"));
  }
  schema("unknown family '" + family + "'");
}

}  // namespace

TwoQubitState parse_state_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    schema(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) schema("top level must be an object");
  const int reps = int(j.contains("matrix")) + int(j.contains("pauli")) + int(j.contains("family"));
  if (reps != 1) schema("exactly one of 'matrix', 'pauli', 'family' is required");
  if (j.contains("matrix")) {
    only_keys(j, {"matrix"}, "state file");
    return from_matrix(j["matrix"]);
  }
  if (j.contains("pauli")) {
    only_keys(j, {"pauli"}, "state file");
    return from_pauli(j["pauli"]);
  }
  return from_family(j);
}

TwoQubitState load_state_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, path.string());
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

std::string state_to_json(const TwoQubitState& rho) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) {
      row.push_back({{"re", rho.rho()(r, c).real()}, {"im", rho.rho()(r, c).imag()}});
    }
    rows.push_back(row);
  }
  return json{{"matrix", rows}}.dump();
}

}  // namespace twirlkey
