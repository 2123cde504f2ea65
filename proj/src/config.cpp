#include "rodqubo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "rodqubo/errors.hpp"

namespace rodqubo {

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "exhaustive") return SolverKind::kExhaustive;
  if (name == "sa") return SolverKind::kAnnealing;
  if (name == "remote") return SolverKind::kRemote;
  throw ValidationError("unknown solver '" + name + "' (expected exhaustive, sa or remote)");
}

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kExhaustive: return "exhaustive";
    case SolverKind::kAnnealing: return "sa";
    case SolverKind::kRemote: return "remote";
  }
  return "unknown";
}

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError("missing key '" + key + "' in " + where);
  return j.at(key);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ValidationError("'" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError("'" + key + "' must be finite");
  return d;
}

std::size_t count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError("'" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<double> numbers(const json& v, const std::string& key) {
  if (!v.is_array()) throw ValidationError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, key));
  return out;
}

SolverSettings parse_solver(const json& j) {
  reject_unknown(j,
                 {"kind", "reads", "sweeps", "seed", "lambda_large", "endpoint", "timeout_ms",
                  "exhaustive_max_dimension"},
                 "solver");
  SolverSettings s;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw ValidationError("'kind' must be a string");
    s.kind = parse_solver_kind(j["kind"].get<std::string>());
  }
  if (j.contains("reads")) s.reads = count(j["reads"], "reads");
  if (j.contains("sweeps")) s.sweeps = count(j["sweeps"], "sweeps");
  if (j.contains("seed")) s.seed = count(j["seed"], "seed");
  if (j.contains("lambda_large")) s.lambda_large = number(j["lambda_large"], "lambda_large");
  if (j.contains("endpoint")) {
    if (!j["endpoint"].is_string()) throw ValidationError("'endpoint' must be a string");
    s.endpoint = j["endpoint"].get<std::string>();
  }
  if (j.contains("timeout_ms")) s.timeout_ms = count(j["timeout_ms"], "timeout_ms");
  if (j.contains("exhaustive_max_dimension")) {
    s.exhaustive_max_dimension = count(j["exhaustive_max_dimension"], "exhaustive_max_dimension");
  }
  if (s.reads == 0) throw ValidationError("'reads' must be positive");
  if (s.sweeps == 0) throw ValidationError("'sweeps' must be positive");
  return s;
}

AcceptanceSettings parse_acceptance(const json& j) {
  reject_unknown(j, {"max_h1_error", "expected_h1_error", "h1_tolerance"}, "acceptance");
  AcceptanceSettings a;
  if (j.contains("max_h1_error")) a.max_h1_error = number(j["max_h1_error"], "max_h1_error");
  if (j.contains("expected_h1_error")) {
    a.expected_h1_error = number(j["expected_h1_error"], "expected_h1_error");
  }
  if (j.contains("h1_tolerance")) a.h1_tolerance = number(j["h1_tolerance"], "h1_tolerance");
  return a;
}

}  // namespace

ProblemConfig parse_problem_config(const json& j) {
  const std::string where = "problem config";
  reject_unknown(j,
                 {"description", "length", "n_elements", "youngs_modulus", "body_force",
                  "encoding_bits", "areas", "penalty_weight", "solver", "acceptance"},
                 where);
  ProblemConfig cfg;
  if (j.contains("description")) {
    if (!j["description"].is_string()) throw ValidationError("'description' must be a string");
    cfg.description = j["description"].get<std::string>();
  }
  const double length = number(require(j, "length", where), "length");
  const std::size_t n_e = count(require(j, "n_elements", where), "n_elements");
  if (n_e == 0) throw ValidationError("'n_elements' must be at least 1");
  if (!(length > 0.0)) throw ValidationError("'length' must be positive");
  const double f = number(require(j, "body_force", where), "body_force");
  cfg.rod = RodProblem::uniform(length, n_e, 1.0, f);

  const auto& youngs = require(j, "youngs_modulus", where);
  if (youngs.is_array()) {
    cfg.rod.youngs_modulus = numbers(youngs, "youngs_modulus");
  } else {
    cfg.rod.youngs_modulus.assign(n_e, number(youngs, "youngs_modulus"));
  }
  cfg.rod.validate();

  cfg.encoding.bits = count(require(j, "encoding_bits", where), "encoding_bits");
  cfg.encoding.validate();

  const auto& areas = require(j, "areas", where);
  reject_unknown(areas, {"fixed", "choices"}, "areas");
  if (areas.contains("fixed") == areas.contains("choices")) {
    throw ValidationError("'areas' needs exactly one of 'fixed' or 'choices'");
  }
  if (areas.contains("fixed")) {
    cfg.areas = FixedAreas{numbers(areas["fixed"], "fixed")};
  } else {
    const auto choices = numbers(areas["choices"], "choices");
    if (choices.size() != 2) throw ValidationError("'choices' must list exactly two areas");
    cfg.areas = DesignableAreas{choices[0], choices[1]};
  }
  validate(cfg.areas, n_e);

  cfg.penalty_weight = number(require(j, "penalty_weight", where), "penalty_weight");
  if (cfg.penalty_weight < 0.0) throw ValidationError("'penalty_weight' must be non-negative");

  if (j.contains("solver")) cfg.solver = parse_solver(j["solver"]);
  if (cfg.solver.lambda_large && !(*cfg.solver.lambda_large >= cfg.penalty_weight &&
                                   cfg.penalty_weight > 0.0)) {
    throw ValidationError("'lambda_large' needs 0 < penalty_weight <= lambda_large");
  }
  if (j.contains("acceptance")) cfg.acceptance = parse_acceptance(j["acceptance"]);
  return cfg;
}

ProblemConfig load_problem_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_problem_config(j);
}

}  // namespace rodqubo
