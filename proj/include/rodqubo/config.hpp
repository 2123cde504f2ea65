#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "rodqubo/rod_model.hpp"

namespace rodqubo {

enum class SolverKind { kExhaustive, kAnnealing, kRemote };

SolverKind parse_solver_kind(const std::string& name);
const char* to_string(SolverKind kind);

struct SolverSettings {
  SolverKind kind = SolverKind::kAnnealing;
  std::size_t reads = 100;
  std::size_t sweeps = 1000;
  std::uint64_t seed = 0;
  /// Present: polish every sample under this weight (two-stage solve).
  std::optional<double> lambda_large;
  std::string endpoint;
  std::size_t timeout_ms = 10000;
  std::size_t exhaustive_max_dimension = 30;
};

/// Optional pass/fail thresholds checked by `verify`.
struct AcceptanceSettings {
  std::optional<double> max_h1_error;
  std::optional<double> expected_h1_error;
  double h1_tolerance = 0.0;
};

struct ProblemConfig {
  std::string description;
  RodProblem rod;
  CrossSectionSpec areas;
  CoefficientEncoding encoding;
  double penalty_weight = 0.0;
  SolverSettings solver;
  AcceptanceSettings acceptance;
};

/// Strict parse: unknown keys, wrong types and violated invariants all raise
/// ValidationError naming the offending key.
ProblemConfig parse_problem_config(const nlohmann::json& j);
ProblemConfig load_problem_config(const std::filesystem::path& path);

}  // namespace rodqubo
