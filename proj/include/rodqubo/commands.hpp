#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rodqubo/analysis.hpp"
#include "rodqubo/config.hpp"
#include "rodqubo/quadratization.hpp"
#include "rodqubo/sample_set.hpp"

namespace rodqubo {

struct Formulation {
  AssembledProblem assembled;
  Quadratization reduced;
  CoefficientStats stats;
};

Formulation formulate(const ProblemConfig& cfg);
nlohmann::json formulation_summary(const Formulation& f);
/// qubo.json, problem.qubo, pattern.csv and stats.json under `dir`.
void write_formulation(const Formulation& f, const std::filesystem::path& dir);

enum class ExportFormat { kJson, kCsv, kQubo };
ExportFormat parse_export_format(const std::string& name);
/// Writes one artifact (qubo.json, pattern.csv or problem.qubo) and returns its path.
std::filesystem::path export_formulation(const Formulation& f, ExportFormat format,
                                         const std::filesystem::path& dir);

struct SolveOutcome {
  SampleSet samples;                 ///< final ranked samples
  std::optional<SampleSet> stage1;   ///< relaxed samples of a two-stage run
  Formulation ranking;               ///< problem the final samples are ranked by
  SolutionReport report;             ///< decoded best sample
};

/// Runs the solver described by `cfg.solver`; two-stage when lambda_large is set.
SolveOutcome solve(const ProblemConfig& cfg);
nlohmann::json solution_summary(const SolveOutcome& outcome);
/// samples.json (+ stage1_samples.json), solution.json and solution.csv.
void write_solution(const SolveOutcome& outcome, const std::filesystem::path& dir);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Verdict {
  bool passed = false;
  std::vector<CheckResult> checks;
};

nlohmann::json to_json(const Verdict& v);

/// Validates the config file, solves it and checks the outcome. Never throws
/// for problems in the config; those become failed checks.
Verdict verify(const std::filesystem::path& config_path,
               const std::optional<std::uint64_t>& seed = std::nullopt);
Verdict verify(const ProblemConfig& cfg);

}  // namespace rodqubo
