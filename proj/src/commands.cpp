#include "rodqubo/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "rodqubo/errors.hpp"
#include "rodqubo/qubo_io.hpp"
#include "rodqubo/remote_sampler.hpp"
#include "rodqubo/solvers.hpp"

namespace rodqubo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const json& j) { open_output(path) << j.dump(2) << '\n'; }

std::vector<double> reference_areas(const AssembledProblem& a) {
  if (const auto* fixed = std::get_if<FixedAreas>(&a.areas)) return fixed->areas;
  return compliance_rank(a.rod, std::get<DesignableAreas>(a.areas)).front().areas;
}

std::vector<std::uint8_t> reference_design(const AssembledProblem& a) {
  if (!is_designable(a.areas)) return {};
  return compliance_rank(a.rod, std::get<DesignableAreas>(a.areas)).front().design;
}

}  // namespace

Formulation formulate(const ProblemConfig& cfg) {
  Formulation f{assemble_objective(cfg.rod, cfg.areas, cfg.encoding, cfg.penalty_weight), {}, {}};
  f.reduced = quadratize(f.assembled);
  f.stats = coefficient_stats(f.reduced.qubo);
  return f;
}

json formulation_summary(const Formulation& f) {
  std::size_t kzfd = 0, ishikawa = 0;
  for (const auto& r : f.reduced.reductions) {
    (r.identity == ReductionIdentity::kKzfd ? kzfd : ishikawa) += 1;
  }
  const auto& registry = f.reduced.registry;
  const std::string degree_report =
      f.reduced.source_degree > 2
          ? "reduced from " + std::to_string(f.reduced.source_degree)
          : "quadratic, no reduction";
  return {{"input_variables", registry.input_count()},
          {"coefficient_bits", registry.count(VariableKind::kCoefficientBit)},
          {"design_bits", registry.count(VariableKind::kDesignBit)},
          {"auxiliary_variables", registry.count(VariableKind::kAuxiliary)},
          {"logical_variables", registry.size()},
          {"source_degree", f.reduced.source_degree},
          {"degree_report", degree_report},
          {"reductions", {{"KZFD", kzfd}, {"Ishikawa", ishikawa}}},
          {"penalty_weight", f.assembled.penalty_weight},
          {"coefficient_stats",
           {{"max_abs", f.stats.max_abs},
            {"min_abs_nonzero", f.stats.min_abs_nonzero},
            {"dynamic_range", f.stats.dynamic_range},
            {"nonzero_count", f.stats.nonzero_count}}}};
}

void write_formulation(const Formulation& f, const fs::path& dir) {
  fs::create_directories(dir);
  for (auto format : {ExportFormat::kJson, ExportFormat::kQubo, ExportFormat::kCsv}) {
    export_formulation(f, format, dir);
  }
  write_json(dir / "stats.json", formulation_summary(f));
}

ExportFormat parse_export_format(const std::string& name) {
  if (name == "json") return ExportFormat::kJson;
  if (name == "csv") return ExportFormat::kCsv;
  if (name == "qubo") return ExportFormat::kQubo;
  throw ValidationError("unknown format '" + name + "' (expected json, csv or qubo)");
}

fs::path export_formulation(const Formulation& f, ExportFormat format, const fs::path& dir) {
  fs::create_directories(dir);
  switch (format) {
    case ExportFormat::kJson: {
      const auto path = dir / "qubo.json";
      write_json(path, qubo_to_json(f.reduced.qubo));
      return path;
    }
    case ExportFormat::kCsv: {
      const auto path = dir / "pattern.csv";
      auto out = open_output(path);
      write_pattern_csv(out, f.reduced.qubo);
      return path;
    }
    case ExportFormat::kQubo: {
      const auto path = dir / "problem.qubo";
      auto out = open_output(path);
      write_qubo_text(out, f.reduced.qubo);
      return path;
    }
  }
  throw ValidationError("unknown export format");
}

namespace {

Sampler make_sampler(const SolverSettings& s) {
  switch (s.kind) {
    case SolverKind::kExhaustive:
      return exhaustive_sampler({s.exhaustive_max_dimension});
    case SolverKind::kAnnealing: {
      AnnealConfig cfg;
      cfg.sweeps = s.sweeps;
      cfg.seed = s.seed;
      return annealing_sampler(cfg);
    }
    case SolverKind::kRemote: {
      if (s.endpoint.empty()) throw ValidationError("--solver remote requires --endpoint");
      const auto endpoint = s.endpoint;
      const auto timeout = std::chrono::milliseconds(s.timeout_ms);
      return [endpoint, timeout](const QuboProblem& q, std::size_t reads) {
        return remote_sample(endpoint, q, reads, timeout);
      };
    }
  }
  throw ValidationError("unknown solver");
}

}  // namespace

SolveOutcome solve(const ProblemConfig& cfg) {
  const auto sampler = make_sampler(cfg.solver);
  SolveOutcome out;
  if (cfg.solver.lambda_large) {
    const TwoStageConfig two_stage{cfg.penalty_weight, *cfg.solver.lambda_large, cfg.solver.reads};
    auto result = two_stage_solve(cfg.rod, cfg.areas, cfg.encoding, two_stage, sampler);
    out.samples = std::move(result.stage2);
    out.stage1 = std::move(result.stage1);
    out.ranking.assembled = std::move(result.problem);
    out.ranking.reduced = std::move(result.reduced);
    out.ranking.stats = coefficient_stats(out.ranking.reduced.qubo);
  } else {
    out.ranking = formulate(cfg);
    out.samples = sampler(out.ranking.reduced.qubo, cfg.solver.reads);
    out.samples.stage = "single";
  }
  out.report = make_solution_report(out.ranking.assembled, out.samples.best().bits, 0);
  return out;
}

json solution_summary(const SolveOutcome& o) {
  const auto& r = o.report;
  json j = {{"nodes", r.solution.nodes},
            {"nodal_forces", r.solution.nodal_forces},
            {"areas", r.solution.areas},
            {"residuals", r.solution.residuals},
            {"energy", r.solution.energy},
            {"objective", r.solution.objective.value_or(std::nan(""))},
            {"penalty_weight", o.ranking.assembled.penalty_weight},
            {"admissibility", r.admissibility},
            {"rank", r.rank},
            {"reference_nodal_forces", r.reference.nodal_forces},
            {"h1_error", r.h1.relative_h1},
            {"h1_l2_component", r.h1.l2_component},
            {"h1_seminorm_component", r.h1.seminorm_component},
            {"solver", o.samples.solver},
            {"seed", o.samples.seed},
            {"reads", o.samples.reads}};
  if (!r.solution.design.empty()) {
    j["design"] = std::vector<int>(r.solution.design.begin(), r.solution.design.end());
    j["optimal_design_areas"] = reference_areas(o.ranking.assembled);
  }
  return j;
}

void write_solution(const SolveOutcome& o, const fs::path& dir) {
  fs::create_directories(dir);
  write_json(dir / "samples.json", to_json(o.samples));
  if (o.stage1) write_json(dir / "stage1_samples.json", to_json(*o.stage1));
  write_json(dir / "solution.json", solution_summary(o));

  auto csv = open_output(dir / "solution.csv");
  csv << "x,F,F_ref,F_minus_F_ref\n";
  const auto& nodes = o.report.solution.nodes;
  auto row = [&](double x) {
    const double f = o.report.solution.force_at(x);
    const double ref = o.report.reference.force_at(x);
    csv << fmt::format("{},{},{},{}\n", x, f, ref, f - ref);
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    row(nodes[i]);
    if (i + 1 < nodes.size()) row(0.5 * (nodes[i] + nodes[i + 1]));
  }
}

json to_json(const Verdict& v) {
  json checks = json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return {{"passed", v.passed}, {"checks", std::move(checks)}};
}

Verdict verify(const ProblemConfig& cfg) {
  Verdict v;
  auto check = [&v](std::string name, bool ok, std::string detail) {
    v.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  check("config", true, "valid");

  const auto f = formulate(cfg);
  const auto n_e = cfg.rod.element_count();
  const std::size_t expected_inputs =
      n_e * cfg.encoding.bits + (is_designable(cfg.areas) ? n_e : 0);
  check("input-variable-count", f.reduced.registry.input_count() == expected_inputs,
        fmt::format("{} input bits, expected {}", f.reduced.registry.input_count(),
                    expected_inputs));

  SolveOutcome outcome;
  try {
    outcome = solve(cfg);
  } catch (const std::exception& e) {
    check("solve", false, e.what());
    v.passed = false;
    return v;
  }
  const auto& ranking = outcome.ranking;
  const double drift = outcome.samples.max_energy_error(ranking.reduced.qubo);
  check("sample-energies", drift <= 1e-9 * std::max(1.0, ranking.reduced.qubo.magnitude()),
        fmt::format("max |stored - recomputed| = {}", drift));

  const auto reference = analytic_force(cfg.rod, reference_areas(ranking.assembled));
  const auto nearest =
      nearest_encoding(ranking.assembled, reference.nodal_forces, reference_design(ranking.assembled));
  const double j_nearest = ranking.assembled.objective.evaluate(nearest);
  const double j_reduced = ranking.reduced.qubo.energy(complete_auxiliaries(ranking.reduced, nearest));
  check("quadratization-consistency",
        std::abs(j_nearest - j_reduced) <= 1e-9 * std::max(1.0, std::abs(j_nearest)),
        fmt::format("J = {}, reduced = {}", j_nearest, j_reduced));

  const double j_best = *outcome.report.solution.objective;
  check("quantized-analytic-bound", j_best <= j_nearest + 1e-9 * std::max(1.0, std::abs(j_nearest)),
        fmt::format("best J = {}, J at nearest encoding of the analytic force = {}", j_best,
                    j_nearest));

  if (is_designable(cfg.areas)) {
    const auto design = reference_design(ranking.assembled);
    check("optimal-design", outcome.report.solution.design == design,
          fmt::format("decoded areas [{}], compliance optimum [{}]",
                      fmt::join(outcome.report.solution.areas, ", "),
                      fmt::join(reference.areas, ", ")));
  }

  const double eps = outcome.report.h1.relative_h1;
  if (cfg.acceptance.max_h1_error) {
    check("h1-error-bound", eps <= *cfg.acceptance.max_h1_error,
          fmt::format("relative H1 error {} (limit {})", eps, *cfg.acceptance.max_h1_error));
  }
  if (cfg.acceptance.expected_h1_error) {
    const double target = *cfg.acceptance.expected_h1_error;
    check("h1-error-target", std::abs(eps - target) <= cfg.acceptance.h1_tolerance,
          fmt::format("relative H1 error {} (expected {} +- {})", eps, target,
                      cfg.acceptance.h1_tolerance));
  }

  v.passed = std::all_of(v.checks.begin(), v.checks.end(),
                         [](const CheckResult& c) { return c.passed; });
  return v;
}

Verdict verify(const fs::path& config_path, const std::optional<std::uint64_t>& seed) {
  ProblemConfig cfg;
  try {
    cfg = load_problem_config(config_path);
  } catch (const ValidationError& e) {
    return {false, {{"config", false, e.what()}}};
  }
  if (seed) cfg.solver.seed = *seed;
  return verify(cfg);
}

}  // namespace rodqubo
