// rodqubo: formulate, solve and verify QUBO models of a self-weight-loaded rod.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rodqubo/commands.hpp"
#include "rodqubo/config.hpp"
#include "rodqubo/errors.hpp"

namespace {

struct SolverFlags {
  std::optional<std::string> solver;
  std::optional<std::size_t> reads;
  std::optional<std::size_t> sweeps;
  std::optional<double> lambda_small;
  std::optional<double> lambda_large;
  std::optional<std::string> endpoint;
  std::optional<std::size_t> timeout_ms;
};

void apply(const SolverFlags& flags, const std::optional<std::uint64_t>& seed,
           rodqubo::ProblemConfig& cfg) {
  if (flags.solver) cfg.solver.kind = rodqubo::parse_solver_kind(*flags.solver);
  if (flags.reads) cfg.solver.reads = *flags.reads;
  if (flags.sweeps) cfg.solver.sweeps = *flags.sweeps;
  if (flags.lambda_small) cfg.penalty_weight = *flags.lambda_small;
  if (flags.lambda_large) cfg.solver.lambda_large = *flags.lambda_large;
  if (flags.endpoint) cfg.solver.endpoint = *flags.endpoint;
  if (flags.timeout_ms) cfg.solver.timeout_ms = *flags.timeout_ms;
  if (seed) cfg.solver.seed = *seed;
  if (cfg.solver.reads == 0) throw rodqubo::ValidationError("--reads must be positive");
  if (cfg.penalty_weight < 0.0) throw rodqubo::ValidationError("penalty weight must be non-negative");
  if (cfg.solver.lambda_large && !(*cfg.solver.lambda_large >= cfg.penalty_weight)) {
    throw rodqubo::ValidationError("--lambda-large must not be below the small penalty weight");
  }
  if (cfg.solver.kind == rodqubo::SolverKind::kRemote && cfg.solver.endpoint.empty()) {
    throw rodqubo::ValidationError("--solver remote requires --endpoint");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO formulation and solution of compound-rod analysis and design problems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  app.add_option("--config", config_path, "Problem config (JSON)")->required();
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Random seed for stochastic solvers");
  app.add_option("--format", format, "Export format")
      ->check(CLI::IsMember({"json", "csv", "qubo"}));
  app.fallthrough();

  auto* formulate = app.add_subcommand("formulate", "Write the QUBO, sparsity pattern and stats");
  auto* solve = app.add_subcommand("solve", "Sample the QUBO and decode the best solution");
  auto* verify = app.add_subcommand("verify", "Solve and check the acceptance conditions");
  auto* exporter = app.add_subcommand("export", "Write the QUBO in one format");

  SolverFlags flags;
  for (auto* sub : {solve, verify}) {
    sub->add_option("--solver", flags.solver, "exhaustive | sa | remote")
        ->check(CLI::IsMember({"exhaustive", "sa", "remote"}));
    sub->add_option("--reads", flags.reads, "Number of reads");
    sub->add_option("--sweeps", flags.sweeps, "Annealing sweeps per read");
    sub->add_option("--lambda-small", flags.lambda_small, "Penalty weight used for sampling");
    sub->add_option("--lambda-large", flags.lambda_large,
                    "Penalty weight for greedy polishing (enables the two-stage solve)");
    sub->add_option("--endpoint", flags.endpoint, "Remote sampler URL");
    sub->add_option("--timeout-ms", flags.timeout_ms, "Remote sampler timeout");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      rodqubo::Verdict verdict;
      try {
        auto cfg = rodqubo::load_problem_config(config_path);
        apply(flags, seed, cfg);
        verdict = rodqubo::verify(cfg);
      } catch (const rodqubo::ValidationError& e) {
        verdict = {false, {{"config", false, e.what()}}};
      }
      std::cout << rodqubo::to_json(verdict).dump(2) << '\n';
      return verdict.passed ? 0 : 1;
    }

    auto cfg = rodqubo::load_problem_config(config_path);
    if (formulate->parsed()) {
      const auto f = rodqubo::formulate(cfg);
      rodqubo::write_formulation(f, out_dir);
      std::cout << rodqubo::formulation_summary(f).dump(2) << '\n';
    } else if (exporter->parsed()) {
      const auto f = rodqubo::formulate(cfg);
      std::cout << rodqubo::export_formulation(f, rodqubo::parse_export_format(format), out_dir)
                       .string()
                << '\n';
    } else if (solve->parsed()) {
      apply(flags, seed, cfg);
      const auto outcome = rodqubo::solve(cfg);
      rodqubo::write_solution(outcome, out_dir);
      std::cout << rodqubo::solution_summary(outcome).dump(2) << '\n';
    }
  } catch (const rodqubo::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
