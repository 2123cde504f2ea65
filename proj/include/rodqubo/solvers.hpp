#pragma once

#include <functional>
#include <optional>

#include "rodqubo/qubo.hpp"
#include "rodqubo/rod_model.hpp"
#include "rodqubo/sample_set.hpp"

namespace rodqubo {

struct ExhaustiveOptions {
  std::size_t max_dimension = 30;
  std::size_t max_ties = std::size_t{1} << 20;
};

/// Enumerates all 2^n assignments in Gray-code order and returns every global
/// minimiser. Energies within 1e-11 * magnitude() of the minimum count as
/// ties. Throws DimensionGuardError above `max_dimension`.
SampleSet exhaustive_solve(const QuboProblem& q, const ExhaustiveOptions& options = {});

struct AnnealConfig {
  std::size_t reads = 100;
  std::size_t sweeps = 1000;
  /// Defaults: 0.1 / max|c| and 10 / min nonzero |c|.
  std::optional<double> beta_start;
  std::optional<double> beta_end;
  std::uint64_t seed = 0;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

struct BetaSchedule {
  double start = 0.0;
  double end = 0.0;
};

BetaSchedule resolve_schedule(const QuboProblem& q, const AnnealConfig& cfg);

/// Restarted single-flip Metropolis annealing under a geometric inverse
/// temperature schedule. Reads run in parallel but every read draws from its
/// own generator seeded with (seed, read index), so results depend only on
/// the config.
SampleSet simulated_annealing(const QuboProblem& q, const AnnealConfig& cfg);

struct DescentResult {
  Bits bits;
  double value = 0.0;
  std::size_t steps = 0;
};

/// Steepest descent over single flips, lowest index first on ties, until no
/// flip lowers the objective.
DescentResult greedy_descent(const QuboProblem& q, std::span<const std::uint8_t> start);

/// Any QUBO sampler: (problem, reads) -> finalized samples.
using Sampler = std::function<SampleSet(const QuboProblem&, std::size_t)>;

Sampler exhaustive_sampler(ExhaustiveOptions options = {});
Sampler annealing_sampler(AnnealConfig base);

struct TwoStageConfig {
  double lambda_small = 20.0;
  double lambda_large = 1e9;
  std::size_t reads = 500;

  void validate() const;
};

struct TwoStageResult {
  SampleSet stage1;          ///< samples of the lambda_small problem
  SampleSet stage2;          ///< polished samples ranked by the lambda_large objective
  AssembledProblem problem;  ///< lambda_large assembly used for ranking and decoding
  Quadratization reduced;    ///< its quadratic form
};

/// Samples the relaxed problem, then runs greedy_descent on the stiff problem
/// from every stage-1 sample. Sampler errors propagate.
TwoStageResult two_stage_solve(const RodProblem& rod, const CrossSectionSpec& areas,
                               const CoefficientEncoding& encoding, const TwoStageConfig& cfg,
                               const Sampler& sampler);

}  // namespace rodqubo
