#include "rodqubo/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <random>
#include <thread>

#include "rodqubo/errors.hpp"

namespace rodqubo {

namespace {

std::vector<double> local_fields(const QuboProblem& q, std::span<const std::uint8_t> x) {
  std::vector<double> h(q.dimension());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = q.field(x, static_cast<Var>(i));
  return h;
}

// Flips x[i] and keeps the neighbours' local fields in sync.
void apply_flip(const QuboProblem& q, Bits& x, std::vector<double>& h, Var i) {
  x[i] ^= 1U;
  const double sign = x[i] ? 1.0 : -1.0;
  for (const auto& nb : q.neighbors(i)) h[nb.index] += sign * nb.weight;
}

}  // namespace

SampleSet exhaustive_solve(const QuboProblem& q, const ExhaustiveOptions& options) {
  const std::size_t n = q.dimension();
  if (n > options.max_dimension) {
    throw DimensionGuardError("exhaustive search over " + std::to_string(n) +
                              " variables exceeds the guard of " +
                              std::to_string(options.max_dimension) +
                              "; use simulated annealing instead");
  }
  const double tolerance = 1e-11 * std::max(1.0, q.magnitude());
  constexpr std::uint64_t kResyncInterval = 4096;

  Bits x(n, 0);
  auto h = local_fields(q, x);
  double energy = q.offset();
  double best = energy;
  std::vector<Bits> ties{x};

  const std::uint64_t total = n == 0 ? 1 : (std::uint64_t{1} << n);
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto i = static_cast<Var>(std::countr_zero(k));
    energy += x[i] ? -h[i] : h[i];
    apply_flip(q, x, h, i);
    if (k % kResyncInterval == 0) {
      energy = q.energy(x);
      h = local_fields(q, x);
    }
    if (energy < best - tolerance) {
      best = energy;
      ties.clear();
      ties.push_back(x);
    } else if (energy <= best + tolerance) {
      if (energy < best) best = energy;
      if (ties.size() >= options.max_ties) {
        throw DimensionGuardError("more than " + std::to_string(options.max_ties) +
                                  " tied minimisers");
      }
      ties.push_back(x);
    }
  }

  // Re-rank the candidates with exact energies; drift may have admitted some
  // that are not within tolerance of the true minimum.
  SampleSet out;
  out.solver = "exhaustive";
  out.reads = 1;
  double exact_best = q.energy(ties.front());
  std::vector<double> exact(ties.size());
  for (std::size_t t = 0; t < ties.size(); ++t) {
    exact[t] = q.energy(ties[t]);
    exact_best = std::min(exact_best, exact[t]);
  }
  for (std::size_t t = 0; t < ties.size(); ++t) {
    if (exact[t] <= exact_best + tolerance) out.add(std::move(ties[t]), exact[t]);
  }
  out.finalize();
  return out;
}

BetaSchedule resolve_schedule(const QuboProblem& q, const AnnealConfig& cfg) {
  BetaSchedule s;
  std::optional<CoefficientStats> stats;
  if (!cfg.beta_start || !cfg.beta_end) {
    try {
      stats = coefficient_stats(q);
    } catch (const ValidationError&) {
      stats = CoefficientStats{1.0, 1.0, 1.0, 0};
    }
  }
  s.start = cfg.beta_start ? *cfg.beta_start : 0.1 / stats->max_abs;
  s.end = cfg.beta_end ? *cfg.beta_end : 10.0 / stats->min_abs_nonzero;
  if (!(s.start > 0.0) || !(s.end > 0.0) || !(s.start < s.end)) {
    throw ValidationError("annealing schedule needs 0 < beta_start < beta_end");
  }
  return s;
}

namespace {

Sample anneal_once(const QuboProblem& q, std::size_t sweeps, const BetaSchedule& schedule,
                   std::uint64_t seed, std::uint64_t read) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(read), static_cast<std::uint32_t>(read >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const std::size_t n = q.dimension();
  Bits x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1U);
  auto h = local_fields(q, x);
  double energy = q.energy(x);

  const double ratio = schedule.end / schedule.start;
  for (std::size_t s = 0; s < sweeps; ++s) {
    const double t = sweeps == 1 ? 1.0 : static_cast<double>(s) / static_cast<double>(sweeps - 1);
    const double beta = schedule.start * std::pow(ratio, t);
    for (Var i = 0; i < n; ++i) {
      const double delta = x[i] ? -h[i] : h[i];
      if (delta <= 0.0 || uniform(rng) < std::exp(-beta * delta)) {
        apply_flip(q, x, h, i);
        energy += delta;
#ifndef NDEBUG
        if (n <= 16) {
          assert(std::abs(energy - q.energy(x)) <= 1e-9 * std::max(1.0, q.magnitude()));
        }
#endif
      }
    }
  }
  const double exact = q.energy(x);
  return {std::move(x), exact, 1};
}

}  // namespace

SampleSet simulated_annealing(const QuboProblem& q, const AnnealConfig& cfg) {
  if (q.dimension() == 0) throw ValidationError("simulated annealing needs at least one variable");
  if (cfg.reads == 0 || cfg.sweeps == 0) {
    throw ValidationError("reads and sweeps must be positive");
  }
  const auto schedule = resolve_schedule(q, cfg);
  std::vector<Sample> results(cfg.reads);

  std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, cfg.reads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < cfg.reads; r += threads) {
          results[r] = anneal_once(q, cfg.sweeps, schedule, cfg.seed, r);
        }
      });
    }
  }

  SampleSet out;
  out.solver = "simulated-annealing";
  out.seed = cfg.seed;
  out.reads = cfg.reads;
  out.samples = std::move(results);
  out.finalize();
  return out;
}

DescentResult greedy_descent(const QuboProblem& q, std::span<const std::uint8_t> start) {
  if (start.size() < q.dimension()) {
    throw MissingVariableError(start.size(), "start assignment of length " +
                                                 std::to_string(start.size()) +
                                                 " does not cover dimension " +
                                                 std::to_string(q.dimension()));
  }
  DescentResult r;
  r.bits.assign(start.begin(), start.begin() + static_cast<std::ptrdiff_t>(q.dimension()));
  auto h = local_fields(q, r.bits);
  for (;;) {
    Var chosen = 0;
    double best_delta = 0.0;
    for (Var i = 0; i < q.dimension(); ++i) {
      const double delta = r.bits[i] ? -h[i] : h[i];
      if (delta < best_delta) {
        best_delta = delta;
        chosen = i;
      }
    }
    if (best_delta >= 0.0) break;
    apply_flip(q, r.bits, h, chosen);
    ++r.steps;
  }
  r.value = q.energy(r.bits);
  return r;
}

Sampler exhaustive_sampler(ExhaustiveOptions options) {
  return [options](const QuboProblem& q, std::size_t) { return exhaustive_solve(q, options); };
}

Sampler annealing_sampler(AnnealConfig base) {
  return [base](const QuboProblem& q, std::size_t reads) {
    auto cfg = base;
    cfg.reads = reads;
    return simulated_annealing(q, cfg);
  };
}

void TwoStageConfig::validate() const {
  if (!(lambda_small > 0.0) || !(lambda_small <= lambda_large) || !std::isfinite(lambda_large)) {
    throw ValidationError("two-stage solve needs 0 < lambda_small <= lambda_large");
  }
  if (reads == 0) throw ValidationError("reads must be positive");
}

TwoStageResult two_stage_solve(const RodProblem& rod, const CrossSectionSpec& areas,
                               const CoefficientEncoding& encoding, const TwoStageConfig& cfg,
                               const Sampler& sampler) {
  cfg.validate();
  const auto relaxed = assemble_objective(rod, areas, encoding, cfg.lambda_small);
  const auto relaxed_qubo = quadratize(relaxed);

  TwoStageResult result{sampler(relaxed_qubo.qubo, cfg.reads), {},
                        assemble_objective(rod, areas, encoding, cfg.lambda_large), {}};
  result.stage1.stage = "stage1";
  result.reduced = quadratize(result.problem);

  const auto n_inputs = result.problem.input_count();
  auto& polished = result.stage2;
  polished.solver = result.stage1.solver + "+greedy";
  polished.stage = "stage2";
  polished.seed = result.stage1.seed;
  polished.reads = result.stage1.reads;
  for (const auto& s : result.stage1.samples) {
    const auto start = complete_auxiliaries(result.reduced, std::span(s.bits).first(n_inputs));
    auto descended = greedy_descent(result.reduced.qubo, start);
    polished.add(std::move(descended.bits), descended.value, s.count);
  }
  polished.finalize();
  return result;
}

}  // namespace rodqubo
