#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rodqubo/errors.hpp"
#include "rodqubo/solvers.hpp"

using namespace rodqubo;

namespace {

QuboProblem single_x() { return {1, {1.0}, {}, 0.0}; }
QuboProblem frustrated() { return {2, {-1.0, -1.0}, {{{0, 1}, 2.0}}, 0.0}; }

QuboProblem random_qubo(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  std::vector<double> linear(n);
  for (auto& v : linear) v = coeff(rng);
  QuboProblem::PairMap quadratic;
  for (Var i = 0; i < n; ++i) {
    for (Var j = i + 1; j < n; ++j) {
      if (rng() % 3 == 0) quadratic[{i, j}] = coeff(rng);
    }
  }
  return {n, std::move(linear), std::move(quadratic), 0.0};
}

AnnealConfig quick(std::size_t reads, std::uint64_t seed = 1) {
  AnnealConfig cfg;
  cfg.reads = reads;
  cfg.sweeps = 200;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("exhaustive_solve") {
  SUBCASE("single variable") {
    const auto s = exhaustive_solve(single_x());
    REQUIRE(s.samples.size() == 1);
    CHECK(s.best().bits == Bits{0});
    CHECK(s.best().energy == 0.0);
  }
  SUBCASE("frustrated pair returns the full tie set") {
    const auto s = exhaustive_solve(frustrated());
    REQUIRE(s.samples.size() == 2);
    CHECK(s.samples[0].bits == Bits{0, 1});
    CHECK(s.samples[1].bits == Bits{1, 0});
    for (const auto& x : s.samples) CHECK(x.energy == -1.0);
  }
  SUBCASE("guard") {
    QuboProblem big(31, std::vector<double>(31, 1.0), {}, 0.0);
    CHECK_THROWS_AS(exhaustive_solve(big), DimensionGuardError);
    QuboProblem ok(12, std::vector<double>(12, 1.0), {}, 0.0);
    CHECK_THROWS_AS(exhaustive_solve(ok, {10}), DimensionGuardError);
  }
  SUBCASE("matches plain enumeration on random problems") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      const auto q = random_qubo(rng, 10);
      const auto brute = oracle::enumerate(10, [&](const Bits& x) { return q.energy(x); },
                                           1e-11 * q.magnitude());
      const auto s = exhaustive_solve(q);
      CHECK(s.best().energy == doctest::Approx(brute.minimum).epsilon(1e-14));
      CHECK(s.samples.size() == brute.argmin.size());
    }
  }
}

TEST_CASE("simulated_annealing") {
  SUBCASE("single variable") {
    CHECK(simulated_annealing(single_x(), quick(5)).best().bits == Bits{0});
  }
  SUBCASE("frustrated pair") {
    const auto s = simulated_annealing(frustrated(), quick(100));
    CHECK(s.best().energy == -1.0);
    CHECK(s.total_count() == 100);
    CHECK(s.reads == 100);
  }
  SUBCASE("deterministic for a fixed seed regardless of thread count") {
    std::mt19937_64 rng(19);
    const auto q = random_qubo(rng, 24);
    auto one = quick(16, 42);
    one.threads = 1;
    auto many = quick(16, 42);
    many.threads = 4;
    const auto a = simulated_annealing(q, one);
    CHECK(a == simulated_annealing(q, one));
    CHECK(a == simulated_annealing(q, many));
    CHECK_FALSE(a == simulated_annealing(q, quick(16, 43)));
  }
  SUBCASE("stored energies match re-evaluation") {
    std::mt19937_64 rng(21);
    const auto q = random_qubo(rng, 14);
    const auto s = simulated_annealing(q, quick(30));
    CHECK(s.max_energy_error(q) == 0.0);
    for (std::size_t i = 1; i < s.samples.size(); ++i) {
      CHECK(s.samples[i - 1].energy <= s.samples[i].energy);
    }
  }
  SUBCASE("schedule defaults and validation") {
    QuboProblem q(2, {2.0, -0.5}, {{{0, 1}, 4.0}}, 0.0);
    const auto b = resolve_schedule(q, {});
    CHECK(b.start == doctest::Approx(0.1 / 4.0));
    CHECK(b.end == doctest::Approx(10.0 / 0.5));
    AnnealConfig bad;
    bad.beta_start = 2.0;
    bad.beta_end = 1.0;
    CHECK_THROWS_AS(simulated_annealing(q, bad), ValidationError);
  }
}

TEST_CASE("greedy_descent") {
  SUBCASE("local minimum is a fixed point") {
    const auto r = greedy_descent(frustrated(), Bits{1, 0});
    CHECK(r.bits == Bits{1, 0});
    CHECK(r.steps == 0);
  }
  SUBCASE("ties break towards the lowest index") {
    const auto r = greedy_descent(frustrated(), Bits{1, 1});
    CHECK(r.bits == Bits{0, 1});
    CHECK(r.value == -1.0);
    CHECK(r.steps == 1);
  }
  SUBCASE("two steps down") {
    const QuboProblem q(2, {1.0, 1.0}, {}, 0.0);
    const auto r = greedy_descent(q, Bits{1, 1});
    CHECK(r.bits == Bits{0, 0});
    CHECK(r.value == 0.0);
    CHECK(r.steps == 2);
  }
  SUBCASE("property: the result is a 1-flip local minimum no better than the optimum") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
      const auto q = random_qubo(rng, 12);
      Bits start(12);
      for (auto& b : start) b = rng() & 1U;
      const auto r = greedy_descent(q, start);
      CHECK(r.value <= q.energy(start));
      CHECK(r.value == q.energy(r.bits));
      for (Var i = 0; i < 12; ++i) CHECK(q.flip_delta(r.bits, i) >= 0.0);
      CHECK(exhaustive_solve(q).best().energy <= r.value);
    }
  }
}

TEST_CASE("property: exhaustive is never beaten by annealing") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const auto q = random_qubo(rng, 16);
    const double optimum = exhaustive_solve(q).best().energy;
    const auto s = simulated_annealing(q, quick(10, trial));
    for (const auto& x : s.samples) CHECK(optimum <= x.energy + 1e-12);
  }
}

TEST_CASE("design problem: reduced global minimum projects to the cubic argmin") {
  const auto rod = RodProblem::uniform(1.5, 2, 1.0, 1.5);
  const auto a = assemble_objective(rod, DesignableAreas{0.25, 0.5}, CoefficientEncoding{3}, 5.0);
  const auto reduced = quadratize(a);
  REQUIRE(reduced.qubo.dimension() == 26);
  const auto brute = oracle::enumerate(8, [&](const Bits& x) { return a.objective.evaluate(x); },
                                       1e-12);
  REQUIRE(brute.argmin.size() == 1);
  const auto s = exhaustive_solve(reduced.qubo);
  CHECK(s.best().energy == doctest::Approx(brute.minimum).epsilon(1e-12));
  for (const auto& x : s.samples) {
    CHECK(Bits(x.bits.begin(), x.bits.begin() + 8) == oracle::bits_of(brute.argmin[0], 8));
  }
}

TEST_CASE("two_stage_solve") {
  const auto rod = RodProblem::uniform(1.5, 2, 1.0, 2.5);
  const FixedAreas areas{{0.25, 0.25}};
  const CoefficientEncoding enc{4};

  SUBCASE("exhaustive sampler on a tiny problem") {
    const auto r = two_stage_solve(rod, areas, enc, {2.0, 1e6, 1}, exhaustive_sampler());
    CHECK(r.stage1.stage == "stage1");
    CHECK(r.stage2.stage == "stage2");
    CHECK(r.problem.penalty_weight == 1e6);
    const double stage1_at_large = r.problem.objective.evaluate(r.stage1.best().bits);
    CHECK(r.stage2.best().energy <= stage1_at_large + 1e-9);
    CHECK(r.stage2.max_energy_error(r.reduced.qubo) == 0.0);
    const double optimum = exhaustive_solve(r.reduced.qubo).best().energy;
    CHECK(optimum <= r.stage2.best().energy);
  }
  SUBCASE("equal weights polish at one weight") {
    const auto r = two_stage_solve(rod, areas, enc, {5.0, 5.0, 20}, annealing_sampler(quick(20)));
    const auto q = quadratize(assemble_objective(rod, areas, enc, 5.0)).qubo;
    SampleSet expected;
    for (const auto& s : r.stage1.samples) {
      auto d = greedy_descent(q, s.bits);
      expected.add(d.bits, d.value, s.count);
    }
    expected.finalize();
    REQUIRE(expected.samples.size() == r.stage2.samples.size());
    for (std::size_t i = 0; i < expected.samples.size(); ++i) {
      CHECK(expected.samples[i].bits == r.stage2.samples[i].bits);
    }
  }
  SUBCASE("designable problems with different auxiliary layouts") {
    const auto design = RodProblem::uniform(1.5, 2, 1.0, 1.5);
    const auto r = two_stage_solve(design, DesignableAreas{0.25, 0.5}, CoefficientEncoding{3},
                                   {1.0, 50.0, 40}, annealing_sampler(quick(40)));
    CHECK(r.stage2.max_energy_error(r.reduced.qubo) == 0.0);
    CHECK(r.reduced.qubo.dimension() == 26);
  }
  SUBCASE("invalid weights and propagated sampler errors") {
    CHECK_THROWS_AS(two_stage_solve(rod, areas, enc, {10.0, 1.0, 5}, exhaustive_sampler()),
                    ValidationError);
    CHECK_THROWS_AS(two_stage_solve(rod, areas, enc, {0.0, 1.0, 5}, exhaustive_sampler()),
                    ValidationError);
    const Sampler failing = [](const QuboProblem&, std::size_t) -> SampleSet {
      throw TransportError("down");
    };
    CHECK_THROWS_AS(two_stage_solve(rod, areas, enc, {1.0, 2.0, 5}, failing), TransportError);
  }
}
