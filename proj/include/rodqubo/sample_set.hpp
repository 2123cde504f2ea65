#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rodqubo/polynomial.hpp"
#include "rodqubo/qubo.hpp"

namespace rodqubo {

struct Sample {
  Bits bits;
  double energy = 0.0;
  std::size_t count = 1;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Solver output. After finalize() samples are unique by bits and ordered by
/// (energy, bits) ascending, so the first sample is the best one.
struct SampleSet {
  std::vector<Sample> samples;
  std::string solver;
  std::string stage;
  std::uint64_t seed = 0;
  std::size_t reads = 0;

  void add(Bits bits, double energy, std::size_t count = 1);
  void finalize();

  bool empty() const noexcept { return samples.empty(); }
  const Sample& best() const;
  std::size_t total_count() const noexcept;

  /// Largest |stored - recomputed| energy over all samples.
  double max_energy_error(const QuboProblem& q) const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

nlohmann::json to_json(const SampleSet& set);

}  // namespace rodqubo
