#include "rodqubo/sample_set.hpp"

#include <algorithm>
#include <cmath>

#include "rodqubo/errors.hpp"

namespace rodqubo {

void SampleSet::add(Bits bits, double energy, std::size_t count) {
  samples.push_back({std::move(bits), energy, count});
}

void SampleSet::finalize() {
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.bits < b.bits; });
  std::vector<Sample> merged;
  merged.reserve(samples.size());
  for (auto& s : samples) {
    if (!merged.empty() && merged.back().bits == s.bits) {
      merged.back().count += s.count;
    } else {
      merged.push_back(std::move(s));
    }
  }
  std::sort(merged.begin(), merged.end(), [](const Sample& a, const Sample& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.bits < b.bits;
  });
  samples = std::move(merged);
}

const Sample& SampleSet::best() const {
  if (samples.empty()) throw Error("sample set is empty");
  return samples.front();
}

std::size_t SampleSet::total_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.count;
  return n;
}

double SampleSet::max_energy_error(const QuboProblem& q) const {
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, std::abs(s.energy - q.energy(s.bits)));
  return worst;
}

nlohmann::json to_json(const SampleSet& set) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : set.samples) {
    std::vector<int> bits(s.bits.begin(), s.bits.end());
    samples.push_back({{"bits", bits}, {"energy", s.energy}, {"count", s.count}});
  }
  return {{"solver", set.solver},
          {"stage", set.stage},
          {"seed", set.seed},
          {"reads", set.reads},
          {"samples", std::move(samples)}};
}

}  // namespace rodqubo
