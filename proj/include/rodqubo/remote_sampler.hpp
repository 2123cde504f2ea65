#pragma once

#include <chrono>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "rodqubo/qubo.hpp"
#include "rodqubo/sample_set.hpp"

namespace rodqubo {

/// Request body: {"dimension", "linear", "quadratic": [[i, j, v], ...], "offset", "reads"}.
nlohmann::json make_sample_request(const QuboProblem& q, std::size_t reads);

/// Parses {"samples": [{"bits": [...], "energy": e, "count": k}, ...]}, checks
/// every reported energy against local evaluation (1e-6 relative) and returns
/// a finalized set. Throws MalformedResponseError or EnergyMismatchError.
SampleSet parse_sample_response(const nlohmann::json& body, const QuboProblem& q);

/// POSTs the problem to `endpoint` ("http://host:port/path") and validates
/// the answer. Throws TransportError, TimeoutError, MalformedResponseError or
/// EnergyMismatchError.
SampleSet remote_sample(const std::string& endpoint, const QuboProblem& q, std::size_t reads,
                        std::chrono::milliseconds timeout);

/// In-process HTTP server speaking the sampler protocol, answering with the
/// exhaustive solution. Fault modes exist for exercising the client.
class MockSamplerServer {
 public:
  enum class Mode { kExhaustive, kCorruptEnergy, kMalformed };

  explicit MockSamplerServer(Mode mode = Mode::kExhaustive,
                             std::chrono::milliseconds latency = std::chrono::milliseconds{0});
  ~MockSamplerServer();
  MockSamplerServer(const MockSamplerServer&) = delete;
  MockSamplerServer& operator=(const MockSamplerServer&) = delete;

  int port() const noexcept;
  std::string endpoint() const;
  std::size_t requests_served() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rodqubo
