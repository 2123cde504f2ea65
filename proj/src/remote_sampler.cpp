#include "rodqubo/remote_sampler.hpp"

#include <atomic>
#include <cmath>
#include <regex>
#include <thread>

#include <httplib.h>

#include "rodqubo/errors.hpp"
#include "rodqubo/qubo_io.hpp"
#include "rodqubo/solvers.hpp"

namespace rodqubo {

nlohmann::json make_sample_request(const QuboProblem& q, std::size_t reads) {
  auto body = qubo_to_json(q);
  body.erase("variable_names");
  body["reads"] = reads;
  return body;
}

SampleSet parse_sample_response(const nlohmann::json& body, const QuboProblem& q) {
  if (!body.is_object() || !body.contains("samples") || !body["samples"].is_array()) {
    throw MalformedResponseError("response has no 'samples' array");
  }
  SampleSet out;
  out.solver = "remote";
  for (const auto& s : body["samples"]) {
    if (!s.is_object() || !s.contains("bits") || !s["bits"].is_array() ||
        !s.contains("energy") || !s["energy"].is_number()) {
      throw MalformedResponseError("sample entries need 'bits' and 'energy'");
    }
    Bits bits;
    for (const auto& b : s["bits"]) {
      if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
        throw MalformedResponseError("sample bits must be 0 or 1");
      }
      bits.push_back(static_cast<std::uint8_t>(b.get<int>()));
    }
    if (bits.size() != q.dimension()) {
      throw MalformedResponseError("sample has " + std::to_string(bits.size()) +
                                   " bits, problem has " + std::to_string(q.dimension()));
    }
    std::size_t count = 1;
    if (s.contains("count")) {
      if (!s["count"].is_number_unsigned() || s["count"].get<std::size_t>() == 0) {
        throw MalformedResponseError("sample count must be a positive integer");
      }
      count = s["count"].get<std::size_t>();
    }
    const double reported = s["energy"].get<double>();
    const double local = q.energy(bits);
    if (std::abs(reported - local) > 1e-6 * std::max(1.0, std::abs(local))) {
      throw EnergyMismatchError("reported energy " + std::to_string(reported) +
                                " disagrees with local evaluation " + std::to_string(local));
    }
    out.add(std::move(bits), local, count);
  }
  out.finalize();
  out.reads = out.total_count();
  return out;
}

namespace {

struct Endpoint {
  std::string base;  // scheme://host:port
  std::string path;
};

Endpoint parse_endpoint(const std::string& url) {
  static const std::regex pattern(R"(^(http://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, pattern)) {
    throw TransportError("unsupported sampler endpoint '" + url + "' (expected http://host:port/path)");
  }
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

SampleSet remote_sample(const std::string& endpoint, const QuboProblem& q, std::size_t reads,
                        std::chrono::milliseconds timeout) {
  const auto target = parse_endpoint(endpoint);
  httplib::Client client(target.base);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(target.path, make_sample_request(q, reads).dump(), "application/json");
  const auto elapsed = std::chrono::steady_clock::now() - started;
  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout ||
        (err == httplib::Error::Read && elapsed >= timeout)) {
      throw TimeoutError("sampler did not answer within " + std::to_string(timeout.count()) +
                         " ms");
    }
    throw TransportError("request to " + endpoint + " failed: " + httplib::to_string(err));
  }
  if (res->status != 200) {
    throw TransportError("sampler answered HTTP " + std::to_string(res->status));
  }
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedResponseError(std::string("response is not JSON: ") + e.what());
  }
  return parse_sample_response(body, q);
}

struct MockSamplerServer::Impl {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<std::size_t> served{0};
};

MockSamplerServer::MockSamplerServer(Mode mode, std::chrono::milliseconds latency)
    : impl_(std::make_unique<Impl>()) {
  impl_->server.Post("/sample", [this, mode, latency](const httplib::Request& req,
                                                      httplib::Response& res) {
    ++impl_->served;
    if (latency.count() > 0) std::this_thread::sleep_for(latency);
    if (mode == Mode::kMalformed) {
      res.set_content(R"({"result": "nothing here"})", "application/json");
      return;
    }
    try {
      const auto request = nlohmann::json::parse(req.body);
      const auto q = qubo_from_json(request);
      const auto solved = exhaustive_solve(q);
      nlohmann::json samples = nlohmann::json::array();
      for (const auto& s : solved.samples) {
        std::vector<int> bits(s.bits.begin(), s.bits.end());
        const double energy = mode == Mode::kCorruptEnergy ? s.energy + 1.0 : s.energy;
        samples.push_back({{"bits", bits}, {"energy", energy}, {"count", s.count}});
      }
      res.set_content(nlohmann::json{{"samples", samples}}.dump(), "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
    }
  });
  impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  if (impl_->port < 0) throw TransportError("mock sampler could not bind a port");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

MockSamplerServer::~MockSamplerServer() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int MockSamplerServer::port() const noexcept { return impl_->port; }

std::string MockSamplerServer::endpoint() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port) + "/sample";
}

std::size_t MockSamplerServer::requests_served() const noexcept { return impl_->served; }

}  // namespace rodqubo
