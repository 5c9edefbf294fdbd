// Copyright 2026 The dfjsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DFJSP_REMOTE_HPP
#define DFJSP_REMOTE_HPP

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "dfjsp/qubo.hpp"
#include "dfjsp/samplers.hpp"

namespace dfjsp {

/// Hosted-annealer endpoint settings. `chain_strength` is forwarded opaquely;
/// this client knows nothing about embeddings.
struct RemoteConfig {
  std::string endpoint;  // http://host:port
  std::string token;
  int timeout_ms = 60000;
  int poll_interval_ms = 100;
  double chain_strength = 1.0;
};

class ConnectionFailedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RemoteTimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedResponseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EnergyMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads ANNEAL_ENDPOINT / ANNEAL_TOKEN. Endpoint may be empty (no remote
/// configured).
inline RemoteConfig remote_config_from_env() {
  RemoteConfig config;
  if (const char* endpoint = std::getenv("ANNEAL_ENDPOINT")) {
    config.endpoint = endpoint;
  }
  if (const char* token = std::getenv("ANNEAL_TOKEN")) {
    config.token = token;
  }
  return config;
}

inline RemoteConfig load_remote_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open remote config: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(file);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::runtime_error(std::string("remote config: ") + err.what());
  }
  RemoteConfig config;
  config.endpoint = doc.value("endpoint", std::string());
  config.token = doc.value("token", std::string());
  config.timeout_ms = doc.value("timeout_ms", 60000);
  config.poll_interval_ms = doc.value("poll_interval_ms", 100);
  config.chain_strength = doc.value("chain_strength", 1.0);
  return config;
}

/// Submits the qubo in export-text form, polls until the job reports DONE,
/// then re-verifies every returned energy locally; remote energies are never
/// trusted. Protocol:
///   POST {endpoint}/jobs?num_reads=N&chain_strength=S  body: export text
///     -> 200, body: opaque job id
///   GET  {endpoint}/jobs/{id}
///     -> 200, first line PENDING | DONE | ERROR <msg>; after DONE one
///        `bitstring energy occurrences` line per sample
inline SampleSet solve_remote(const Qubo& q, const RemoteConfig& config,
                              int num_reads = 1000) {
  if (config.endpoint.empty()) {
    throw ConnectionFailedError("no remote endpoint configured");
  }
  httplib::Client client(config.endpoint);
  client.set_connection_timeout(0, config.timeout_ms * 1000LL);
  client.set_read_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);
  httplib::Headers headers;
  if (!config.token.empty()) {
    headers.emplace("Authorization", "Bearer " + config.token);
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto deadline = t0 + std::chrono::milliseconds(config.timeout_ms);

  std::ostringstream path;
  path << "/jobs?num_reads=" << num_reads
       << "&chain_strength=" << config.chain_strength;
  auto posted = client.Post(path.str(), headers, export_qubo_text(q), "text/plain");
  if (!posted) {
    throw ConnectionFailedError("submit failed: " +
                                httplib::to_string(posted.error()));
  }
  if (posted->status != 200) {
    throw ConnectionFailedError("submit rejected with status " +
                                std::to_string(posted->status));
  }
  std::string job_id = posted->body;
  while (!job_id.empty() && (job_id.back() == '\n' || job_id.back() == '\r')) {
    job_id.pop_back();
  }
  if (job_id.empty()) throw MalformedResponseError("submit returned no job id");

  std::string body;
  for (;;) {
    if (std::chrono::steady_clock::now() >= deadline) {
      throw RemoteTimeoutError("remote solve did not finish within " +
                               std::to_string(config.timeout_ms) + " ms");
    }
    auto polled = client.Get("/jobs/" + job_id, headers);
    if (!polled) {
      throw ConnectionFailedError("poll failed: " +
                                  httplib::to_string(polled.error()));
    }
    if (polled->status != 200) {
      throw MalformedResponseError("poll returned status " +
                                   std::to_string(polled->status));
    }
    std::istringstream lines(polled->body);
    std::string status;
    if (!std::getline(lines, status)) {
      throw MalformedResponseError("poll returned empty body");
    }
    while (!status.empty() && status.back() == '\r') status.pop_back();
    if (status == "PENDING" || status == "RUNNING") {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config.poll_interval_ms));
      continue;
    }
    if (status.rfind("ERROR", 0) == 0) {
      throw MalformedResponseError("remote reported: " + status);
    }
    if (status != "DONE") {
      throw MalformedResponseError("unknown remote status: " + status);
    }
    body.assign(std::istreambuf_iterator<char>(lines), {});
    break;
  }

  SampleSet out;
  std::istringstream lines(body);
  std::string line;
  while (std::getline(lines, line)) {
    while (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string bits;
    double remote_energy;
    long long occurrences;
    if (!(row >> bits >> remote_energy >> occurrences) ||
        static_cast<int>(bits.size()) != q.n || occurrences < 1) {
      throw MalformedResponseError("malformed sample line: " + line);
    }
    Sample sample;
    sample.assignment.resize(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') {
        throw MalformedResponseError("malformed bitstring: " + bits);
      }
      sample.assignment[i] = bits[i] == '1';
    }
    sample.energy = energy(q, sample.assignment);
    if (sample.energy != remote_energy) {
      throw EnergyMismatchError(
          "remote energy " + detail::format_coefficient(remote_energy) +
          " does not match local recomputation " +
          detail::format_coefficient(sample.energy));
    }
    sample.occurrences = occurrences;
    out.samples.push_back(std::move(sample));
  }
  if (out.samples.empty()) {
    throw MalformedResponseError("remote returned no samples");
  }
  detail::sort_and_merge(out.samples);
  out.metadata.backend = "remote";
  out.metadata.reads = num_reads;
  out.metadata.sweeps = 0;
  out.metadata.seed = 0;
  out.metadata.wall_time_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

}  // namespace dfjsp

#endif  // DFJSP_REMOTE_HPP
