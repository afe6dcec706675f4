// Copyright 2026 The fstkey Authors.
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

#ifndef FSTKEY_HARNESS_SERVICE_H_
#define FSTKEY_HARNESS_SERVICE_H_

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "fstkey/decoder/session.h"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace fstkey {

// Decoding sessions behind the JSON session protocol. Requests for one
// session run one at a time in arrival order; sessions run in parallel.
class SessionService {
 public:
  struct Response {
    int status = 200;
    nlohmann::json body;
  };

  SessionService(std::shared_ptr<const DecoderGraph> graph, DecoderConfig config = {});

  // Transport-free entry point: method, path and raw body to status and body.
  Response Handle(const std::string& method, const std::string& path, const std::string& body);

  // Routes every protocol path of server to Handle.
  void Bind(httplib::Server& server);

  size_t NumSessions() const;

 private:
  struct Entry {
    std::mutex mu;
    Session session;
    Entry(std::shared_ptr<const DecoderGraph> g, const DecoderConfig& c,
          std::shared_ptr<PredictionCache> cache)
        : session(std::move(g), c, std::move(cache)) {}
  };

  Response Create(const nlohmann::json& body);
  Response OnSession(Entry& e, const std::string& action, const nlohmann::json& body);
  std::shared_ptr<Entry> Find(const std::string& id) const;

  std::shared_ptr<const DecoderGraph> graph_;
  DecoderConfig config_;
  std::shared_ptr<PredictionCache> cache_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::atomic<uint64_t> next_id_{1};
};

// Blocks serving on host:port until the process is stopped.
void Serve(SessionService& service, const std::string& host, int port);

}  // namespace fstkey

#endif  // FSTKEY_HARNESS_SERVICE_H_
