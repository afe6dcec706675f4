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

#include "fstkey/harness/service.h"

#include <iostream>

#include "fstkey/errors.h"
#include "fstkey/text.h"
#include "httplib.h"

namespace fstkey {

namespace {

using Response = SessionService::Response;

Response Error(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

double Number(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw InputError(std::string("field '") + key + "' must be a number");
  }
  return it->get<double>();
}

TouchPoint PointOf(const nlohmann::json& j, TouchKind kind) {
  if (!j.is_object()) throw InputError("a point must be an object {x, y, t}");
  return {Number(j, "x"), Number(j, "y"), Number(j, "t"), kind};
}

std::vector<std::string> PathParts(const std::string& path) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < path.size()) {
    const size_t j = path.find('/', i);
    const size_t end = j == std::string::npos ? path.size() : j;
    if (end > i) out.push_back(path.substr(i, end - i));
    i = end + 1;
  }
  return out;
}

}  // namespace

SessionService::SessionService(std::shared_ptr<const DecoderGraph> graph, DecoderConfig config)
    : graph_(std::move(graph)),
      config_(std::move(config)),
      cache_(std::make_shared<PredictionCache>()) {}

size_t SessionService::NumSessions() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

std::shared_ptr<SessionService::Entry> SessionService::Find(const std::string& id) const {
  std::shared_lock lock(mu_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Response SessionService::Create(const nlohmann::json& body) {
  if (const auto it = body.find("layout_id"); it != body.end()) {
    if (!it->is_string()) throw InputError("layout_id must be a string");
    if (it->get<std::string>() != graph_->layout().id()) {
      return Error(400, "unknown layout '" + it->get<std::string>() + "'");
    }
  }
  const std::string id = "s" + std::to_string(next_id_++);
  auto entry = std::make_shared<Entry>(graph_, config_, cache_);
  {
    std::unique_lock lock(mu_);
    sessions_.emplace(id, std::move(entry));
  }
  return {200, {{"session_id", id}, {"layout_id", graph_->layout().id()}}};
}

Response SessionService::OnSession(Entry& e, const std::string& action,
                                   const nlohmann::json& body) {
  Session& s = e.session;
  if (action == "tap") return {200, ToJson(s.Tap(PointOf(body, TouchKind::kDown)))};
  if (action == "gesture") {
    const auto it = body.find("points");
    if (it == body.end() || !it->is_array()) throw InputError("'points' must be an array");
    std::vector<TouchPoint> points;
    for (const auto& p : *it) points.push_back(PointOf(p, TouchKind::kMove));
    if (!points.empty()) {
      points.front().kind = TouchKind::kDown;
      points.back().kind = TouchKind::kUp;
    }
    return {200, ToJson(s.Gesture(points))};
  }
  if (action == "separator") return {200, ToJson(s.Commit())};
  if (action == "select") {
    const auto it = body.find("text");
    if (it == body.end() || !it->is_string()) throw InputError("'text' must be a string");
    return {200, ToJson(s.Select(it->get<std::string>()))};
  }
  if (action == "backspace") return {200, ToJson(s.Backspace())};
  return Error(404, "unknown action '" + action + "'");
}

Response SessionService::Handle(const std::string& method, const std::string& path,
                                const std::string& raw) {
  try {
    const std::vector<std::string> parts = PathParts(path);
    if (parts.size() < 2 || parts[0] != "v1") return Error(404, "no route " + path);
    if (parts[1] == "layout" && method == "GET" && parts.size() <= 3) {
      if (parts.size() == 3 && parts[2] != graph_->layout().id()) {
        return Error(404, "unknown layout '" + parts[2] + "'");
      }
      return {200, graph_->layout().ToJson()};
    }
    if (parts[1] != "session" || parts.size() > 4) return Error(404, "no route " + path);

    nlohmann::json body = nlohmann::json::object();
    if (!raw.empty()) {
      body = nlohmann::json::parse(raw, nullptr, false);
      if (body.is_discarded()) return Error(400, "malformed JSON body");
      if (!body.is_object()) return Error(400, "body must be a JSON object");
    }
    if (parts.size() == 2) {
      if (method != "POST") return Error(404, "no route " + method + " " + path);
      return Create(body);
    }
    const std::string& id = parts[2];
    if (parts.size() == 3 && method == "DELETE") {
      std::unique_lock lock(mu_);
      if (!sessions_.erase(id)) return Error(404, "unknown session '" + id + "'");
      return {200, {{"deleted", id}}};
    }
    const auto entry = Find(id);
    if (!entry) return Error(404, "unknown session '" + id + "'");
    std::lock_guard lock(entry->mu);
    if (parts.size() == 3 && method == "GET") {
      return {200,
              {{"session_id", id},
               {"history", entry->session.History()},
               {"text", entry->session.Text()},
               {"frames", entry->session.NumFrames()}}};
    }
    if (parts.size() != 4 || method != "POST") return Error(404, "no route " + method + " " + path);
    return OnSession(*entry, parts[3], body);
  } catch (const InputError& e) {
    return Error(400, e.what());
  } catch (const std::exception& e) {
    return Error(500, e.what());
  }
}

void SessionService::Bind(httplib::Server& server) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = Handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/v1/.*)", handler);
  server.Post(R"(/v1/.*)", handler);
  server.Delete(R"(/v1/.*)", handler);
}

void Serve(SessionService& service, const std::string& host, int port) {
  httplib::Server server;
  service.Bind(server);
  std::cerr << "fstkey: serving on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) throw InputError("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace fstkey
