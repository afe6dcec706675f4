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

#include "fstkey/spatial/touch.h"

#include <cmath>
#include <string>

#include "fstkey/errors.h"
#include "json.hpp"

namespace fstkey {
namespace {

TouchKind ParseKind(const std::string& s, int line) {
  if (s == "down") return TouchKind::kDown;
  if (s == "move") return TouchKind::kMove;
  if (s == "up") return TouchKind::kUp;
  throw ParseError("unknown touch kind '" + s + "'", line);
}

const char* KindName(TouchKind k) {
  switch (k) {
    case TouchKind::kDown: return "down";
    case TouchKind::kMove: return "move";
    case TouchKind::kUp: return "up";
  }
  return "?";
}

}  // namespace

std::vector<TouchPoint> ReadTouchLog(std::istream& in) {
  std::vector<TouchPoint> points;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    TouchPoint p;
    try {
      const auto j = nlohmann::json::parse(line);
      p.kind = ParseKind(j.at("kind").get<std::string>(), lineno);
      p.x = j.at("x").get<double>();
      p.y = j.at("y").get<double>();
      p.t = j.at("t").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), lineno);
    }
    if (!points.empty() && p.t < points.back().t) {
      throw ParseError("time goes backwards", lineno);
    }
    points.push_back(p);
  }
  return points;
}

void WriteTouchLog(const std::vector<TouchPoint>& points, std::ostream& out) {
  for (const TouchPoint& p : points) {
    out << nlohmann::json{{"kind", KindName(p.kind)}, {"x", p.x}, {"y", p.y},
                          {"t", p.t}}
               .dump()
        << '\n';
  }
}

std::vector<Stroke> SplitStrokes(const std::vector<TouchPoint>& points) {
  std::vector<Stroke> strokes;
  bool open = false;
  for (const TouchPoint& p : points) {
    if (p.kind == TouchKind::kDown) {
      if (open) throw InputError("touch down inside an open stroke");
      strokes.emplace_back();
      open = true;
    } else if (!open) {
      throw InputError("touch event without a preceding down");
    }
    strokes.back().push_back(p);
    if (p.kind == TouchKind::kUp) open = false;
  }
  if (open) throw InputError("stroke without an up event");
  return strokes;
}

double StrokeLength(const Stroke& s) {
  double len = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    len += std::hypot(s[i].x - s[i - 1].x, s[i].y - s[i - 1].y);
  }
  return len;
}

}  // namespace fstkey
