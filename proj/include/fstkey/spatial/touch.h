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

#ifndef FSTKEY_SPATIAL_TOUCH_H_
#define FSTKEY_SPATIAL_TOUCH_H_

#include <istream>
#include <ostream>
#include <vector>

namespace fstkey {

enum class TouchKind { kDown, kMove, kUp };

struct TouchPoint {
  double x = 0;
  double y = 0;
  double t = 0;  // ms since session start
  TouchKind kind = TouchKind::kDown;
};

// One contact from down to up.
using Stroke = std::vector<TouchPoint>;

// JSON-lines touch log. Throws ParseError with the line number on bad input
// or when time goes backwards.
std::vector<TouchPoint> ReadTouchLog(std::istream& in);
void WriteTouchLog(const std::vector<TouchPoint>& points, std::ostream& out);

// Groups events into down..up strokes. Throws InputError on a move or up
// without a preceding down.
std::vector<Stroke> SplitStrokes(const std::vector<TouchPoint>& points);

// Path length of a stroke.
double StrokeLength(const Stroke& s);

}  // namespace fstkey

#endif  // FSTKEY_SPATIAL_TOUCH_H_
