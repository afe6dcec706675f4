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

#ifndef FSTKEY_TESTS_TEST_UTIL_H_
#define FSTKEY_TESTS_TEST_UTIL_H_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fstkey/fst/algorithms.h"
#include "fstkey/fst/fst.h"

namespace fstkey::testing {

// Random machine over labels 1..alphabet. Input-epsilon arcs only go to
// higher-numbered states so no epsilon cycle exists.
inline WeightedFst RandomFst(std::mt19937& rng, int num_states, int alphabet,
                             double arc_prob = 0.35, double eps_prob = 0.15,
                             bool acyclic = false) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> label(1, alphabet);
  WeightedFst f;
  for (int i = 0; i < num_states; ++i) f.AddState();
  f.SetStart(0);
  for (int s = 0; s < num_states; ++s) {
    for (int t = 0; t < num_states; ++t) {
      if (acyclic && t <= s) continue;
      if (unit(rng) < arc_prob) {
        const bool ieps = t > s && unit(rng) < eps_prob;
        const bool oeps = unit(rng) < eps_prob;
        // Weights on a coarse grid keep tropical sums exact.
        const double w = std::round(unit(rng) * 16.0) / 8.0;
        f.AddArc(s, {ieps ? 0 : label(rng), oeps ? 0 : label(rng), Weight(w), t});
      }
    }
    if (unit(rng) < 0.4 || s == num_states - 1) {
      f.SetFinal(s, Weight(std::round(unit(rng) * 8.0) / 8.0));
    }
  }
  return f;
}

// Product construction without any epsilon filter. Duplicate paths are
// harmless under min, so its relation is the reference composition.
inline WeightedFst NaivePairCompose(const WeightedFst& a, const WeightedFst& b) {
  WeightedFst out;
  const int nb = b.NumStates();
  for (int i = 0; i < a.NumStates() * nb; ++i) out.AddState();
  out.SetStart(a.Start() * nb + b.Start());
  for (StateId qa = 0; qa < a.NumStates(); ++qa) {
    for (StateId qb = 0; qb < nb; ++qb) {
      const StateId s = qa * nb + qb;
      out.SetFinal(s, Times(a.Final(qa), b.Final(qb)));
      for (const Arc& x : a.Arcs(qa)) {
        if (x.olabel == 0) {
          out.AddArc(s, {x.ilabel, 0, x.weight, x.nextstate * nb + qb});
          continue;
        }
        for (const Arc& y : b.Arcs(qb)) {
          if (y.ilabel == x.olabel) {
            out.AddArc(s, {x.ilabel, y.olabel, Times(x.weight, y.weight),
                           x.nextstate * nb + y.nextstate});
          }
        }
      }
      for (const Arc& y : b.Arcs(qb)) {
        if (y.ilabel == 0) {
          out.AddArc(s, {0, y.olabel, y.weight, qa * nb + y.nextstate});
        }
      }
    }
  }
  return out;
}

inline bool SameRelation(const Relation& x, const Relation& y,
                         double tol = 1e-9) {
  if (x.size() != y.size()) return false;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end() || std::abs(it->second - v) > tol) return false;
  }
  return true;
}

}  // namespace fstkey::testing

#endif  // FSTKEY_TESTS_TEST_UTIL_H_
