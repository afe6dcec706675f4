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

#include "fstkey/lm/dynamic_ngram.h"

#include <cmath>
#include <mutex>

#include "fstkey/errors.h"
#include "json.hpp"

namespace fstkey {

DynamicNGram::DynamicNGram(const DynamicNGram& other) { *this = other; }

DynamicNGram& DynamicNGram::operator=(const DynamicNGram& other) {
  if (this == &other) return *this;
  std::shared_lock theirs(other.mu_);
  std::unique_lock mine(mu_);
  beta_ = other.beta_;
  unigrams_ = other.unigrams_;
  bigrams_ = other.bigrams_;
  context_totals_ = other.context_totals_;
  total_ = other.total_;
  return *this;
}

void DynamicNGram::Observe(const std::vector<std::string>& words,
                           double timestamp,
                           const std::optional<std::string>& previous) {
  std::unique_lock lock(mu_);
  const std::string* prev = previous ? &*previous : nullptr;
  for (const std::string& w : words) {
    Count& u = unigrams_[w];
    u.count += 1;
    u.timestamp = timestamp;
    total_ += 1;
    if (prev) {
      Count& b = bigrams_[{*prev, w}];
      b.count += 1;
      b.timestamp = timestamp;
      context_totals_[*prev] += 1;
    }
    prev = &w;
  }
}

void DynamicNGram::Decay(double factor) {
  if (!(factor >= 0 && factor <= 1)) throw ConfigError("decay factor must be in [0, 1]");
  std::unique_lock lock(mu_);
  for (auto& [w, c] : unigrams_) c.count *= factor;
  for (auto& [k, c] : bigrams_) c.count *= factor;
  for (auto& [k, t] : context_totals_) t *= factor;
  total_ *= factor;
}

double DynamicNGram::ScoreLocked(
    const std::string& word, const std::optional<std::string>& context) const {
  auto u = unigrams_.find(word);
  if (u == unigrams_.end() || !(u->second.count > 0) || !(total_ > 0)) return -1;
  const double p_uni = u->second.count / total_;
  if (!context) return p_uni;
  double joint = 0, ctx_total = 0;
  if (auto b = bigrams_.find({*context, word}); b != bigrams_.end()) {
    joint = b->second.count;
  }
  if (auto t = context_totals_.find(*context); t != context_totals_.end()) {
    ctx_total = t->second;
  }
  return (joint + beta_ * p_uni) / (ctx_total + beta_);
}

std::optional<Weight> DynamicNGram::Score(
    const std::string& word, const std::optional<std::string>& context) const {
  std::shared_lock lock(mu_);
  const double p = ScoreLocked(word, context);
  if (p <= 0) return std::nullopt;
  return Weight(-std::log(p));
}

std::optional<Weight> DynamicNGram::UnigramScore(const std::string& word) const {
  return Score(word, std::nullopt);
}

double DynamicNGram::UnigramCount(const std::string& word) const {
  std::shared_lock lock(mu_);
  auto it = unigrams_.find(word);
  return it == unigrams_.end() ? 0 : it->second.count;
}

double DynamicNGram::BigramCount(const std::string& context,
                                 const std::string& word) const {
  std::shared_lock lock(mu_);
  auto it = bigrams_.find({context, word});
  return it == bigrams_.end() ? 0 : it->second.count;
}

double DynamicNGram::TotalCount() const {
  std::shared_lock lock(mu_);
  return total_;
}

std::vector<std::string> DynamicNGram::Vocabulary() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [w, c] : unigrams_) {
    if (c.count > 0) out.push_back(w);
  }
  return out;
}

void DynamicNGram::Save(std::ostream& out) const {
  std::shared_lock lock(mu_);
  for (const auto& [w, c] : unigrams_) {
    out << nlohmann::json{{"ngram", {w}}, {"count", c.count}, {"t", c.timestamp}}.dump()
        << '\n';
  }
  for (const auto& [k, c] : bigrams_) {
    out << nlohmann::json{{"ngram", {k.first, k.second}},
                          {"count", c.count},
                          {"t", c.timestamp}}
               .dump()
        << '\n';
  }
}

DynamicNGram DynamicNGram::Load(std::istream& in, double beta) {
  DynamicNGram d(beta);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto ngram = j.at("ngram").get<std::vector<std::string>>();
      const Count c{j.at("count").get<double>(), j.value("t", 0.0)};
      if (c.count < 0) throw ParseError("negative count", lineno);
      if (ngram.size() == 1) {
        d.unigrams_[ngram[0]] = c;
        d.total_ += c.count;
      } else if (ngram.size() == 2) {
        d.bigrams_[{ngram[0], ngram[1]}] = c;
        d.context_totals_[ngram[0]] += c.count;
      } else {
        throw ParseError("only unigrams and bigrams are stored", lineno);
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return d;
}

}  // namespace fstkey
