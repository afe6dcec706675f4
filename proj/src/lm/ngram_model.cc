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

#include "fstkey/lm/ngram_model.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fstkey/errors.h"
#include "fstkey/text.h"

namespace fstkey {
namespace {

constexpr double kLn10 = 2.302585092994046;
// ARPA stand-in for log10(0), used for <s>.
constexpr double kLog10Zero = -99.0;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

NGramModel NGramModel::Train(
    const std::vector<std::vector<std::string>>& sentences, int order,
    const std::vector<std::string>& vocabulary, double discount,
    std::span<const double> unigram_prior) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  if (vocabulary.empty()) throw ConfigError("empty vocabulary");
  if (!(discount > 0 && discount < 1)) {
    throw ConfigError("discount must lie in (0, 1)");
  }
  NGramModel m;
  m.order_ = order;
  m.bos_ = m.vocab_.AddSymbol(kBos);
  m.eos_ = m.vocab_.AddSymbol(kEos);
  m.unk_ = m.vocab_.AddSymbol(kUnk);
  for (const std::string& w : vocabulary) m.vocab_.AddSymbol(w);

  std::vector<std::map<NGram, double>> counts(order);
  size_t tokens = 0;
  for (const auto& sentence : sentences) {
    NGram seq{m.bos_};
    for (const std::string& w : sentence) {
      const auto id = m.vocab_.Find(w);
      Label l = id ? *id : m.unk_;
      if (l == m.bos_ || l == m.eos_) l = m.unk_;
      seq.push_back(l);
    }
    seq.push_back(m.eos_);
    tokens += seq.size() - 1;
    for (size_t i = 1; i < seq.size(); ++i) {
      for (int n = 1; n <= order && static_cast<int>(i) + 1 >= n; ++n) {
        counts[n - 1][NGram(seq.begin() + (i + 1 - n), seq.begin() + i + 1)] += 1;
      }
    }
  }
  if (tokens == 0) throw InputError("empty training corpus");
  if (!unigram_prior.empty() && unigram_prior.size() != vocabulary.size()) {
    throw ConfigError("unigram prior needs one count per vocabulary word");
  }
  double mass = static_cast<double>(tokens);
  for (size_t i = 0; i < unigram_prior.size(); ++i) {
    if (!(unigram_prior[i] >= 0)) throw ConfigError("negative unigram prior");
    if (unigram_prior[i] == 0) continue;
    counts[0][{*m.vocab_.Find(vocabulary[i])}] += unigram_prior[i];
    mass += unigram_prior[i];
  }

  m.ngrams_.assign(order, {});
  // Unigrams: discounted mass goes uniformly to unseen words and <unk>.
  const double total = mass;
  const auto& uni = counts[0];
  std::vector<Label> unseen;
  for (Label l = 1; l < m.vocab_.Size(); ++l) {
    if (l != m.bos_ && !uni.count({l})) unseen.push_back(l);
  }
  // Fractional prior counts give up at most half of themselves.
  double freed = 0;
  for (const auto& [g, c] : uni) {
    const double d = std::min(discount, c / 2);
    freed += d;
    m.ngrams_[0][g].log10_prob = std::log10((c - d) / total);
  }
  if (!unseen.empty()) {
    const double share = freed / total / unseen.size();
    for (Label l : unseen) m.ngrams_[0][{l}].log10_prob = std::log10(share);
  }
  m.ngrams_[0][{m.bos_}].log10_prob = kLog10Zero;

  // Higher orders: discounted relative frequencies per context.
  std::vector<std::map<NGram, std::pair<double, int>>> context_stats(order);
  for (int n = 2; n <= order; ++n) {
    auto& stats = context_stats[n - 2];
    for (const auto& [g, c] : counts[n - 1]) {
      auto& s = stats[NGram(g.begin(), g.end() - 1)];
      s.first += c;
      s.second += 1;
    }
    for (const auto& [g, c] : counts[n - 1]) {
      const double ctx = stats[NGram(g.begin(), g.end() - 1)].first;
      m.ngrams_[n - 1][g].log10_prob = std::log10((c - discount) / ctx);
    }
  }
  // Backoff weights, shortest contexts first so lower-order lookups are final.
  for (int n = 2; n <= order; ++n) {
    for (const auto& [h, s] : context_stats[n - 2]) {
      const auto& next = m.ngrams_[n - 1];
      double lower_mass = 0;
      NGram g = h;
      g.push_back(0);
      const std::span<const Label> shorter(h.data() + 1, h.size() - 1);
      for (auto it = next.lower_bound(g); it != next.end(); ++it) {
        if (!std::equal(h.begin(), h.end(), it->first.begin())) break;
        const Label w = it->first.back();
        lower_mass += std::pow(10.0, m.Log10Prob(shorter, w));
      }
      // 1 - explicit mass.
      const double numer = discount * s.second / s.first;
      const double denom = std::max(1.0 - lower_mass, 1e-12);
      m.ngrams_[n - 2][h].log10_backoff = std::log10(numer / denom);
    }
  }
  return m;
}

const NGramModel::Entry* NGramModel::Find(std::span<const Label> ngram) const {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) return nullptr;
  const auto& table = ngrams_[ngram.size() - 1];
  auto it = table.find(NGram(ngram.begin(), ngram.end()));
  return it == table.end() ? nullptr : &it->second;
}

double NGramModel::Log10Prob(std::span<const Label> context, Label word) const {
  if (static_cast<int>(context.size()) > order_ - 1) {
    context = context.subspan(context.size() - (order_ - 1));
  }
  double backoff = 0;
  NGram g(context.begin(), context.end());
  g.push_back(word);
  while (true) {
    if (const Entry* e = Find(g)) return backoff + e->log10_prob;
    if (g.size() == 1) return -std::numeric_limits<double>::infinity();
    if (const Entry* h = Find(std::span<const Label>(g.data(), g.size() - 1))) {
      backoff += h->log10_backoff;
    }
    g.erase(g.begin());
  }
}

double NGramModel::Cost(std::span<const Label> context, Label word) const {
  return -kLn10 * Log10Prob(context, word);
}

double NGramModel::SentenceCost(std::span<const Label> words) const {
  if (bos_ == kNoLabel || eos_ == kNoLabel) {
    throw ConfigError("model has no sentence markers");
  }
  NGram ctx{bos_};
  double cost = 0;
  for (Label w : words) {
    cost += Cost(ctx, w);
    ctx.push_back(w);
  }
  return cost + Cost(ctx, eos_);
}

void NGramModel::Validate() const {
  for (int n = 2; n <= order_; ++n) {
    for (const auto& [g, e] : ngrams_[n - 1]) {
      if (!Find(std::span<const Label>(g.data(), g.size() - 1))) {
        throw ConfigError("n-gram without its context entry");
      }
    }
  }
  double uni = 0;
  for (const auto& [g, e] : ngrams_[0]) uni += std::pow(10.0, e.log10_prob);
  if (uni > 1 + 1e-6) throw ConfigError("unigram mass exceeds 1");
  for (int n = 2; n <= order_; ++n) {
    std::map<NGram, std::pair<double, double>> mass;
    for (const auto& [g, e] : ngrams_[n - 1]) {
      const NGram h(g.begin(), g.end() - 1);
      auto& m = mass[h];
      m.first += std::pow(10.0, e.log10_prob);
      m.second += std::pow(10.0, Log10Prob(std::span<const Label>(h).subspan(1),
                                           g.back()));
    }
    for (const auto& [h, m] : mass) {
      const double bo = std::pow(10.0, Find(h)->log10_backoff);
      if (m.first + bo * std::max(0.0, 1.0 - m.second) > 1 + 1e-6) {
        throw ConfigError("context distributes more than its mass");
      }
    }
  }
}

void NGramModel::WriteArpa(std::ostream& out) const {
  out << "\\data\\\n";
  for (int n = 1; n <= order_; ++n) {
    out << "ngram " << n << "=" << ngrams_[n - 1].size() << "\n";
  }
  for (int n = 1; n <= order_; ++n) {
    out << "\n\\" << n << "-grams:\n";
    for (const auto& [g, e] : ngrams_[n - 1]) {
      out << Num(e.log10_prob) << '\t';
      for (size_t i = 0; i < g.size(); ++i) {
        if (i) out << ' ';
        out << vocab_.Symbol(g[i]);
      }
      if (n < order_) out << '\t' << Num(e.log10_backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

NGramModel NGramModel::ReadArpa(std::istream& in) {
  NGramModel m;
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  // Headers before \data\ are ignored.
  bool found = false;
  while (next()) {
    if (line == "\\data\\") {
      found = true;
      break;
    }
  }
  if (!found) throw ParseError("missing \\data\\ section", lineno);
  std::vector<size_t> expected;
  while (next() && line.rfind("ngram ", 0) == 0) {
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("bad ngram count line", lineno);
    int n = 0;
    long long count = 0;
    try {
      n = std::stoi(line.substr(6, eq - 6));
      count = std::stoll(line.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("bad ngram count line", lineno);
    }
    if (n != static_cast<int>(expected.size()) + 1 || count < 0) {
      throw ParseError("ngram counts out of order", lineno);
    }
    expected.push_back(static_cast<size_t>(count));
  }
  if (expected.empty()) throw ParseError("no ngram counts", lineno);
  m.order_ = static_cast<int>(expected.size());
  m.ngrams_.assign(m.order_, {});

  for (int n = 1; n <= m.order_; ++n) {
    if (line != "\\" + std::to_string(n) + "-grams:") {
      throw ParseError("expected \\" + std::to_string(n) + "-grams:", lineno);
    }
    size_t read = 0;
    while (next() && line[0] != '\\') {
      std::istringstream fields(line);
      std::vector<std::string> tok;
      for (std::string t; fields >> t;) tok.push_back(t);
      if (tok.size() != static_cast<size_t>(n) + 1 &&
          tok.size() != static_cast<size_t>(n) + 2) {
        throw ParseError("wrong number of fields", lineno);
      }
      Entry e;
      try {
        e.log10_prob = std::stod(tok[0]);
        if (tok.size() == static_cast<size_t>(n) + 2) {
          e.log10_backoff = std::stod(tok.back());
        }
      } catch (const std::exception&) {
        throw ParseError("bad number", lineno);
      }
      NGram g;
      for (int i = 1; i <= n; ++i) {
        if (n == 1) {
          g.push_back(m.vocab_.AddSymbol(tok[i]));
        } else {
          const auto id = m.vocab_.Find(tok[i]);
          if (!id) throw ParseError("word '" + tok[i] + "' has no unigram", lineno);
          g.push_back(*id);
        }
      }
      if (!m.ngrams_[n - 1].emplace(g, e).second) {
        throw ParseError("duplicate n-gram", lineno);
      }
      ++read;
    }
    if (read != expected[n - 1]) {
      throw ParseError("expected " + std::to_string(expected[n - 1]) + " " +
                           std::to_string(n) + "-grams, found " +
                           std::to_string(read),
                       lineno);
    }
  }
  if (line != "\\end\\") throw ParseError("missing \\end\\", lineno);
  auto find = [&](const char* s) {
    const auto id = m.vocab_.Find(s);
    return id ? *id : kNoLabel;
  };
  m.bos_ = find(kBos);
  m.eos_ = find(kEos);
  m.unk_ = find(kUnk);
  return m;
}

}  // namespace fstkey
