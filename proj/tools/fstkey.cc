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

// fstkey command line: build | decode | eval | lm-train | serve.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fstkey/errors.h"
#include "fstkey/harness/eval.h"
#include "fstkey/harness/resources.h"
#include "fstkey/harness/service.h"
#include "fstkey/json_util.h"
#include "fstkey/spatial/likelihood.h"
#include "json.hpp"

namespace fstkey {
namespace {

struct Config {
  GraphOptions graph;
  DecoderConfig decoder;
  EvalOptions eval;
};

Config LoadConfig(const std::string& path) {
  Config c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError(path + ": not valid JSON");
  JsonFields f(j, "config");
  if (const auto* o = f.Object("graph")) MergeJson(*o, c.graph);
  if (const auto* o = f.Object("decoder")) MergeJson(*o, c.decoder);
  if (const auto* o = f.Object("eval")) MergeJson(*o, c.eval);
  f.RejectUnknown();
  return c;
}

struct Sources {
  std::string layout = FSTKEY_DEFAULT_DATA "/qwerty.json";
  std::string words = FSTKEY_DEFAULT_DATA "/words.txt";
  std::string corpus = FSTKEY_DEFAULT_DATA "/sentences.txt";
  std::string lm;
  int max_words = 10000;
  int order = 3;
  double prior_weight = 1.0;
  double discount = 0.5;

  void Add(CLI::App* cmd, bool with_lm) {
    cmd->add_option("--layout", layout, "Layout JSON")->capture_default_str();
    cmd->add_option("--words", words, "Word list (word<TAB>count)")->capture_default_str();
    cmd->add_option("--corpus", corpus, "Training sentences")->capture_default_str();
    cmd->add_option("--max-words", max_words, "Keep the first N words")->capture_default_str();
    cmd->add_option("--order", order, "n-gram order")->capture_default_str();
    cmd->add_option("--prior-weight", prior_weight, "Word-list unigram mass per corpus token")
        ->capture_default_str();
    cmd->add_option("--discount", discount)->capture_default_str();
    if (with_lm) cmd->add_option("--lm", lm, "ARPA model; trained from --corpus when absent");
  }

  WordList Words(const std::vector<std::vector<std::string>>& corpus_sentences) const {
    WordList w = TopWords(ReadWordList(words), max_words);
    for (const auto& s : corpus_sentences) {
      for (const auto& t : s) w.emplace_back(t, 0.0);
    }
    return w;
  }

  NGramModel Model(const std::vector<std::vector<std::string>>& sentences) const {
    if (!lm.empty()) {
      std::ifstream in(lm);
      if (!in) throw InputError("cannot open " + lm);
      return NGramModel::ReadArpa(in);
    }
    return TrainModel(sentences, TopWords(ReadWordList(words), max_words), order, prior_weight,
                      discount);
  }

  std::shared_ptr<const DecoderGraph> Graph(const GraphOptions& options) const {
    const auto sentences = ReadSentences(corpus);
    return DecoderGraph::Build(KeyboardLayout::Load(layout), LexiconFor(Words(sentences)),
                               Model(sentences), options);
  }
};

int LmTrain(const Sources& src, const std::string& out) {
  const NGramModel m = src.Model(ReadSentences(src.corpus));
  std::ofstream os(out);
  if (!os) throw InputError("cannot write " + out);
  m.WriteArpa(os);
  std::cerr << "fstkey: wrote order-" << m.order() << " model, " << m.vocab().Size()
            << " symbols, to " << out << "\n";
  return 0;
}

int Build(const Sources& src, const Config& c, const std::string& out) {
  const auto g = src.Graph(c.graph);
  g->Save(out);
  std::cerr << "fstkey: " << g->words().Size() << " output symbols, " << g->cl().NumStates()
            << " C o L states, " << g->g().fst.NumStates() << " G states -> " << out << "\n";
  return 0;
}

// Touch log to JSON lines: one update per tap or gesture, one commit per
// space tap, and the final text.
int Decode(const std::string& graph_path, const std::string& input, const Config& c) {
  const auto g = DecoderGraph::Load(graph_path);
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!input.empty() && input != "-") {
    file.open(input);
    if (!file) throw InputError("cannot open " + input);
    in = &file;
  }
  Session s(g, c.decoder);
  const KeyboardLayout& layout = g->layout();
  for (const Stroke& stroke : SplitStrokes(ReadTouchLog(*in))) {
    const TouchPoint& p = stroke.front();
    const bool tap = stroke.size() <= 2 && StrokeLength(stroke) < layout.key(0).w / 2;
    if (tap) {
      const auto k = layout.KeyAt(p.x, p.y);
      if (k && layout.IsSeparator(*k)) {
        std::cout << nlohmann::json{{"commit", ToJson(s.Commit())}}.dump() << "\n";
      } else {
        std::cout << nlohmann::json{{"update", ToJson(s.Tap(p))}}.dump() << "\n";
      }
    } else {
      std::cout << nlohmann::json{{"update", ToJson(s.Gesture(stroke))}}.dump() << "\n";
    }
  }
  if (s.NumFrames() > 0) {
    std::cout << nlohmann::json{{"commit", ToJson(s.Commit())}}.dump() << "\n";
  }
  std::cout << nlohmann::json{{"text", s.Text()}}.dump() << "\n";
  return 0;
}

int Eval(const Sources& src, Config c, const std::string& sentences_path,
         const std::vector<std::string>& variants, const std::vector<std::string>& modes,
         bool outputs) {
  const auto pool = ReadSentences(sentences_path);
  const auto corpus = DrawSentences(pool, c.eval.sentences, c.eval.seed);
  const auto graph = src.Graph(c.graph);
  std::shared_ptr<const DecoderGraph> baseline;
  nlohmann::json reports = nlohmann::json::array();
  for (const std::string& mode : modes) {
    for (const std::string& v : variants) {
      EvalOptions o = c.eval;
      MergeJson(nlohmann::json{{"mode", mode}, {"variant", v}}, o);
      auto g = graph;
      if (o.variant == EvalVariant::kBaseline) {
        if (!baseline) {
          GraphOptions bo = c.graph;
          bo.lookahead = false;
          baseline = src.Graph(bo);
        }
        g = baseline;
      }
      const EvalReport r = Evaluate(corpus, g, c.decoder, o);
      reports.push_back(ToJson(r, outputs));
      std::cerr << mode << " " << v << ": WER " << r.wer() << " (literal " << r.literal_wer()
                << "), p50 " << r.LatencyPercentile(0.5) << " ms\n";
    }
  }
  std::cout << nlohmann::json{{"options", ToJson(c.eval)}, {"reports", reports}}.dump(2) << "\n";
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"fstkey: FST keyboard decoder"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON overrides {graph, decoder, eval}");

  Sources src;
  std::string out, graph_path, input, sentences = FSTKEY_DEFAULT_DATA "/sentences.txt";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::vector<std::string> variants{"literal", "baseline", "fst", "fst_pc"};
  std::vector<std::string> modes{"tap"};
  bool outputs = false;

  auto* lm = app.add_subcommand("lm-train", "Train a backoff n-gram model to ARPA");
  src.Add(lm, false);
  lm->add_option("--out", out, "ARPA output")->required();

  auto* build = app.add_subcommand("build", "Build and serialize the decoder graph");
  src.Add(build, true);
  build->add_option("--out", out, "Graph output")->required();

  auto* decode = app.add_subcommand("decode", "Decode a JSON-lines touch log");
  decode->add_option("--graph", graph_path)->required();
  decode->add_option("--input", input, "Touch log (default stdin)");

  auto* eval = app.add_subcommand("eval", "WER on synthesized input");
  src.Add(eval, true);
  eval->add_option("--sentences", sentences, "Evaluation sentence pool")->capture_default_str();
  eval->add_option("--variant", variants, "literal, baseline, fst, fst_pc");
  eval->add_option("--mode", modes, "tap, gesture");
  eval->add_flag("--outputs", outputs, "Include decoded sentences");

  auto* serve = app.add_subcommand("serve", "HTTP session protocol");
  serve->add_option("--graph", graph_path)->required();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();

  for (auto* cmd : {lm, build, decode, eval, serve}) {
    cmd->add_option("--config", config_path, "JSON overrides {graph, decoder, eval}");
  }
  CLI11_PARSE(app, argc, argv);
  const Config c = LoadConfig(config_path);

  if (lm->parsed()) return LmTrain(src, out);
  if (build->parsed()) return Build(src, c, out);
  if (decode->parsed()) return Decode(graph_path, input, c);
  if (eval->parsed()) return Eval(src, c, sentences, variants, modes, outputs);
  SessionService service(DecoderGraph::Load(graph_path), c.decoder);
  Serve(service, host, port);
  return 0;
}

}  // namespace
}  // namespace fstkey

int main(int argc, char** argv) {
  try {
    return fstkey::Main(argc, argv);
  } catch (const fstkey::ConfigError& e) {
    std::cerr << "fstkey: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fstkey: " << e.what() << "\n";
    return 1;
  }
}
