// Copyright 2026 The Rolegrad Authors.
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

#include "rolegrad/run_config.h"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "rolegrad/error.h"

namespace rolegrad {

namespace {

using Json = nlohmann::ordered_json;

// Named lambda rows share a 30 + 5 epoch schedule. Desk presets train the
// synthetic corpus from scratch with larger rates.
const std::map<std::string, std::string, std::less<>>& presets() {
  static const std::map<std::string, std::string, std::less<>> kPresets = {
      {"conll05-3pct-ufo",
       R"({"name": "conll05-3pct-ufo", "constraints": "UOF", "lambda_u": 2, "lambda_o": 0.5, "lambda_f": 0.5, "beam_k": 4, "epochs1": 30, "lr1": 3e-05, "epochs2": 5, "lr2": 1e-05, "warmup": 0.1})"},
      {"conll12-3pct-ufo",
       R"({"name": "conll12-3pct-ufo", "constraints": "UOF", "lambda_u": 1, "lambda_o": 2, "lambda_f": 1, "beam_k": 4, "epochs1": 30, "lr1": 3e-05, "epochs2": 5, "lr2": 1e-05, "warmup": 0.1})"},
      {"conll05-full-u",
       R"({"name": "conll05-full-u", "constraints": "U", "lambda_u": 1, "lambda_o": 0, "lambda_f": 0, "beam_k": 4, "epochs1": 30, "lr1": 3e-05, "epochs2": 5, "lr2": 1e-05, "warmup": 0.1})"},
      {"conll05-full-uf",
       R"({"name": "conll05-full-uf", "constraints": "UF", "lambda_u": 1, "lambda_o": 0, "lambda_f": 0.5, "beam_k": 4, "epochs1": 30, "lr1": 3e-05, "epochs2": 5, "lr2": 1e-05, "warmup": 0.1})"},
      {"conll05-full-ufo",
       R"({"name": "conll05-full-ufo", "constraints": "UOF", "lambda_u": 1, "lambda_o": 0.5, "lambda_f": 0.1, "beam_k": 4, "epochs1": 30, "lr1": 3e-05, "epochs2": 5, "lr2": 1e-05, "warmup": 0.1})"},
      {"conll12-full-ufo",
       R"({"name": "conll12-full-ufo", "constraints": "UOF", "lambda_u": 1, "lambda_o": 1, "lambda_f": 0.1, "beam_k": 4, "epochs1": 30, "lr1": 3e-05, "epochs2": 5, "lr2": 1e-05, "warmup": 0.1})"},
      {"bert-conll12-full-ufo",
       R"({"name": "bert-conll12-full-ufo", "constraints": "UOF", "lambda_u": 0.5, "lambda_o": 1, "lambda_f": 0.1, "beam_k": 4, "epochs1": 30, "lr1": 3e-05, "epochs2": 5, "lr2": 1e-05, "warmup": 0.1})"},
      {"desk-baseline",
       R"({"name": "desk-baseline", "constraints": "", "lambda_u": 0, "lambda_o": 0, "lambda_f": 0, "beam_k": 4, "epochs1": 20, "lr1": 0.01, "epochs2": 10, "lr2": 0.002, "warmup": 0.1, "freeze_transitions": true})"},
      {"desk-u",
       R"({"name": "desk-u", "constraints": "U", "lambda_u": 1, "lambda_o": 0, "lambda_f": 0, "beam_k": 4, "epochs1": 20, "lr1": 0.01, "epochs2": 10, "lr2": 0.002, "warmup": 0.1, "freeze_transitions": true})"},
      {"desk-ufo",
       R"({"name": "desk-ufo", "constraints": "UOF", "lambda_u": 1, "lambda_o": 0.5, "lambda_f": 0.1, "beam_k": 4, "epochs1": 20, "lr1": 0.01, "epochs2": 10, "lr2": 0.002, "warmup": 0.1, "freeze_transitions": true})"},
  };
  return kPresets;
}

template <typename T>
T get(const Json& doc, const char* key, std::string_view source) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string(source) + ": bad value for \"" + key + "\"");
  }
}

}  // namespace

void RunConfig::validate() const {
  schedule.validate();
  weights.validate();
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (model.embed_dim < 1 || model.hidden_dim < 1) {
    throw ConfigError("model dimensions must be positive");
  }
  if (!(model.dropout >= 0.0 && model.dropout < 1.0)) {
    throw ConfigError("dropout must lie in [0, 1)");
  }
  if (constraints) {
    for (char c : *constraints) {
      if (c != 'U' && c != 'O' && c != 'F') {
        throw ConfigError("constraints must be a subset of \"UOF\", got \"" +
                          *constraints + "\"");
      }
    }
    const std::pair<char, double> pairs[] = {{'U', weights.lambda_u},
                                             {'O', weights.lambda_o},
                                             {'F', weights.lambda_f}};
    for (const auto& [family, lambda] : pairs) {
      if (lambda > 0.0 && !enabled(family)) {
        throw ConfigError(std::string("lambda_") +
                          static_cast<char>(std::tolower(family)) +
                          " > 0 but constraint " + family + " is disabled");
      }
    }
  }
}

bool RunConfig::enabled(char family) const {
  if (constraints) return constraints->find(family) != std::string::npos;
  switch (family) {
    case 'U': return weights.lambda_u > 0.0;
    case 'O': return weights.lambda_o > 0.0;
    case 'F': return weights.lambda_f > 0.0;
    default: return false;
  }
}

std::string RunConfig::to_json() const {
  Json doc;
  doc["name"] = name;
  doc["train"] = train;
  doc["dev"] = dev;
  doc["test"] = test;
  doc["frames"] = frames;
  doc["out"] = out;
  if (constraints) doc["constraints"] = *constraints;
  doc["lambda_u"] = weights.lambda_u;
  doc["lambda_o"] = weights.lambda_o;
  doc["lambda_f"] = weights.lambda_f;
  doc["beam_k"] = weights.beam_k;
  doc["epsilon"] = weights.epsilon;
  doc["epochs1"] = schedule.stage1_epochs;
  doc["lr1"] = schedule.stage1_lr;
  doc["epochs2"] = schedule.stage2_epochs;
  doc["lr2"] = schedule.stage2_lr;
  doc["warmup"] = schedule.warmup_fraction;
  doc["batch_size"] = schedule.batch_size;
  doc["freeze_transitions"] = schedule.freeze_transitions;
  doc["seed"] = schedule.seed;
  doc["embed_dim"] = model.embed_dim;
  doc["hidden_dim"] = model.hidden_dim;
  doc["dropout"] = model.dropout;
  doc["hard_transitions"] = model.hard_transitions;
  doc["token_ce"] = model.token_ce;
  doc["threads"] = threads;
  return doc.dump(2);
}

RunConfig merge_config(const RunConfig& base, std::string_view json_text,
                       std::string_view source) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError(std::string(source) + ": config must be a JSON object");
  }
  RunConfig c = base;
  for (const auto& [key, value] : doc.items()) {
    const char* k = key.c_str();
    if (key == "name") c.name = get<std::string>(doc, k, source);
    else if (key == "train") c.train = get<std::string>(doc, k, source);
    else if (key == "dev") c.dev = get<std::string>(doc, k, source);
    else if (key == "test") c.test = get<std::string>(doc, k, source);
    else if (key == "frames") c.frames = get<std::string>(doc, k, source);
    else if (key == "out") c.out = get<std::string>(doc, k, source);
    else if (key == "constraints") c.constraints = get<std::string>(doc, k, source);
    else if (key == "lambda_u") c.weights.lambda_u = get<double>(doc, k, source);
    else if (key == "lambda_o") c.weights.lambda_o = get<double>(doc, k, source);
    else if (key == "lambda_f") c.weights.lambda_f = get<double>(doc, k, source);
    else if (key == "beam_k") c.weights.beam_k = get<int>(doc, k, source);
    else if (key == "epsilon") c.weights.epsilon = get<double>(doc, k, source);
    else if (key == "epochs1") c.schedule.stage1_epochs = get<int>(doc, k, source);
    else if (key == "lr1") c.schedule.stage1_lr = get<double>(doc, k, source);
    else if (key == "epochs2") c.schedule.stage2_epochs = get<int>(doc, k, source);
    else if (key == "lr2") c.schedule.stage2_lr = get<double>(doc, k, source);
    else if (key == "warmup") c.schedule.warmup_fraction = get<double>(doc, k, source);
    else if (key == "batch_size") c.schedule.batch_size = get<int>(doc, k, source);
    else if (key == "freeze_transitions") c.schedule.freeze_transitions = get<bool>(doc, k, source);
    else if (key == "seed") c.schedule.seed = get<std::uint64_t>(doc, k, source);
    else if (key == "embed_dim") c.model.embed_dim = get<int>(doc, k, source);
    else if (key == "hidden_dim") c.model.hidden_dim = get<int>(doc, k, source);
    else if (key == "dropout") c.model.dropout = get<double>(doc, k, source);
    else if (key == "hard_transitions") c.model.hard_transitions = get<bool>(doc, k, source);
    else if (key == "token_ce") c.model.token_ce = get<bool>(doc, k, source);
    else if (key == "threads") c.threads = get<int>(doc, k, source);
    else throw ConfigError(std::string(source) + ": unknown key \"" + key + "\"");
  }
  return c;
}

RunConfig load_run_config(const std::string& name_or_path) {
  if (auto text = preset_json(name_or_path)) {
    return merge_config(RunConfig{}, *text, name_or_path);
  }
  if (!std::filesystem::exists(name_or_path)) {
    const std::string stem =
        std::filesystem::path(name_or_path).stem().string();
    if (auto text = preset_json(stem)) {
      return merge_config(RunConfig{}, *text, stem);
    }
    throw ConfigError("no preset or config file named " + name_or_path);
  }
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("cannot read " + name_or_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return merge_config(RunConfig{}, buf.str(), name_or_path);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& [name, text] : presets()) names.push_back(name);
    return names;
  }();
  return kNames;
}

std::optional<std::string> preset_json(std::string_view name) {
  auto it = presets().find(name);
  if (it == presets().end()) return std::nullopt;
  return it->second;
}

}  // namespace rolegrad
