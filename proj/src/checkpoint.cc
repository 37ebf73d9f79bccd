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

#include "rolegrad/checkpoint.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rolegrad/error.h"

namespace rolegrad {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  h ^= 0xff;
  h *= kFnvPrime;
}

Json config_json(const ModelConfig& c) {
  Json j;
  j["vocab_size"] = c.vocab_size;
  j["num_tags"] = c.num_tags;
  j["embed_dim"] = c.embed_dim;
  j["hidden_dim"] = c.hidden_dim;
  j["dropout"] = c.dropout;
  j["hard_transitions"] = c.hard_transitions;
  j["token_ce"] = c.token_ce;
  return j;
}

}  // namespace

std::uint64_t config_hash(const Tagger& tagger) {
  std::uint64_t h = kFnvOffset;
  fnv(h, config_json(tagger.params.config).dump());
  for (const auto& a : tagger.labels.args()) fnv(h, a);
  fnv(h, "|");
  for (const auto& a : tagger.labels.core()) fnv(h, a);
  fnv(h, "|");
  for (const auto& t : tagger.vocab.tokens()) fnv(h, t);
  return h;
}

std::string config_hash_hex(const Tagger& tagger) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(config_hash(tagger)));
  return buf;
}

std::string checkpoint_json(const Tagger& tagger) {
  Json doc;
  doc["format"] = "rolegrad-checkpoint";
  doc["version"] = kCheckpointVersion;
  doc["config"] = config_json(tagger.params.config);
  doc["config_hash"] = config_hash_hex(tagger);
  doc["labels"]["all"] = tagger.labels.args();
  doc["labels"]["core"] = tagger.labels.core();
  doc["vocab"] = tagger.vocab.tokens();
  Json tensors = Json::object();
  for (int p = 0; p < kNumParams; ++p) {
    const Eigen::MatrixXd& m = tagger.params[p];
    Json t;
    t["rows"] = m.rows();
    t["cols"] = m.cols();
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    }
    t["data"] = std::move(data);
    tensors[param_name(p)] = std::move(t);
  }
  doc["tensors"] = std::move(tensors);
  return doc.dump();
}

Tagger parse_checkpoint(std::string_view text) {
  try {
    const Json doc = Json::parse(text);
    if (doc.value("format", "") != "rolegrad-checkpoint") {
      throw DataError("not a rolegrad checkpoint");
    }
    if (doc.at("version").get<int>() != kCheckpointVersion) {
      throw DataError("unsupported checkpoint version " +
                      doc.at("version").dump());
    }
    const Json& c = doc.at("config");
    ModelConfig config;
    config.vocab_size = c.at("vocab_size").get<int>();
    config.num_tags = c.at("num_tags").get<int>();
    config.embed_dim = c.at("embed_dim").get<int>();
    config.hidden_dim = c.at("hidden_dim").get<int>();
    config.dropout = c.at("dropout").get<double>();
    config.hard_transitions = c.at("hard_transitions").get<bool>();
    config.token_ce = c.at("token_ce").get<bool>();
    config.validate();

    Tagger tagger{
        LabelSet(doc.at("labels").at("all").get<std::vector<std::string>>(),
                 doc.at("labels").at("core").get<std::vector<std::string>>()),
        Vocabulary::from_tokens(doc.at("vocab").get<std::vector<std::string>>()),
        {}};
    if (tagger.labels.num_tags() != config.num_tags ||
        tagger.vocab.size() != config.vocab_size) {
      throw DataError("checkpoint config disagrees with its labels or vocab");
    }
    tagger.params = ModelParams::initialize(config, 0);
    const Json& tensors = doc.at("tensors");
    for (int p = 0; p < kNumParams; ++p) {
      const Json& t = tensors.at(param_name(p));
      Eigen::MatrixXd& m = tagger.params[p];
      if (t.at("rows").get<Eigen::Index>() != m.rows() ||
          t.at("cols").get<Eigen::Index>() != m.cols()) {
        throw DataError(std::string("shape mismatch for tensor ") +
                        param_name(p));
      }
      const std::vector<double> data = t.at("data").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(data.size()) != m.size()) {
        throw DataError(std::string("wrong element count for tensor ") +
                        param_name(p));
      }
      std::size_t k = 0;
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index col = 0; col < m.cols(); ++col) m(r, col) = data[k++];
      }
    }
    if (doc.at("config_hash").get<std::string>() != config_hash_hex(tagger)) {
      throw DataError("checkpoint config hash mismatch");
    }
    return tagger;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const Tagger& tagger, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << checkpoint_json(tagger) << '\n';
  if (!out) throw DataError("failed writing " + path);
}

Tagger load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

}  // namespace rolegrad
