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

#include "rolegrad/frames.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rolegrad/error.h"

namespace rolegrad {

using nlohmann::json;

void FrameInventory::add(const std::string& lemma, const std::string& sense,
                         std::vector<std::string> roles,
                         const LabelSet& labels) {
  for (const std::string& r : roles) {
    const int a = labels.arg_index(r);
    if (a < 0 || !labels.is_core(a)) {
      throw DataError("unknown core label \"" + r + "\" in roleset " + lemma +
                      "." + sense);
    }
  }
  if (!rolesets_.emplace(Key{lemma, sense}, std::move(roles)).second) {
    throw DataError("duplicate roleset " + lemma + "." + sense);
  }
}

const std::vector<std::string>* FrameInventory::find(
    std::string_view lemma, std::string_view sense) const {
  auto it = rolesets_.find(Key{std::string(lemma), std::string(sense)});
  return it == rolesets_.end() ? nullptr : &it->second;
}

std::vector<int> FrameInventory::allowed_args(std::string_view lemma,
                                              std::string_view sense,
                                              const LabelSet& labels) const {
  const auto* roles = find(lemma, sense);
  if (roles == nullptr) {
    throw std::out_of_range("no roleset for " + std::string(lemma) + "." +
                            std::string(sense));
  }
  std::vector<int> out;
  for (const std::string& r : *roles) out.push_back(labels.arg_index(r));
  return out;
}

FrameInventory FrameInventory::parse(std::string_view json_text,
                                     const LabelSet& labels) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed frames JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("frames file must be a JSON object");
  FrameInventory inv;
  for (const auto& [key, value] : doc.items()) {
    const auto dot = key.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
      throw DataError("malformed frame key \"" + key +
                      "\" (expected lemma.sense)");
    }
    if (!value.is_array()) {
      throw DataError("roleset for \"" + key + "\" must be an array");
    }
    std::vector<std::string> roles;
    for (const auto& r : value) {
      if (!r.is_string()) {
        throw DataError("roleset for \"" + key + "\" must hold strings");
      }
      roles.push_back(r.get<std::string>());
    }
    inv.add(key.substr(0, dot), key.substr(dot + 1), std::move(roles), labels);
  }
  return inv;
}

FrameInventory FrameInventory::load(const std::string& path,
                                    const LabelSet& labels) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open frames file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), labels);
}

std::string FrameInventory::to_json() const {
  json doc = json::object();
  for (const auto& [key, roles] : rolesets_) {
    doc[key.first + "." + key.second] = roles;
  }
  return doc.dump(2);
}

void FrameInventory::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write frames file " + path);
  out << to_json() << "\n";
}

}  // namespace rolegrad
