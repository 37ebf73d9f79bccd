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

#include "rolegrad/vocab.h"

#include <algorithm>
#include <map>

#include "rolegrad/error.h"

namespace rolegrad {

Vocabulary::Vocabulary()
    : tokens_{kUnknownToken}, index_{{kUnknownToken, kUnknown}} {}

Vocabulary Vocabulary::build(const Corpus& corpus) {
  std::map<std::string, int> counts;
  for (const Sentence& s : corpus) {
    for (const std::string& t : s.tokens) ++counts[t];
  }
  std::vector<std::pair<std::string, int>> ordered(counts.begin(),
                                                   counts.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens;
  for (auto& [token, count] : ordered) tokens.push_back(token);
  return from_tokens(std::move(tokens));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  Vocabulary v;
  for (std::string& t : tokens) {
    if (t == kUnknownToken) continue;
    if (!v.index_.emplace(t, v.size()).second) {
      throw DataError("duplicate vocabulary entry " + t);
    }
    v.tokens_.push_back(std::move(t));
  }
  return v;
}

int Vocabulary::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnknown : it->second;
}

std::vector<int> Vocabulary::ids(std::span<const std::string> tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(id(t));
  return out;
}

}  // namespace rolegrad
