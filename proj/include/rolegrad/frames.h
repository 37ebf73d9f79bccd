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

#ifndef ROLEGRAD_FRAMES_H_
#define ROLEGRAD_FRAMES_H_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rolegrad/labels.h"

namespace rolegrad {

// Rolesets: (lemma, sense) -> admissible core labels.
//
// On disk this is one JSON object whose keys are "lemma.sense" (split at the
// last dot) and whose values are arrays of core label strings.
class FrameInventory {
 public:
  using Key = std::pair<std::string, std::string>;

  // Throws DataError on a duplicate key or a label outside labels.core().
  void add(const std::string& lemma, const std::string& sense,
           std::vector<std::string> roles, const LabelSet& labels);

  // nullptr when the (lemma, sense) pair is not in the inventory.
  const std::vector<std::string>* find(std::string_view lemma,
                                       std::string_view sense) const;

  // Argument indices of the roleset. Throws std::out_of_range for unknown
  // keys.
  std::vector<int> allowed_args(std::string_view lemma, std::string_view sense,
                                const LabelSet& labels) const;

  bool empty() const { return rolesets_.empty(); }
  std::size_t size() const { return rolesets_.size(); }
  const std::map<Key, std::vector<std::string>>& entries() const {
    return rolesets_;
  }

  static FrameInventory parse(std::string_view json_text,
                              const LabelSet& labels);
  static FrameInventory load(const std::string& path, const LabelSet& labels);
  std::string to_json() const;
  void save(const std::string& path) const;

 private:
  std::map<Key, std::vector<std::string>> rolesets_;
};

}  // namespace rolegrad

#endif  // ROLEGRAD_FRAMES_H_
