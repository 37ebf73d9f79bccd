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

#ifndef ROLEGRAD_LABELS_H_
#define ROLEGRAD_LABELS_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rolegrad {

// Argument labels and their BIO expansion.
//
// Tag layout: 0 is O; argument a occupies tags 1 + 2a (B-a) and 2 + 2a (I-a).
// Indices are fixed for the lifetime of the object.
class LabelSet {
 public:
  static constexpr int kOutside = 0;

  // `all` is the ordered argument inventory, `core` a subset of it.
  // Throws std::invalid_argument on duplicates or a core label not in `all`.
  LabelSet(std::vector<std::string> all, std::vector<std::string> core);

  // A0-A5 as core plus the common PropBank modifiers.
  static LabelSet standard();

  // Returns a copy with `extra` labels appended (existing ones are ignored).
  LabelSet extended(std::span<const std::string> extra) const;

  static const std::vector<std::string>& default_core();

  int num_args() const { return static_cast<int>(all_.size()); }
  int num_tags() const { return 2 * num_args() + 1; }
  const std::vector<std::string>& args() const { return all_; }
  const std::vector<std::string>& core() const { return core_; }
  const std::vector<int>& core_indices() const { return core_idx_; }
  const std::string& arg_name(int arg) const { return all_.at(arg); }

  // -1 when unknown.
  int arg_index(std::string_view name) const;
  bool is_core(int arg) const { return core_mask_.at(arg); }

  static int begin_tag(int arg) { return 1 + 2 * arg; }
  static int inside_tag(int arg) { return 2 + 2 * arg; }
  static bool is_begin(int tag) { return tag > 0 && tag % 2 == 1; }
  static bool is_inside(int tag) { return tag > 0 && tag % 2 == 0; }
  // Argument of a B/I tag; -1 for O.
  static int arg_of(int tag) { return tag == 0 ? -1 : (tag - 1) / 2; }

  std::string tag_name(int tag) const;
  // Parses "O", "B-X", "I-X". Throws std::invalid_argument otherwise.
  int tag_index(std::string_view tag) const;
  std::vector<int> encode(std::span<const std::string> tags) const;
  std::vector<std::string> decode(std::span<const int> tags) const;

  // prev == -1 denotes the start of the sequence.
  static bool allowed_transition(int prev, int next);
  static bool is_valid(std::span<const int> tags);

  bool operator==(const LabelSet& other) const {
    return all_ == other.all_ && core_ == other.core_;
  }

 private:
  std::vector<std::string> all_;
  std::vector<std::string> core_;
  std::vector<int> core_idx_;
  std::vector<bool> core_mask_;
  std::unordered_map<std::string, int> index_;
};

// String-level BIO check usable before a LabelSet exists. Returns the first
// offending position, or -1 when the sequence is valid.
int first_bio_violation(std::span<const std::string> tags);

}  // namespace rolegrad

#endif  // ROLEGRAD_LABELS_H_
