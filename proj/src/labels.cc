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

#include "rolegrad/labels.h"

#include <stdexcept>

namespace rolegrad {

LabelSet::LabelSet(std::vector<std::string> all, std::vector<std::string> core)
    : all_(std::move(all)), core_(std::move(core)) {
  for (int a = 0; a < num_args(); ++a) {
    if (all_[a].empty()) throw std::invalid_argument("empty argument label");
    if (!index_.emplace(all_[a], a).second) {
      throw std::invalid_argument("duplicate argument label " + all_[a]);
    }
  }
  core_mask_.assign(all_.size(), false);
  for (const std::string& c : core_) {
    const int a = arg_index(c);
    if (a < 0) throw std::invalid_argument("core label not in inventory: " + c);
    if (core_mask_[a]) throw std::invalid_argument("duplicate core label " + c);
    core_mask_[a] = true;
    core_idx_.push_back(a);
  }
}

const std::vector<std::string>& LabelSet::default_core() {
  static const std::vector<std::string> core = {"A0", "A1", "A2",
                                                "A3", "A4", "A5"};
  return core;
}

LabelSet LabelSet::standard() {
  std::vector<std::string> all = default_core();
  for (const char* m : {"AM-ADV", "AM-DIR", "AM-DIS", "AM-LOC", "AM-MNR",
                        "AM-MOD", "AM-NEG", "AM-TMP"}) {
    all.emplace_back(m);
  }
  return LabelSet(std::move(all), default_core());
}

LabelSet LabelSet::extended(std::span<const std::string> extra) const {
  std::vector<std::string> all = all_;
  std::unordered_map<std::string, int> seen = index_;
  for (const std::string& label : extra) {
    if (seen.emplace(label, static_cast<int>(all.size())).second) {
      all.push_back(label);
    }
  }
  return LabelSet(std::move(all), core_);
}

int LabelSet::arg_index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

std::string LabelSet::tag_name(int tag) const {
  if (tag == kOutside) return "O";
  if (tag < 0 || tag >= num_tags()) {
    throw std::invalid_argument("tag index out of range");
  }
  return (is_begin(tag) ? "B-" : "I-") + all_[arg_of(tag)];
}

int LabelSet::tag_index(std::string_view tag) const {
  if (tag == "O") return kOutside;
  if (tag.size() > 2 && tag[1] == '-' && (tag[0] == 'B' || tag[0] == 'I')) {
    const int a = arg_index(tag.substr(2));
    if (a >= 0) return tag[0] == 'B' ? begin_tag(a) : inside_tag(a);
  }
  throw std::invalid_argument("unknown tag " + std::string(tag));
}

std::vector<int> LabelSet::encode(std::span<const std::string> tags) const {
  std::vector<int> out;
  out.reserve(tags.size());
  for (const std::string& t : tags) out.push_back(tag_index(t));
  return out;
}

std::vector<std::string> LabelSet::decode(std::span<const int> tags) const {
  std::vector<std::string> out;
  out.reserve(tags.size());
  for (int t : tags) out.push_back(tag_name(t));
  return out;
}

bool LabelSet::allowed_transition(int prev, int next) {
  if (!is_inside(next)) return true;
  return prev > 0 && arg_of(prev) == arg_of(next);
}

bool LabelSet::is_valid(std::span<const int> tags) {
  int prev = -1;
  for (int t : tags) {
    if (!allowed_transition(prev, t)) return false;
    prev = t;
  }
  return true;
}

int first_bio_violation(std::span<const std::string> tags) {
  std::string_view open;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    std::string_view t = tags[i];
    if (t == "O") {
      open = {};
    } else if (t.size() > 2 && t[1] == '-' && t[0] == 'B') {
      open = t.substr(2);
    } else if (t.size() > 2 && t[1] == '-' && t[0] == 'I') {
      if (open.empty() || open != t.substr(2)) return static_cast<int>(i);
    } else {
      return static_cast<int>(i);
    }
  }
  return -1;
}

}  // namespace rolegrad
