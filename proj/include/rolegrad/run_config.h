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

// Run configuration files and the named presets compiled into the binary.
//
// A config file is one JSON object. Every key is optional:
//
//   name, train, dev, test, frames, out          strings
//   constraints                                  subset of "UOF"
//   lambda_u, lambda_o, lambda_f, epsilon        numbers
//   beam_k, epochs1, epochs2, batch_size, seed   integers
//   lr1, lr2, warmup, dropout                    numbers
//   embed_dim, hidden_dim, threads               integers
//   hard_transitions, token_ce,                  booleans
//   freeze_transitions
//
// Unknown keys are rejected.

#ifndef ROLEGRAD_RUN_CONFIG_H_
#define ROLEGRAD_RUN_CONFIG_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rolegrad/constraints.h"
#include "rolegrad/model.h"
#include "rolegrad/trainer.h"

namespace rolegrad {

struct RunConfig {
  std::string name;
  std::string train;
  std::string dev;
  std::string test;
  std::string frames;
  std::string out;
  TrainSchedule schedule;
  ConstraintWeights weights;
  ModelConfig model;  // vocab_size and num_tags are filled in from data
  // Enabled constraint families; unset means "whatever has a nonzero weight".
  std::optional<std::string> constraints;
  int threads = 1;

  // Throws ConfigError on inconsistent toggles, bad ranges or a malformed
  // constraint string.
  void validate() const;
  bool enabled(char family) const;
  std::string to_json() const;
};

// Applies the keys of `json_text` on top of `base`. Throws ConfigError.
RunConfig merge_config(const RunConfig& base, std::string_view json_text,
                       std::string_view source);

// `name_or_path` is a preset name or a path to a JSON config file.
RunConfig load_run_config(const std::string& name_or_path);

const std::vector<std::string>& preset_names();
// The preset's JSON text, or nullopt for an unknown name.
std::optional<std::string> preset_json(std::string_view name);

}  // namespace rolegrad

#endif  // ROLEGRAD_RUN_CONFIG_H_
