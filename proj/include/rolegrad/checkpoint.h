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

// Checkpoint format (JSON, version 1):
//
//   {
//     "format": "rolegrad-checkpoint",
//     "version": 1,
//     "config": {"vocab_size", "num_tags", "embed_dim", "hidden_dim",
//                "dropout", "hard_transitions", "token_ce"},
//     "config_hash": "<16 hex digits>",
//     "labels": {"all": [...], "core": [...]},
//     "vocab": [...],
//     "tensors": {"<name>": {"rows": r, "cols": c, "data": [row-major]}}
//   }
//
// config_hash is FNV-1a over the config, label set and vocabulary. Readers
// accept any file with the same major version.

#ifndef ROLEGRAD_CHECKPOINT_H_
#define ROLEGRAD_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "rolegrad/tagger.h"

namespace rolegrad {

inline constexpr int kCheckpointVersion = 1;

std::uint64_t config_hash(const Tagger& tagger);
std::string config_hash_hex(const Tagger& tagger);

std::string checkpoint_json(const Tagger& tagger);
// Throws DataError on a malformed document, wrong format or version, shape
// mismatch, or hash mismatch.
Tagger parse_checkpoint(std::string_view text);

void save_checkpoint(const Tagger& tagger, const std::string& path);
Tagger load_checkpoint(const std::string& path);

}  // namespace rolegrad

#endif  // ROLEGRAD_CHECKPOINT_H_
