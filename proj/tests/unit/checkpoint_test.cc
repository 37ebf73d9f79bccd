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

#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"
#include "rolegrad/error.h"
#include "rolegrad/synth.h"
#include "rolegrad/trainer.h"

namespace rolegrad {
namespace {

Tagger trained() {
  const FrameInventory frames = synth_frames();
  const Corpus train = synth_corpus(3, 30, 20, 8, frames, 0.3);
  ModelConfig c;
  c.embed_dim = 6;
  c.hidden_dim = 10;
  Tagger t = Tagger::create(LabelSet::standard(), Vocabulary::build(train), c, 2);
  TrainOptions o;
  o.schedule = {2, 1e-2, 1, 5e-3, 0.0, 8, 2};
  o.weights.lambda_u = 1.0;
  train_two_stage(t, train, nullptr, &frames, o);
  return t;
}

TEST(Checkpoint, RoundTripIsExact) {
  const Tagger t = trained();
  const std::string text = checkpoint_json(t);
  const Tagger back = parse_checkpoint(text);
  EXPECT_EQ(back.labels.args(), t.labels.args());
  EXPECT_EQ(back.vocab.tokens(), t.vocab.tokens());
  EXPECT_TRUE(back.params.config == t.params.config);
  EXPECT_EQ(checkpoint_json(back), text);
  EXPECT_EQ(config_hash(back), config_hash(t));
}

TEST(Checkpoint, RestoredModelPredictsIdentically) {
  const Tagger t = trained();
  const Tagger back = parse_checkpoint(checkpoint_json(t));
  const Corpus test = synth_corpus(77, 25, 20, 8, synth_frames(), 0.3);
  const auto a = predict(t, encode_corpus(test, t, nullptr));
  const auto b = predict(back, encode_corpus(test, back, nullptr));
  EXPECT_EQ(a, b);
}

TEST(Checkpoint, FileRoundTrip) {
  const Tagger t = trained();
  const auto path =
      (std::filesystem::temp_directory_path() / "rolegrad_ckpt_test.json").string();
  save_checkpoint(t, path);
  EXPECT_EQ(checkpoint_json(load_checkpoint(path)), checkpoint_json(t));
  std::filesystem::remove(path);
  EXPECT_THROW(load_checkpoint(path), DataError);
}

TEST(Checkpoint, HashCoversVocabulary) {
  const Tagger t = trained();
  Tagger other = t;
  other.vocab = Vocabulary::from_tokens({"<unk>", "zzz"});
  EXPECT_NE(config_hash(other), config_hash(t));
  EXPECT_EQ(config_hash_hex(t).size(), 16u);
}

TEST(Checkpoint, RejectsTamperedOrForeignFiles) {
  const Tagger t = trained();
  nlohmann::json doc = nlohmann::json::parse(checkpoint_json(t));

  nlohmann::json bad = doc;
  bad["config_hash"] = "0000000000000000";
  EXPECT_THROW(parse_checkpoint(bad.dump()), DataError);

  bad = doc;
  bad["vocab"][1] = "renamed";
  EXPECT_THROW(parse_checkpoint(bad.dump()), DataError);

  bad = doc;
  bad["format"] = "something-else";
  EXPECT_THROW(parse_checkpoint(bad.dump()), DataError);

  bad = doc;
  bad["version"] = kCheckpointVersion + 1;
  EXPECT_THROW(parse_checkpoint(bad.dump()), DataError);

  bad = doc;
  bad["tensors"]["output_b"]["data"].erase(0);
  EXPECT_THROW(parse_checkpoint(bad.dump()), DataError);

  EXPECT_THROW(parse_checkpoint("{not json"), DataError);
  EXPECT_THROW(parse_checkpoint("[]"), DataError);
}

}  // namespace
}  // namespace rolegrad
