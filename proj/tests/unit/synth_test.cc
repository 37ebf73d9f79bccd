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


#include "rolegrad/synth.h"

#include <gtest/gtest.h>

#include "rolegrad/corpus.h"
#include "rolegrad/eval.h"
#include "rolegrad/labels.h"

namespace rolegrad {
namespace {

TEST(Synth, DeterministicInSeed) {
  const FrameInventory f = synth_frames();
  EXPECT_EQ(synth_corpus(7, 50, 48, 12, f, 0.3), synth_corpus(7, 50, 48, 12, f, 0.3));
  EXPECT_NE(synth_corpus(7, 50, 48, 12, f, 0.3), synth_corpus(8, 50, 48, 12, f, 0.3));
}

TEST(Synth, SizeContract) {
  const Corpus c = synth_corpus(7, 200, 48, 12, synth_frames(), 0.3);
  ASSERT_EQ(c.size(), 200u);
  for (const Sentence& s : c) {
    EXPECT_GE(s.length(), 3);
    EXPECT_LE(s.length(), 12);
    ASSERT_EQ(s.propositions.size(), 1u);
    EXPECT_NO_THROW(validate_sentence(s, "synth"));
  }
}

TEST(Synth, GoldHasNoViolationsOverTwentySeeds) {
  const LabelSet labels = LabelSet::standard();
  const FrameInventory frames = synth_frames(labels);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Corpus c = synth_corpus(seed, 200, 48, 12, frames, 1.0);
    const EvalReport r = evaluate(c, encode_gold(c, labels), labels, &frames);
    EXPECT_EQ(r.rho_u, 0.0) << "seed " << seed;
    EXPECT_EQ(r.rho_o, 0) << "seed " << seed;
    ASSERT_TRUE(r.rho_f.has_value());
    EXPECT_EQ(*r.rho_f, 0.0) << "seed " << seed;
    EXPECT_EQ(r.rho_f_skipped, 0);
  }
}

TEST(Synth, BiasInjectsAmbiguousWords) {
  const FrameInventory f = synth_frames();
  auto count = [](const Corpus& c) {
    int n = 0;
    for (const Sentence& s : c)
      for (const std::string& t : s.tokens) n += t.rfind("ambi", 0) == 0;
    return n;
  };
  EXPECT_EQ(count(synth_corpus(3, 200, 48, 12, f, 0.0)), 0);
  EXPECT_GT(count(synth_corpus(3, 200, 48, 12, f, 0.8)), 40);
}

TEST(Synth, RejectsBadArguments) {
  const FrameInventory f = synth_frames();
  EXPECT_THROW(synth_corpus(1, 0, 48, 12, f, 0.3), std::invalid_argument);
  EXPECT_THROW(synth_corpus(1, 10, 48, 2, f, 0.3), std::invalid_argument);
  EXPECT_THROW(synth_corpus(1, 10, 48, 12, f, 1.5), std::invalid_argument);
  EXPECT_THROW(synth_corpus(1, 10, 2, 12, f, 0.3), std::invalid_argument);
  EXPECT_THROW(synth_corpus(1, 10, 48, 12, FrameInventory{}, 0.3),
               std::invalid_argument);
}

TEST(Synth, FramesCoverSeveralSenses) {
  const FrameInventory f = synth_frames();
  EXPECT_GE(f.size(), 8u);
  EXPECT_NE(f.find("leave", "03"), nullptr);
}

}  // namespace
}  // namespace rolegrad
