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


#include "rolegrad/eval.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "json.hpp"

#include "rolegrad/corpus.h"
#include "rolegrad/error.h"
#include "rolegrad/frames.h"
#include "rolegrad/labels.h"

namespace rolegrad {
namespace {

const LabelSet& labels() {
  static const LabelSet l = LabelSet::standard();
  return l;
}

std::vector<int> tags(std::initializer_list<const char*> names) {
  std::vector<std::string> s(names.begin(), names.end());
  return labels().encode(s);
}

TEST(ExtractSpans, Examples) {
  const int a0 = labels().arg_index("A0"), a1 = labels().arg_index("A1");
  EXPECT_EQ(extract_spans(tags({"B-A0", "I-A0", "O", "B-A1"})),
            (std::vector<ArgSpan>{{0, 1, a0}, {3, 3, a1}}));
  EXPECT_TRUE(extract_spans(tags({"O", "O"})).empty());
  EXPECT_EQ(extract_spans(tags({"B-A0", "B-A0"})),
            (std::vector<ArgSpan>{{0, 0, a0}, {1, 1, a0}}));
  EXPECT_THROW(extract_spans(tags({"O", "I-A0"})), std::invalid_argument);
}

TEST(SpanPrf, Examples) {
  const PrfScores half = span_prf({{{1, 2, 0}}}, {{{1, 2, 0}, {3, 4, 1}}});
  EXPECT_DOUBLE_EQ(half.precision, 50.0);
  EXPECT_DOUBLE_EQ(half.recall, 100.0);
  EXPECT_NEAR(half.f1, 66.67, 5e-3);

  const std::vector<std::vector<ArgSpan>> g = {{{0, 1, 0}}, {{2, 2, 3}}};
  const PrfScores same = span_prf(g, g);
  EXPECT_DOUBLE_EQ(same.precision, 100.0);
  EXPECT_DOUBLE_EQ(same.recall, 100.0);
  EXPECT_DOUBLE_EQ(same.f1, 100.0);

  const PrfScores none = span_prf(g, {{}, {}});
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);
  EXPECT_THROW(span_prf(g, {{}}), std::invalid_argument);
}

TEST(SpanPrf, LabelAndBoundaryMustMatch) {
  const PrfScores r = span_prf({{{1, 2, 0}, {4, 4, 1}}}, {{{1, 2, 1}, {4, 5, 1}}});
  EXPECT_EQ(r.matched, 0);
}

TEST(SpanPrf, SwappingSidesSwapsPrecisionAndRecall) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pos(0, 6), lab(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<ArgSpan>> a(3), b(3);
    for (auto* side : {&a, &b}) {
      for (auto& prop : *side) {
        for (int k = 0; k < 3; ++k) {
          const int s = pos(rng);
          prop.push_back({s, s + pos(rng) % 2, lab(rng)});
        }
        std::sort(prop.begin(), prop.end());
        prop.erase(std::unique(prop.begin(), prop.end()), prop.end());
      }
    }
    const PrfScores ab = span_prf(a, b), ba = span_prf(b, a);
    EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
    EXPECT_DOUBLE_EQ(ab.recall, ba.precision);
    EXPECT_DOUBLE_EQ(ab.f1, ba.f1);
  }
}

TEST(RhoU, Examples) {
  EXPECT_DOUBLE_EQ(rho_u({tags({"B-A1", "O", "B-A1"}), tags({"B-A0", "O", "O"}),
                          tags({"O", "O", "O"}), tags({"B-A0", "B-A1", "O"})},
                         labels()),
                   25.0);
  EXPECT_DOUBLE_EQ(rho_u({tags({"B-A0", "B-A1"})}, labels()), 0.0);
  EXPECT_DOUBLE_EQ(rho_u({tags({"B-AM-TMP", "B-AM-TMP"})}, labels()), 0.0);
  EXPECT_THROW(rho_u({}, labels()), std::invalid_argument);
}

TEST(RhoO, Examples) {
  EXPECT_EQ(count_crossing_pairs({{{1, 3, 1}}, {{2, 4, 0}}}), 1);
  EXPECT_EQ(count_crossing_pairs({{{1, 4, 1}}, {{2, 3, 0}}}), 0);
  EXPECT_EQ(count_crossing_pairs({{{0, 1, 1}}, {{2, 3, 0}}}), 0);
  EXPECT_EQ(count_crossing_pairs({{{1, 3, 1}, {2, 4, 0}}}), 0);
  EXPECT_EQ(rho_o({{{{1, 3, 1}}, {{2, 4, 0}}}, {{{0, 2, 1}}, {{1, 3, 0}}}}), 2);
  EXPECT_TRUE(spans_cross({1, 3, 0}, {3, 5, 0}));
  EXPECT_FALSE(spans_cross({1, 3, 0}, {1, 3, 1}));
}

TEST(RhoF, Examples) {
  const LabelSet& l = labels();
  FrameInventory frames;
  frames.add("run", "01", {"A0", "A1"}, l);
  const int a2 = l.arg_index("A2"), loc = l.arg_index("AM-LOC");
  const std::vector<int> allowed = frames.allowed_args("run", "01", l);
  EXPECT_TRUE(violates_roleset(std::vector<ArgSpan>{{0, 0, a2}}, allowed, l));
  EXPECT_FALSE(violates_roleset(std::vector<ArgSpan>{{0, 0, loc}}, allowed, l));

  const std::vector<FrameKey> keys = {{"run", "01"}, {"run", "01"},
                                      {"walk", "01"}};
  const FrameRate r = rho_f({{{0, 0, a2}}, {{0, 0, loc}}, {{0, 0, a2}}}, keys,
                            frames, l);
  ASSERT_TRUE(r.percent.has_value());
  EXPECT_DOUBLE_EQ(*r.percent, 50.0);
  EXPECT_EQ(r.scored, 2);
  EXPECT_EQ(r.skipped, 1);
  EXPECT_THROW(rho_f({{}}, {{"run", "01"}}, FrameInventory{}, l), DataError);
}

Corpus small_corpus() {
  Sentence s;
  s.tokens = {"he", "ran", "home", "fast"};
  s.propositions = {{1, "run", "01", {"B-A0", "O", "B-A2", "B-AM-MNR"}}};
  return {s};
}

TEST(Evaluate, ReportFields) {
  const Corpus c = small_corpus();
  const CorpusTags gold = encode_gold(c, labels());
  FrameInventory frames;
  frames.add("run", "01", {"A0", "A1"}, labels());
  const EvalReport with = evaluate(c, gold, labels(), &frames);
  EXPECT_DOUBLE_EQ(with.prf.f1, 100.0);
  EXPECT_EQ(with.propositions, 1);
  EXPECT_EQ(with.sentences, 1);
  ASSERT_TRUE(with.rho_f.has_value());
  EXPECT_DOUBLE_EQ(*with.rho_f, 100.0);

  const EvalReport without = evaluate(c, gold, labels(), nullptr);
  EXPECT_FALSE(without.rho_f.has_value());
  const auto doc = nlohmann::json::parse(without.to_json());
  EXPECT_EQ(doc.at("rho_f"), "NA");
  for (const char* key : {"precision", "recall", "f1", "rho_u", "rho_o",
                          "propositions", "sentences"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_NE(without.to_table().find("NA"), std::string::npos);
  EXPECT_THROW(evaluate(c, {}, labels(), nullptr), std::invalid_argument);
}

}  // namespace
}  // namespace rolegrad
