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

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "rolegrad/error.h"
#include "rolegrad/log.h"

namespace rolegrad {

std::vector<ArgSpan> extract_spans(std::span<const int> tags) {
  if (!LabelSet::is_valid(tags)) {
    throw std::invalid_argument("tag sequence is not BIO-valid");
  }
  std::vector<ArgSpan> spans;
  for (int i = 0; i < static_cast<int>(tags.size()); ++i) {
    if (LabelSet::is_begin(tags[i])) {
      spans.push_back({i, i, LabelSet::arg_of(tags[i])});
    } else if (LabelSet::is_inside(tags[i])) {
      spans.back().end = i;
    }
  }
  return spans;
}

PrfScores span_prf(const std::vector<std::vector<ArgSpan>>& gold,
                   const std::vector<std::vector<ArgSpan>>& pred) {
  if (gold.size() != pred.size()) {
    throw std::invalid_argument("gold and predicted propositions misaligned");
  }
  PrfScores out;
  for (std::size_t p = 0; p < gold.size(); ++p) {
    const std::set<ArgSpan> g(gold[p].begin(), gold[p].end());
    out.gold += static_cast<long long>(g.size());
    out.predicted += static_cast<long long>(pred[p].size());
    for (const ArgSpan& s : pred[p]) out.matched += g.count(s);
  }
  if (out.predicted > 0) out.precision = 100.0 * out.matched / out.predicted;
  if (out.gold > 0) out.recall = 100.0 * out.matched / out.gold;
  if (out.precision + out.recall > 0.0) {
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

bool has_duplicate_core(std::span<const int> tags, const LabelSet& labels) {
  std::vector<int> seen(labels.num_args(), 0);
  for (int t : tags) {
    if (!LabelSet::is_begin(t)) continue;
    const int a = LabelSet::arg_of(t);
    if (labels.is_core(a) && ++seen[a] > 1) return true;
  }
  return false;
}

double rho_u(const std::vector<std::vector<int>>& tags, const LabelSet& labels) {
  if (tags.empty()) throw std::invalid_argument("no propositions");
  long long bad = 0;
  for (const auto& t : tags) bad += has_duplicate_core(t, labels) ? 1 : 0;
  return 100.0 * static_cast<double>(bad) / static_cast<double>(tags.size());
}

bool spans_cross(const ArgSpan& a, const ArgSpan& b) {
  return (a.start < b.start && b.start <= a.end && a.end < b.end) ||
         (b.start < a.start && a.start <= b.end && b.end < a.end);
}

long long count_crossing_pairs(
    const std::vector<std::vector<ArgSpan>>& propositions) {
  long long count = 0;
  for (std::size_t p = 0; p < propositions.size(); ++p) {
    for (std::size_t q = p + 1; q < propositions.size(); ++q) {
      for (const ArgSpan& a : propositions[p]) {
        for (const ArgSpan& b : propositions[q]) count += spans_cross(a, b);
      }
    }
  }
  return count;
}

long long rho_o(
    const std::vector<std::vector<std::vector<ArgSpan>>>& sentences) {
  long long total = 0;
  for (const auto& s : sentences) total += count_crossing_pairs(s);
  return total;
}

bool violates_roleset(std::span<const ArgSpan> spans,
                      std::span<const int> allowed, const LabelSet& labels) {
  for (const ArgSpan& s : spans) {
    if (!labels.is_core(s.arg)) continue;
    if (std::find(allowed.begin(), allowed.end(), s.arg) == allowed.end()) {
      return true;
    }
  }
  return false;
}

FrameRate rho_f(const std::vector<std::vector<ArgSpan>>& spans,
                const std::vector<FrameKey>& keys,
                const FrameInventory& frames, const LabelSet& labels) {
  if (frames.empty()) throw DataError("empty frame inventory");
  if (spans.size() != keys.size()) {
    throw std::invalid_argument("spans and frame keys misaligned");
  }
  FrameRate out;
  int bad = 0;
  for (std::size_t p = 0; p < spans.size(); ++p) {
    if (frames.find(keys[p].lemma, keys[p].sense) == nullptr) {
      ++out.skipped;
      continue;
    }
    ++out.scored;
    const std::vector<int> allowed =
        frames.allowed_args(keys[p].lemma, keys[p].sense, labels);
    bad += violates_roleset(spans[p], allowed, labels) ? 1 : 0;
  }
  if (out.skipped > 0) {
    logger().warn("{} propositions have no roleset; excluded from rho_f",
                  out.skipped);
  }
  if (out.scored > 0) out.percent = 100.0 * bad / out.scored;
  return out;
}

std::string EvalReport::to_json(int indent) const {
  nlohmann::ordered_json doc;
  doc["precision"] = prf.precision;
  doc["recall"] = prf.recall;
  doc["f1"] = prf.f1;
  doc["rho_u"] = rho_u;
  doc["rho_o"] = rho_o;
  if (rho_f) {
    doc["rho_f"] = *rho_f;
  } else {
    doc["rho_f"] = "NA";
  }
  doc["propositions"] = propositions;
  doc["sentences"] = sentences;
  doc["rho_f_scored"] = rho_f_scored;
  doc["rho_f_skipped"] = rho_f_skipped;
  return doc.dump(indent);
}

std::string EvalReport::to_table() const {
  char buf[512];
  const std::string rf = rho_f ? [&] {
    char b[32];
    std::snprintf(b, sizeof(b), "%.2f", *rho_f);
    return std::string(b);
  }() : std::string("NA");
  std::snprintf(buf, sizeof(buf),
                "%-12s %10s\n"
                "%-12s %10.2f\n%-12s %10.2f\n%-12s %10.2f\n"
                "%-12s %10.2f\n%-12s %10lld\n%-12s %10s\n"
                "%-12s %10d\n%-12s %10d\n",
                "metric", "value", "precision", prf.precision, "recall",
                prf.recall, "f1", prf.f1, "rho_u", rho_u, "rho_o", rho_o,
                "rho_f", rf.c_str(), "propositions", propositions, "sentences",
                sentences);
  return buf;
}

CorpusTags encode_gold(const Corpus& corpus, const LabelSet& labels) {
  CorpusTags out;
  out.reserve(corpus.size());
  for (const Sentence& s : corpus) {
    auto& props = out.emplace_back();
    for (const Proposition& p : s.propositions) {
      props.push_back(labels.encode(p.tags));
    }
  }
  return out;
}

EvalReport evaluate(const Corpus& gold, const CorpusTags& predicted,
                    const LabelSet& labels, const FrameInventory* frames) {
  if (gold.size() != predicted.size()) {
    throw std::invalid_argument("predictions misaligned with corpus");
  }
  std::vector<std::vector<ArgSpan>> gold_spans;
  std::vector<std::vector<ArgSpan>> pred_spans;
  std::vector<std::vector<int>> pred_tags;
  std::vector<std::vector<std::vector<ArgSpan>>> by_sentence;
  std::vector<FrameKey> keys;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].propositions.size() != predicted[s].size()) {
      throw std::invalid_argument("predictions misaligned with corpus");
    }
    auto& sentence_spans = by_sentence.emplace_back();
    for (std::size_t p = 0; p < predicted[s].size(); ++p) {
      const Proposition& prop = gold[s].propositions[p];
      gold_spans.push_back(extract_spans(labels.encode(prop.tags)));
      pred_spans.push_back(extract_spans(predicted[s][p]));
      pred_tags.push_back(predicted[s][p]);
      sentence_spans.push_back(pred_spans.back());
      keys.push_back({prop.lemma, prop.sense});
    }
  }
  EvalReport report;
  report.sentences = static_cast<int>(gold.size());
  report.propositions = static_cast<int>(pred_tags.size());
  report.prf = span_prf(gold_spans, pred_spans);
  report.rho_u = rho_u(pred_tags, labels);
  report.rho_o = rho_o(by_sentence);
  if (frames != nullptr) {
    const FrameRate rate = rho_f(pred_spans, keys, *frames, labels);
    report.rho_f = rate.percent;
    report.rho_f_scored = rate.scored;
    report.rho_f_skipped = rate.skipped;
  }
  return report;
}

}  // namespace rolegrad
