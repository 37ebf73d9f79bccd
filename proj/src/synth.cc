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

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rolegrad {

namespace {

// Ambiguous word w reads as A0 with a share spread evenly over
// [kAgentShareLow, kAgentShareHigh].
constexpr int kAmbiguousWords = 4;
constexpr double kAgentShareLow = 0.52;
constexpr double kAgentShareHigh = 0.7;
constexpr double kDeterminerRate = 0.0;
constexpr double kAdjectiveRate = 0.0;

const std::vector<std::string> kDeterminers = {"the", "a", "this"};
const std::vector<std::string> kAdjectives = {"big", "old", "red"};
const std::vector<std::string> kPrepositions = {"in", "at", "near"};
const std::vector<std::string> kFillers = {"and", "then", "so", ","};
const std::vector<std::string> kModifiers = {"AM-TMP", "AM-LOC", "AM-MNR"};

std::string stem_for(const std::string& role) {
  static const std::map<std::string, std::string> kStems = {
      {"A0", "agent"},     {"A1", "patient"}, {"A2", "recipient"},
      {"A3", "source"},    {"A4", "goal"},    {"A5", "extent"},
      {"AM-TMP", "time"},  {"AM-LOC", "place"}, {"AM-MNR", "manner"}};
  auto it = kStems.find(role);
  if (it != kStems.end()) return it->second;
  std::string s;
  for (char c : role) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return s + "w";
}

struct Phrase {
  std::vector<std::string> words;
  std::string role;  // empty for O
  bool prep_led = false;
  bool predicate = false;
};

class Generator {
 public:
  Generator(std::uint64_t seed, int vocab_size, const FrameInventory& frames)
      : rng_(seed), frames_(frames) {
    std::set<std::string> core;
    for (const auto& [key, roles] : frames.entries()) {
      core.insert(roles.begin(), roles.end());
      keys_.push_back(key);
    }
    std::vector<std::string> classes(core.begin(), core.end());
    classes.insert(classes.end(), kModifiers.begin(), kModifiers.end());
    if (vocab_size < static_cast<int>(classes.size())) {
      throw std::invalid_argument("vocab_size below the number of role classes");
    }
    const int c = static_cast<int>(classes.size());
    for (int k = 0; k < c; ++k) {
      const int count = vocab_size / c + (k < vocab_size % c ? 1 : 0);
      auto& words = lexicon_[classes[k]];
      for (int w = 0; w < count; ++w) {
        words.push_back(stem_for(classes[k]) + std::to_string(w));
      }
    }
  }

  Sentence sentence(int max_len, double bias) {
    const auto& key = keys_[uniform(keys_.size())];
    const std::vector<std::string>& roles = *frames_.find(key.first, key.second);
    const bool has_agent =
        std::find(roles.begin(), roles.end(), "A0") != roles.end();

    std::vector<Phrase> phrases;
    bool want_agent = has_agent && coin(0.8);
    bool want_tmp = coin(0.3);
    bool want_mnr = coin(0.2);
    std::optional<Phrase> ambiguous;
    if (has_agent && coin(bias)) {
      const int w = static_cast<int>(uniform(kAmbiguousWords));
      const double share =
          kAgentShareLow + (kAgentShareHigh - kAgentShareLow) * w /
                               std::max(1, kAmbiguousWords - 1);
      const std::string word = "ambi" + std::to_string(w);
      if (coin(share)) {
        phrases.push_back({{word}, "A0"});
        want_agent = false;
      } else {
        ambiguous = Phrase{{word}, "AM-TMP"};
        want_agent = true;
        want_tmp = false;
      }
    }
    std::optional<Phrase> borrowed;
    if (coin(bias)) {
      std::set<std::string> foreign;
      for (const auto& [k, other] : frames_.entries()) {
        if (k.first != key.first || k.second == key.second) continue;
        for (const auto& r : other) {
          if (std::find(roles.begin(), roles.end(), r) == roles.end()) {
            foreign.insert(r);
          }
        }
      }
      if (!foreign.empty()) {
        std::vector<std::string> pool(foreign.begin(), foreign.end());
        borrowed = Phrase{{pick(lexicon_.at(pool[uniform(pool.size())]))},
                          "AM-MNR"};
        want_mnr = false;
      }
    }
    if (want_agent) phrases.push_back(argument("A0"));
    for (const auto& r : roles) {
      if (r != "A0" && coin(0.5)) phrases.push_back(argument(r));
    }
    if (coin(0.3)) {
      Phrase loc{{pick(kPrepositions)}, "AM-LOC", true};
      if (coin(0.5)) loc.words.push_back(pick(kDeterminers));
      loc.words.push_back(pick(lexicon_.at("AM-LOC")));
      phrases.push_back(std::move(loc));
    }
    if (want_tmp) phrases.push_back({{pick(lexicon_.at("AM-TMP"))}, "AM-TMP"});
    if (want_mnr) phrases.push_back({{pick(lexicon_.at("AM-MNR"))}, "AM-MNR"});
    if (ambiguous) phrases.push_back(*ambiguous);
    if (borrowed) phrases.push_back(*borrowed);
    // Phrase order, predicate included, is uniformly random so that position
    // carries no role information.
    std::vector<Phrase> items = std::move(phrases);
    items.push_back({{key.first}, "", false, true});
    std::shuffle(items.begin(), items.end(), rng_);
    std::size_t pred_slot = 0;
    while (!items[pred_slot].predicate) ++pred_slot;
    std::vector<Phrase> laid;
    std::size_t pred_pos = 0;
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (k > 0 && coin(0.15)) laid.push_back({{pick(kFillers)}, ""});
      if (k == pred_slot) pred_pos = laid.size();
      laid.push_back(items[k]);
    }
    if (coin(0.5)) laid.push_back({{"."}, ""});
    fit(laid, pred_pos, max_len);

    Sentence s;
    Proposition p;
    p.lemma = key.first;
    p.sense = key.second;
    for (std::size_t k = 0; k < laid.size(); ++k) {
      if (k == pred_pos) p.pred = static_cast<int>(s.tokens.size());
      for (std::size_t w = 0; w < laid[k].words.size(); ++w) {
        s.tokens.push_back(laid[k].words[w]);
        if (laid[k].role.empty()) {
          p.tags.push_back("O");
        } else {
          p.tags.push_back((w == 0 ? "B-" : "I-") + laid[k].role);
        }
      }
    }
    while (s.tokens.size() < 3) {
      s.tokens.push_back(".");
      p.tags.push_back("O");
    }
    s.propositions.push_back(std::move(p));
    return s;
  }

 private:
  std::size_t uniform(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  const std::string& pick(const std::vector<std::string>& v) {
    return v[uniform(v.size())];
  }

  Phrase argument(const std::string& role) {
    Phrase ph{{}, role};
    if (coin(kDeterminerRate)) ph.words.push_back(pick(kDeterminers));
    if (coin(kAdjectiveRate)) ph.words.push_back(pick(kAdjectives));
    ph.words.push_back(pick(lexicon_.at(role)));
    return ph;
  }

  static int length(const std::vector<Phrase>& laid) {
    int n = 0;
    for (const auto& p : laid) n += static_cast<int>(p.words.size());
    return n;
  }

  // Drops fillers, then shortens phrases, then removes phrases from the end
  // until the sentence fits. The predicate always stays.
  static void fit(std::vector<Phrase>& laid, std::size_t& pred_pos,
                  int max_len) {
    auto erase = [&](std::size_t k) {
      laid.erase(laid.begin() + static_cast<std::ptrdiff_t>(k));
      if (k < pred_pos) --pred_pos;
    };
    while (length(laid) > max_len) {
      bool done = false;
      for (std::size_t k = laid.size(); k-- > 0 && !done;) {
        if (k != pred_pos && laid[k].role.empty()) {
          erase(k);
          done = true;
        }
      }
      for (std::size_t k = laid.size(); k-- > 0 && !done;) {
        Phrase& ph = laid[k];
        if (ph.prep_led && ph.words.size() == 3) {
          ph.words.erase(ph.words.begin() + 1);
          done = true;
        } else if (!ph.prep_led && !ph.role.empty() && ph.words.size() > 1) {
          ph.words.erase(ph.words.begin());
          done = true;
        }
      }
      for (std::size_t k = laid.size(); k-- > 0 && !done;) {
        if (k != pred_pos) {
          erase(k);
          done = true;
        }
      }
    }
  }

  std::mt19937_64 rng_;
  const FrameInventory& frames_;
  std::vector<FrameInventory::Key> keys_;
  std::map<std::string, std::vector<std::string>> lexicon_;
};

}  // namespace

FrameInventory synth_frames(const LabelSet& labels) {
  FrameInventory f;
  f.add("give", "01", {"A0", "A1", "A2"}, labels);
  f.add("run", "01", {"A0"}, labels);
  f.add("run", "02", {"A0", "A1"}, labels);
  f.add("say", "01", {"A0", "A1", "A2"}, labels);
  f.add("move", "01", {"A0", "A1", "A2", "A3", "A4"}, labels);
  f.add("open", "01", {"A0", "A1"}, labels);
  f.add("open", "02", {"A1"}, labels);
  f.add("leave", "01", {"A0", "A1", "A2"}, labels);
  f.add("leave", "02", {"A0", "A1"}, labels);
  f.add("leave", "03", {"A0", "A3"}, labels);
  return f;
}

Corpus synth_corpus(std::uint64_t seed, int n_sentences, int vocab_size,
                    int max_len, const FrameInventory& frames,
                    double violation_bias) {
  if (n_sentences < 1) throw std::invalid_argument("n_sentences must be >= 1");
  if (max_len < 3) throw std::invalid_argument("max_len must be >= 3");
  if (!(violation_bias >= 0.0 && violation_bias <= 1.0)) {
    throw std::invalid_argument("violation_bias must lie in [0, 1]");
  }
  if (frames.empty()) throw std::invalid_argument("empty frame inventory");
  Generator gen(seed, vocab_size, frames);
  Corpus corpus;
  corpus.reserve(static_cast<std::size_t>(n_sentences));
  for (int s = 0; s < n_sentences; ++s) {
    corpus.push_back(gen.sentence(max_len, violation_bias));
  }
  return corpus;
}

}  // namespace rolegrad
