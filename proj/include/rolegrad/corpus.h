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

// Corpus types and on-disk formats.
//
// JSONL (canonical), one sentence per line:
//   {"tokens": [string],
//    "propositions": [{"pred": int, "lemma": string, "sense": string,
//                      "tags": [string]}]}
//
// CoNLL columns (import/export), whitespace separated, blank line between
// sentences:
//   token  lemma.sense|-  tags-of-predicate-1  tags-of-predicate-2 ...
// Tag columns are BIO strings, one column per predicate row in token order.
// Bracketed props columns are not supported.

#ifndef ROLEGRAD_CORPUS_H_
#define ROLEGRAD_CORPUS_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rolegrad {

struct Proposition {
  int pred = 0;
  std::string lemma;
  std::string sense;
  std::vector<std::string> tags;

  bool operator==(const Proposition&) const = default;
};

struct Sentence {
  std::vector<std::string> tokens;
  std::vector<Proposition> propositions;

  int length() const { return static_cast<int>(tokens.size()); }
  bool operator==(const Sentence&) const = default;
};

using Corpus = std::vector<Sentence>;

// Throws DataError when a proposition's tags do not match the token count,
// its predicate index is out of range, its sense is missing, or its gold
// tags are not BIO-valid. `where` prefixes the message (e.g. "line 7").
void validate_sentence(const Sentence& sentence, std::string_view where);

Corpus read_jsonl(std::istream& in, std::string_view source);
Corpus load_jsonl(const std::string& path);
void write_jsonl(const Corpus& corpus, std::ostream& out);
void save_jsonl(const Corpus& corpus, const std::string& path);

Corpus read_conll_cols(std::istream& in, std::string_view source);
Corpus load_conll_cols(const std::string& path);
// Propositions are written in predicate order; sentences with two
// propositions on one token cannot be represented and raise DataError.
void write_conll_cols(const Corpus& corpus, std::ostream& out);
void save_conll_cols(const Corpus& corpus, const std::string& path);

// Dispatches on extension: .conll/.props/.txt -> columns, otherwise JSONL.
Corpus load_corpus(const std::string& path);

// Every label (the X of B-X/I-X) used by the corpus, in first-seen order.
std::vector<std::string> corpus_labels(const Corpus& corpus);

int count_propositions(const Corpus& corpus);

}  // namespace rolegrad

#endif  // ROLEGRAD_CORPUS_H_
