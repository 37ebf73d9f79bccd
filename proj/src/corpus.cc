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

#include "rolegrad/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "rolegrad/error.h"
#include "rolegrad/labels.h"
#include "rolegrad/log.h"

namespace rolegrad {

using nlohmann::json;

namespace {

std::string prefix(std::string_view where) {
  return where.empty() ? std::string() : std::string(where) + ": ";
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string field; in >> field;) out.push_back(field);
  return out;
}

bool has_suffix(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <typename T>
T required(const json& obj, const char* field, std::string_view where) {
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw DataError(prefix(where) + "missing field \"" + field + "\"");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw DataError(prefix(where) + "field \"" + field + "\" has wrong type");
  }
}

}  // namespace

void validate_sentence(const Sentence& sentence, std::string_view where) {
  const int n = sentence.length();
  for (std::size_t p = 0; p < sentence.propositions.size(); ++p) {
    const Proposition& prop = sentence.propositions[p];
    const std::string tag = prefix(where) + "proposition " + std::to_string(p);
    if (prop.pred < 0 || prop.pred >= n) {
      throw DataError(tag + ": predicate index " + std::to_string(prop.pred) +
                      " outside sentence of length " + std::to_string(n));
    }
    if (static_cast<int>(prop.tags.size()) != n) {
      throw DataError(tag + ": " + std::to_string(prop.tags.size()) +
                      " tags for " + std::to_string(n) + " tokens");
    }
    if (prop.lemma.empty()) throw DataError(tag + ": empty lemma");
    if (prop.sense.empty()) throw DataError(tag + ": missing sense");
    const int bad = first_bio_violation(prop.tags);
    if (bad >= 0) {
      throw DataError(tag + ": invalid BIO tag \"" + prop.tags[bad] +
                      "\" at token " + std::to_string(bad));
    }
  }
}

Corpus read_jsonl(std::istream& in, std::string_view source) {
  Corpus corpus;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(lineno);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(where + ": malformed JSON: " + e.what());
    }
    if (!doc.is_object()) throw DataError(where + ": expected a JSON object");
    Sentence s;
    s.tokens = required<std::vector<std::string>>(doc, "tokens", where);
    const auto props = required<json>(doc, "propositions", where);
    if (!props.is_array()) {
      throw DataError(where + ": \"propositions\" must be an array");
    }
    for (const json& p : props) {
      if (!p.is_object()) {
        throw DataError(where + ": proposition must be an object");
      }
      Proposition prop;
      prop.pred = required<int>(p, "pred", where);
      prop.lemma = required<std::string>(p, "lemma", where);
      prop.sense = required<std::string>(p, "sense", where);
      prop.tags = required<std::vector<std::string>>(p, "tags", where);
      s.propositions.push_back(std::move(prop));
    }
    validate_sentence(s, where);
    corpus.push_back(std::move(s));
  }
  if (corpus.empty()) logger().warn("{}: empty corpus", source);
  return corpus;
}

Corpus load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus " + path);
  return read_jsonl(in, path);
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const Sentence& s : corpus) {
    nlohmann::ordered_json props = nlohmann::ordered_json::array();
    for (const Proposition& p : s.propositions) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      obj["pred"] = p.pred;
      obj["lemma"] = p.lemma;
      obj["sense"] = p.sense;
      obj["tags"] = p.tags;
      props.push_back(std::move(obj));
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    doc["tokens"] = s.tokens;
    doc["propositions"] = std::move(props);
    out << doc.dump() << "\n";
  }
}

void save_jsonl(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus " + path);
  write_jsonl(corpus, out);
}

Corpus read_conll_cols(std::istream& in, std::string_view source) {
  Corpus corpus;
  std::vector<std::vector<std::string>> rows;
  int block_start = 0;

  auto flush = [&]() {
    if (rows.empty()) return;
    const std::string where =
        std::string(source) + ":" + std::to_string(block_start);
    const std::size_t width = rows[0].size();
    if (width < 2) {
      throw DataError(where + ": expected at least token and predicate columns");
    }
    Sentence s;
    std::vector<int> preds;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != width) {
        throw DataError(std::string(source) + ":" +
                        std::to_string(block_start + static_cast<int>(r)) +
                        ": expected " + std::to_string(width) +
                        " columns, found " + std::to_string(rows[r].size()));
      }
      s.tokens.push_back(rows[r][0]);
      if (rows[r][1] != "-") preds.push_back(static_cast<int>(r));
    }
    if (preds.size() != width - 2) {
      throw DataError(where + ": " + std::to_string(preds.size()) +
                      " predicates but " + std::to_string(width - 2) +
                      " tag columns");
    }
    for (std::size_t p = 0; p < preds.size(); ++p) {
      Proposition prop;
      prop.pred = preds[p];
      const std::string& key = rows[preds[p]][1];
      const auto dot = key.rfind('.');
      if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
        throw DataError(where + ": malformed predicate \"" + key +
                        "\" (expected lemma.sense)");
      }
      prop.lemma = key.substr(0, dot);
      prop.sense = key.substr(dot + 1);
      for (const auto& row : rows) prop.tags.push_back(row[2 + p]);
      s.propositions.push_back(std::move(prop));
    }
    validate_sentence(s, where);
    corpus.push_back(std::move(s));
    rows.clear();
  };

  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    std::vector<std::string> fields = split_ws(line);
    if (fields.empty()) {
      flush();
      continue;
    }
    if (rows.empty()) block_start = lineno;
    rows.push_back(std::move(fields));
  }
  flush();
  if (corpus.empty()) logger().warn("{}: empty corpus", source);
  return corpus;
}

Corpus load_conll_cols(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus " + path);
  return read_conll_cols(in, path);
}

void write_conll_cols(const Corpus& corpus, std::ostream& out) {
  for (const Sentence& s : corpus) {
    std::vector<const Proposition*> props;
    for (const Proposition& p : s.propositions) props.push_back(&p);
    std::stable_sort(props.begin(), props.end(),
                     [](const Proposition* a, const Proposition* b) {
                       return a->pred < b->pred;
                     });
    for (std::size_t p = 1; p < props.size(); ++p) {
      if (props[p]->pred == props[p - 1]->pred) {
        throw DataError("two propositions share predicate token " +
                        std::to_string(props[p]->pred));
      }
    }
    std::size_t next = 0;
    for (int i = 0; i < s.length(); ++i) {
      out << s.tokens[i] << '\t';
      if (next < props.size() && props[next]->pred == i) {
        out << props[next]->lemma << '.' << props[next]->sense;
        ++next;
      } else {
        out << '-';
      }
      for (const Proposition* p : props) out << '\t' << p->tags[i];
      out << '\n';
    }
    out << '\n';
  }
}

void save_conll_cols(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus " + path);
  write_conll_cols(corpus, out);
}

Corpus load_corpus(const std::string& path) {
  if (has_suffix(path, ".conll") || has_suffix(path, ".props") ||
      has_suffix(path, ".txt")) {
    return load_conll_cols(path);
  }
  return load_jsonl(path);
}

std::vector<std::string> corpus_labels(const Corpus& corpus) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const Sentence& s : corpus) {
    for (const Proposition& p : s.propositions) {
      for (const std::string& t : p.tags) {
        if (t == "O") continue;
        std::string label = t.substr(2);
        if (seen.insert(label).second) out.push_back(std::move(label));
      }
    }
  }
  return out;
}

int count_propositions(const Corpus& corpus) {
  int n = 0;
  for (const Sentence& s : corpus) n += static_cast<int>(s.propositions.size());
  return n;
}

}  // namespace rolegrad
