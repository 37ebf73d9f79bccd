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

#include "rolegrad/tagger.h"

#include <cmath>
#include <random>
#include <set>
#include <limits>
#include <stdexcept>

#include "rolegrad/crf.h"
#include "rolegrad/decode.h"
#include "rolegrad/error.h"
#include "rolegrad/log.h"

namespace rolegrad {

namespace {

void check_finite(double value, const char* component, int sentence_id) {
  if (!std::isfinite(value)) {
    throw NumericError(std::string("nonfinite loss in ") + component +
                       " (sentence " + std::to_string(sentence_id) + ")");
  }
}

}  // namespace

Tagger Tagger::create(LabelSet labels, Vocabulary vocab, ModelConfig config,
                      std::uint64_t seed) {
  config.vocab_size = vocab.size();
  config.num_tags = labels.num_tags();
  Tagger t{std::move(labels), std::move(vocab), {}};
  t.params = ModelParams::initialize(config, seed);
  return t;
}

std::vector<EncodedSentence> encode_corpus(const Corpus& corpus,
                                           const Tagger& tagger,
                                           const FrameInventory* frames,
                                           UnknownFramePolicy policy) {
  std::vector<EncodedSentence> out;
  out.reserve(corpus.size());
  std::set<std::string> missing;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const Sentence& sentence = corpus[s];
    EncodedSentence enc;
    enc.id = static_cast<int>(s);
    enc.tokens = tagger.vocab.ids(sentence.tokens);
    for (const Proposition& p : sentence.propositions) {
      EncodedProposition ep;
      ep.pred = p.pred;
      try {
        ep.gold = tagger.labels.encode(p.tags);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("sentence " + std::to_string(s) + ": " + e.what() +
                          " is not in the tagger's label set");
      }
      if (frames != nullptr) {
        if (frames->find(p.lemma, p.sense) != nullptr) {
          ep.roleset = frames->allowed_args(p.lemma, p.sense, tagger.labels);
        } else if (policy == UnknownFramePolicy::kError) {
          throw DataError("no roleset for " + p.lemma + "." + p.sense);
        } else {
          missing.insert(p.lemma + "." + p.sense);
        }
      }
      enc.propositions.push_back(std::move(ep));
    }
    out.push_back(std::move(enc));
  }
  for (const std::string& key : missing) {
    logger().warn("no roleset for {}; frame loss skipped for it", key);
  }
  return out;
}

SentenceObjective sentence_objective(const Tagger& tagger,
                                     const EncodedSentence& sentence,
                                     const SentenceObjectiveOptions& options) {
  const ModelParams& params = tagger.params;
  const ConstraintWeights& w = options.weights;
  SentenceObjective out;
  const bool grads = options.compute_gradients;
  if (grads) out.gradients = params.zeros();

  const Eigen::MatrixXd embeddings = encode(sentence.tokens, params);
  const Eigen::MatrixXd transitions = params.transition_scores();
  const std::size_t num_props = sentence.propositions.size();

  std::vector<PairActivations> acts;
  std::vector<Eigen::MatrixXd> d_logits;
  std::vector<ScoreGrid> grids;
  acts.reserve(num_props);
  for (std::size_t p = 0; p < num_props; ++p) {
    const EncodedProposition& prop = sentence.propositions[p];
    std::mt19937_64 rng(options.dropout_seed.value_or(0) * 1000003ULL + p);
    acts.push_back(forward_pair(params, embeddings, prop.pred,
                                options.dropout_seed ? &rng : nullptr));
    out.branch = softlogic::mix_branch(out.branch, acts.back().branch);
    if (!acts.back().logits.allFinite()) {
      check_finite(std::numeric_limits<double>::quiet_NaN(), "L_E", sentence.id);
    }
    const CrfNll crf = crf_nll(acts.back().logits, prop.gold, transitions);
    out.parts.ce += crf.nll;
    if (grads) {
      d_logits.push_back(crf.d_emissions);
      out.gradients[kTransitions] += crf.d_transitions;
    }
    if (params.config.token_ce) {
      const Eigen::MatrixXd& z = acts.back().logits;
      for (Eigen::Index i = 0; i < z.rows(); ++i) {
        const double top = z.row(i).maxCoeff();
        const double lse = top + std::log((z.row(i).array() - top).exp().sum());
        out.parts.ce += lse - z(i, prop.gold[static_cast<std::size_t>(i)]);
      }
      if (grads) {
        Eigen::MatrixXd d = acts.back().probs;
        for (Eigen::Index i = 0; i < d.rows(); ++i) {
          d(i, prop.gold[static_cast<std::size_t>(i)]) -= 1.0;
        }
        d_logits.back() += d;
      }
    }
    ScoreGrid g;
    g.sentence_id = sentence.id;
    g.predicate_index = prop.pred;
    g.probs = acts.back().probs;
    grids.push_back(std::move(g));
  }
  check_finite(out.parts.ce, "L_E", sentence.id);

  std::vector<Eigen::MatrixXd> d_probs;
  if (grads) {
    for (const ScoreGrid& g : grids) {
      d_probs.push_back(Eigen::MatrixXd::Zero(g.probs.rows(), g.probs.cols()));
    }
  }
  const bool want_u = options.measure_constraints || w.lambda_u > 0.0;
  const bool want_o = options.measure_constraints || w.lambda_o > 0.0;
  const bool want_f = options.measure_constraints || w.lambda_f > 0.0;
  if (want_u) {
    for (std::size_t p = 0; p < num_props; ++p) {
      const GridPenalty lu = loss_unique(grids[p], tagger.labels, w.epsilon);
      out.parts.lu += lu.loss;
      out.branch = softlogic::mix_branch(out.branch, lu.branch);
      if (grads && w.lambda_u > 0.0) d_probs[p] += w.lambda_u * lu.gradient[0];
    }
    check_finite(out.parts.lu, "L_U", sentence.id);
  }
  if (want_o && num_props > 0) {
    const GridPenalty lo =
        loss_overlap(grids, tagger.labels, w.beam_k, w.epsilon);
    out.parts.lo = lo.loss;
    out.branch = softlogic::mix_branch(out.branch, lo.branch);
    if (grads && w.lambda_o > 0.0) {
      for (std::size_t p = 0; p < num_props; ++p) {
        d_probs[p] += w.lambda_o * lo.gradient[p];
      }
    }
    check_finite(out.parts.lo, "L_O", sentence.id);
  }
  if (want_f) {
    for (std::size_t p = 0; p < num_props; ++p) {
      const auto& roleset = sentence.propositions[p].roleset;
      if (!roleset) continue;
      const GridPenalty lf =
          loss_frame(grids[p], *roleset, tagger.labels, w.epsilon);
      out.parts.lf += lf.loss;
      out.branch = softlogic::mix_branch(out.branch, lf.branch);
      if (grads && w.lambda_f > 0.0) d_probs[p] += w.lambda_f * lf.gradient[0];
    }
    check_finite(out.parts.lf, "L_F", sentence.id);
  }
  out.total = combine_loss(out.parts.ce, out.parts.lu, out.parts.lo,
                           out.parts.lf, w);

  if (!grads) return out;
  Eigen::MatrixXd d_embeddings =
      Eigen::MatrixXd::Zero(embeddings.rows(), embeddings.cols());
  for (std::size_t p = 0; p < num_props; ++p) {
    d_logits[p] += softmax_backward(acts[p].probs, d_probs[p]);
    d_embeddings += backward_pair(params, embeddings,
                                  sentence.propositions[p].pred, acts[p],
                                  d_logits[p], out.gradients);
  }
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    int id = sentence.tokens[i];
    if (id < 0 || id >= params[kEmbedding].rows()) id = Vocabulary::kUnknown;
    out.gradients[kEmbedding].row(id) +=
        d_embeddings.row(static_cast<Eigen::Index>(i));
  }
  return out;
}

SentenceObjective batch_objective(const Tagger& tagger,
                                  std::span<const EncodedSentence> batch,
                                  const SentenceObjectiveOptions& options) {
  SentenceObjectiveOptions opts = options;
  opts.dropout_seed.reset();
  SentenceObjective out;
  if (opts.compute_gradients) out.gradients = tagger.params.zeros();
  if (batch.empty()) return out;
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (const EncodedSentence& s : batch) {
    const SentenceObjective one = sentence_objective(tagger, s, opts);
    out.parts.ce += scale * one.parts.ce;
    out.parts.lu += scale * one.parts.lu;
    out.parts.lo += scale * one.parts.lo;
    out.parts.lf += scale * one.parts.lf;
    out.total += scale * one.total;
    out.branch = softlogic::mix_branch(out.branch, one.branch);
    if (opts.compute_gradients) {
      for (int p = 0; p < kNumParams; ++p) {
        out.gradients[p] += scale * one.gradients[p];
      }
    }
  }
  return out;
}

std::vector<ScoreGrid> sentence_grids(const Tagger& tagger,
                                      const EncodedSentence& sentence) {
  const Eigen::MatrixXd embeddings = encode(sentence.tokens, tagger.params);
  std::vector<ScoreGrid> grids;
  for (const EncodedProposition& p : sentence.propositions) {
    ScoreGrid g = score_pair(embeddings, p.pred, tagger.params);
    g.sentence_id = sentence.id;
    grids.push_back(std::move(g));
  }
  return grids;
}

CorpusTags predict(const Tagger& tagger,
                   std::span<const EncodedSentence> sentences) {
  const Eigen::MatrixXd transitions =
      tagger.params[kTransitions] +
      transition_mask(tagger.params.config.num_tags, /*hard_bio=*/true);
  CorpusTags out;
  out.reserve(sentences.size());
  for (const EncodedSentence& s : sentences) {
    const Eigen::MatrixXd embeddings = encode(s.tokens, tagger.params);
    auto& props = out.emplace_back();
    for (const EncodedProposition& p : s.propositions) {
      const PairActivations acts =
          forward_pair(tagger.params, embeddings, p.pred, nullptr);
      props.push_back(viterbi(acts.logits, transitions).tags);
    }
  }
  return out;
}

}  // namespace rolegrad
