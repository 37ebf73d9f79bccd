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

#include "rolegrad/model.h"

#include <cmath>

#include "rolegrad/crf.h"
#include "rolegrad/error.h"
#include "rolegrad/vocab.h"

namespace rolegrad {

namespace {

// Glorot-uniform weights.
Eigen::MatrixXd glorot(int rows, int cols, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / (rows + cols));
  std::uniform_real_distribution<double> dist(-limit, limit);
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = dist(rng);
  }
  return m;
}

std::uint64_t relu_pattern(const Eigen::MatrixXd& pre, std::uint64_t seed) {
  std::uint64_t h = seed;
  std::uint64_t word = 0;
  int bits = 0;
  for (Eigen::Index i = 0; i < pre.size(); ++i) {
    word = (word << 1) | (pre.data()[i] > 0.0 ? 1 : 0);
    if (++bits == 64) {
      h = softlogic::mix_branch(h, word);
      word = 0;
      bits = 0;
    }
  }
  return softlogic::mix_branch(h, word ^ (static_cast<std::uint64_t>(bits) << 58));
}

}  // namespace

void ModelConfig::validate() const {
  if (vocab_size < 1 || num_tags < 1 || embed_dim < 1 || hidden_dim < 1) {
    throw ConfigError("model dimensions must be positive");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw ConfigError("dropout must lie in [0, 1)");
  }
}

const char* param_name(int param) {
  static constexpr std::array<const char*, kNumParams> kNames = {
      "embedding", "predicate_w", "predicate_b", "argument_w",
      "argument_b", "pair_w1",     "pair_b1",     "pair_w2",
      "pair_b2",   "output_w",    "output_b",    "transitions"};
  return kNames.at(param);
}

ModelParams ModelParams::initialize(const ModelConfig& config,
                                    std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  const int d = config.embed_dim;
  const int h = config.hidden_dim;
  const int t = config.num_tags;
  ModelParams p;
  p.config = config;
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(d));
  p[kEmbedding].resize(config.vocab_size, d);
  for (Eigen::Index i = 0; i < p[kEmbedding].size(); ++i) {
    p[kEmbedding].data()[i] = normal(rng);
  }
  p[kPredicateW] = glorot(h, d, rng);
  p[kPredicateB] = Eigen::MatrixXd::Zero(h, 1);
  p[kArgumentW] = glorot(h, d, rng);
  p[kArgumentB] = Eigen::MatrixXd::Zero(h, 1);
  p[kPairW1] = glorot(h, 2 * h, rng);
  p[kPairB1] = Eigen::MatrixXd::Zero(h, 1);
  p[kPairW2] = glorot(h, h, rng);
  p[kPairB2] = Eigen::MatrixXd::Zero(h, 1);
  p[kOutputW] = glorot(t, h, rng);
  p[kOutputB] = Eigen::MatrixXd::Zero(t, 1);
  p[kTransitions] = Eigen::MatrixXd::Zero(t + 2, t + 2);
  return p;
}

Eigen::MatrixXd ModelParams::transition_scores() const {
  return tensors[kTransitions] +
         transition_mask(config.num_tags, config.hard_transitions);
}

ParamTensors ModelParams::zeros() const {
  ParamTensors out;
  for (int i = 0; i < kNumParams; ++i) {
    out[i] = Eigen::MatrixXd::Zero(tensors[i].rows(), tensors[i].cols());
  }
  return out;
}

std::size_t ModelParams::num_scalars() const {
  std::size_t n = 0;
  for (const auto& t : tensors) n += static_cast<std::size_t>(t.size());
  return n;
}

Eigen::MatrixXd encode(std::span<const int> token_ids,
                       const ModelParams& params) {
  const Eigen::MatrixXd& table = params[kEmbedding];
  Eigen::MatrixXd out(static_cast<Eigen::Index>(token_ids.size()), table.cols());
  for (std::size_t i = 0; i < token_ids.size(); ++i) {
    int id = token_ids[i];
    if (id < 0 || id >= table.rows()) id = Vocabulary::kUnknown;
    out.row(static_cast<Eigen::Index>(i)) = table.row(id);
  }
  return out;
}

PairActivations forward_pair(const ModelParams& params,
                             const Eigen::MatrixXd& embeddings, int pred,
                             std::mt19937_64* dropout_rng) {
  const int n = static_cast<int>(embeddings.rows());
  const int h = params.config.hidden_dim;
  PairActivations acts;

  // [v_u; a_i] for every token i, one row each.
  const Eigen::VectorXd v = params[kPredicateW] *
                                embeddings.row(pred).transpose() +
                            params[kPredicateB];
  Eigen::MatrixXd joint(n, 2 * h);
  joint.leftCols(h) = v.transpose().replicate(n, 1);
  joint.rightCols(h) = (embeddings * params[kArgumentW].transpose()).rowwise() +
                       params[kArgumentB].col(0).transpose();

  acts.pre1 = (joint * params[kPairW1].transpose()).rowwise() +
              params[kPairB1].col(0).transpose();
  const Eigen::MatrixXd act1 = acts.pre1.cwiseMax(0.0);
  acts.pre2 = (act1 * params[kPairW2].transpose()).rowwise() +
              params[kPairB2].col(0).transpose();
  acts.hidden = acts.pre2.cwiseMax(0.0);
  acts.branch = relu_pattern(acts.pre2, relu_pattern(acts.pre1, 0));

  if (dropout_rng != nullptr && params.config.dropout > 0.0) {
    const double p = params.config.dropout;
    std::bernoulli_distribution drop(p);
    acts.keep.resize(n, h);
    for (Eigen::Index i = 0; i < acts.keep.size(); ++i) {
      acts.keep.data()[i] = drop(*dropout_rng) ? 0.0 : 1.0 / (1.0 - p);
    }
    acts.hidden = acts.hidden.cwiseProduct(acts.keep);
  }

  acts.logits = (acts.hidden * params[kOutputW].transpose()).rowwise() +
                params[kOutputB].col(0).transpose();
  acts.probs.resize(n, acts.logits.cols());
  for (int i = 0; i < n; ++i) {
    const double m = acts.logits.row(i).maxCoeff();
    Eigen::RowVectorXd e = (acts.logits.row(i).array() - m).exp().matrix();
    acts.probs.row(i) = e / e.sum();
  }
  return acts;
}

Eigen::MatrixXd softmax_backward(const Eigen::MatrixXd& probs,
                                 const Eigen::MatrixXd& d_probs) {
  const Eigen::VectorXd dot = probs.cwiseProduct(d_probs).rowwise().sum();
  return probs.cwiseProduct(d_probs.colwise() - dot);
}

Eigen::MatrixXd backward_pair(const ModelParams& params,
                              const Eigen::MatrixXd& embeddings, int pred,
                              const PairActivations& acts,
                              const Eigen::MatrixXd& d_logits,
                              ParamTensors& grads) {
  const int n = static_cast<int>(embeddings.rows());
  const int h = params.config.hidden_dim;

  grads[kOutputW] += d_logits.transpose() * acts.hidden;
  grads[kOutputB] += d_logits.colwise().sum().transpose();
  Eigen::MatrixXd d_hidden = d_logits * params[kOutputW];
  if (acts.keep.size() > 0) d_hidden = d_hidden.cwiseProduct(acts.keep);

  const Eigen::MatrixXd d_pre2 =
      d_hidden.cwiseProduct((acts.pre2.array() > 0.0).cast<double>().matrix());
  const Eigen::MatrixXd act1 = acts.pre1.cwiseMax(0.0);
  grads[kPairW2] += d_pre2.transpose() * act1;
  grads[kPairB2] += d_pre2.colwise().sum().transpose();
  const Eigen::MatrixXd d_pre1 =
      (d_pre2 * params[kPairW2])
          .cwiseProduct((acts.pre1.array() > 0.0).cast<double>().matrix());

  const Eigen::VectorXd v = params[kPredicateW] *
                                embeddings.row(pred).transpose() +
                            params[kPredicateB];
  Eigen::MatrixXd joint(n, 2 * h);
  joint.leftCols(h) = v.transpose().replicate(n, 1);
  joint.rightCols(h) = (embeddings * params[kArgumentW].transpose()).rowwise() +
                       params[kArgumentB].col(0).transpose();
  grads[kPairW1] += d_pre1.transpose() * joint;
  grads[kPairB1] += d_pre1.colwise().sum().transpose();
  const Eigen::MatrixXd d_joint = d_pre1 * params[kPairW1];

  const Eigen::VectorXd d_v = d_joint.leftCols(h).colwise().sum().transpose();
  const Eigen::MatrixXd d_a = d_joint.rightCols(h);
  grads[kArgumentW] += d_a.transpose() * embeddings;
  grads[kArgumentB] += d_a.colwise().sum().transpose();
  grads[kPredicateW] += d_v * embeddings.row(pred);
  grads[kPredicateB] += d_v;

  Eigen::MatrixXd d_emb = d_a * params[kArgumentW];
  d_emb.row(pred) += (params[kPredicateW].transpose() * d_v).transpose();
  return d_emb;
}

ScoreGrid score_pair(const Eigen::MatrixXd& embeddings, int pred,
                     const ModelParams& params) {
  ScoreGrid grid;
  grid.predicate_index = pred;
  grid.probs = forward_pair(params, embeddings, pred, nullptr).probs;
  return grid;
}

}  // namespace rolegrad
