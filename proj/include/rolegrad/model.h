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

// Predicate-argument pair scorer.
//
//   e        = embedding rows of the sentence
//   v_u, a_i = W_v e_u + b_v,  W_a e_i + b_a
//   phi_ui   = relu(W_2 relu(W_1 [v_u; a_i] + b_1) + b_2)
//   logits   = W_g dropout(phi_ui) + b_g
//   y_ui     = softmax(logits)
//
// The logits feed both the softmax (constraint literals) and the CRF
// (likelihood and decoding).

#ifndef ROLEGRAD_MODEL_H_
#define ROLEGRAD_MODEL_H_

#include <array>
#include <cstdint>
#include <random>
#include <span>

#include <Eigen/Dense>

#include "rolegrad/constraints.h"

namespace rolegrad {

struct ModelConfig {
  int vocab_size = 0;
  int num_tags = 0;
  int embed_dim = 32;
  int hidden_dim = 64;
  double dropout = 0.5;
  bool hard_transitions = true;
  // Adds per-token softmax cross-entropy against gold to L_E.
  bool token_ce = true;

  // Throws ConfigError on nonpositive sizes or dropout outside [0, 1).
  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

enum Param : int {
  kEmbedding,    // vocab x d
  kPredicateW,   // h x d
  kPredicateB,   // h x 1
  kArgumentW,    // h x d
  kArgumentB,    // h x 1
  kPairW1,       // h x 2h
  kPairB1,       // h x 1
  kPairW2,       // h x h
  kPairB2,       // h x 1
  kOutputW,      // T x h
  kOutputB,      // T x 1
  kTransitions,  // (T + 2) x (T + 2)
  kNumParams
};

const char* param_name(int param);

using ParamTensors = std::array<Eigen::MatrixXd, kNumParams>;

struct ModelParams {
  ModelConfig config;
  ParamTensors tensors;

  static ModelParams initialize(const ModelConfig& config, std::uint64_t seed);

  Eigen::MatrixXd& operator[](int p) { return tensors[p]; }
  const Eigen::MatrixXd& operator[](int p) const { return tensors[p]; }

  // Learned transitions plus the structural / BIO -inf mask.
  Eigen::MatrixXd transition_scores() const;
  ParamTensors zeros() const;
  std::size_t num_scalars() const;
};

// Embedding lookup. Ids outside the table map to Vocabulary::kUnknown.
Eigen::MatrixXd encode(std::span<const int> token_ids,
                       const ModelParams& params);

struct PairActivations {
  Eigen::MatrixXd pre1;     // n x h
  Eigen::MatrixXd pre2;     // n x h
  Eigen::MatrixXd hidden;   // n x h, after ReLU and dropout
  Eigen::MatrixXd keep;     // n x h dropout scale; empty in evaluation
  Eigen::MatrixXd logits;   // n x T
  Eigen::MatrixXd probs;    // n x T
  std::uint64_t branch = 0; // ReLU sign pattern
};

// Runs the scorer for predicate `pred`. dropout_rng == nullptr evaluates
// without dropout.
PairActivations forward_pair(const ModelParams& params,
                             const Eigen::MatrixXd& embeddings, int pred,
                             std::mt19937_64* dropout_rng);

// Accumulates parameter gradients (except the embedding table) and returns
// d loss / d embeddings.
Eigen::MatrixXd backward_pair(const ModelParams& params,
                              const Eigen::MatrixXd& embeddings, int pred,
                              const PairActivations& acts,
                              const Eigen::MatrixXd& d_logits,
                              ParamTensors& grads);

// d loss / d logits given d loss / d probs for row-wise softmax.
Eigen::MatrixXd softmax_backward(const Eigen::MatrixXd& probs,
                                 const Eigen::MatrixXd& d_probs);

// Evaluation-mode scorer output as a ScoreGrid.
ScoreGrid score_pair(const Eigen::MatrixXd& embeddings, int pred,
                     const ModelParams& params);

}  // namespace rolegrad

#endif  // ROLEGRAD_MODEL_H_
