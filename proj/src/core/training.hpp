// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "core/data.hpp"
#include "core/model.hpp"
#include "core/optim.hpp"
#include "core/rng.hpp"

namespace eegrec::training {

struct TrainConfig {
  model::ModelConfig model;
  double learning_rate = 1e-4;
  std::size_t batch_size = 16;
  double reg_weight = 1e-4;  // rho
  std::size_t epochs = 10;
  std::uint64_t seed = 1;
  std::size_t pos_per_step = 1;  // liked items sampled per instance per step
  std::size_t neg_per_step = 1;
  bool use_continuity_loss = true;
  bool use_qm_loss = true;
  std::size_t threads = 1;  // parallel instances per batch; reduction order is fixed

  void validate() const;
};

/// One liked/disliked catalog pairing for the ranking loss.
struct TrainingPair {
  std::size_t liked;     // catalog index, same label as the instance
  std::size_t disliked;  // catalog index, any other label
};

/// Uniform without-replacement draws: n_pos items of the instance's label
/// crossed with n_neg items of other labels. Pairings are resampled fresh
/// each step.
std::vector<TrainingPair> sample_pairs(const std::string& label,
                                       const data::ItemCatalog& catalog, std::size_t n_pos,
                                       std::size_t n_neg, Rng& rng);

/// Pairwise ranking loss for one instance:
///   sum over pairs of -log(sigmoid(rep . liked - rep . disliked))
Tensor bpr_loss(const Tensor& rep, const std::vector<Tensor>& liked,
                const std::vector<Tensor>& disliked);

struct ContinuityLoss {
  Tensor loss;            // scalar; zero constant when too few segments
  bool too_short = false;
};

/// Pulls each projected segment toward the next raw state on its electrode:
///   sum over m, i < per of -log(sigmoid(learned(m,i) . state(m,i+1)))
ContinuityLoss continuity_loss(const model::ForwardResult& fwd);

/// Mean orthogonality penalty over every segment basis.
Tensor orthogonality_loss(const model::ModelParams& params);

/// Frobenius-norm regularizer over the whole parameter registry, weighted.
Tensor regularizer(const model::ModelParams& params, double rho);

/// L = L1 + L2 + L3 + rho * |params|_F. A non-finite term aborts the step
/// naming the term.
Tensor total_loss(const Tensor& l1, const Tensor& l2, const Tensor& l3,
                  const model::ModelParams& params, double rho);

struct EpochStats {
  std::size_t epoch = 0;
  double l1 = 0.0;    // ranking
  double l2 = 0.0;    // orthogonality
  double l3 = 0.0;    // continuity
  double reg = 0.0;
  double total = 0.0;
  double wall_seconds = 0.0;  // reported, never written to the epoch log
};

struct TrainResult {
  model::ModelParams params;
  std::vector<EpochStats> log;
  bool halted_on_nan = false;
  std::size_t halted_epoch = 0;  // epoch whose update produced the bad loss
};

using EpochCallback = std::function<void(const EpochStats&, const model::ModelParams&)>;

/// Seeded mini-batch loop: per instance forward + ranking/continuity terms,
/// one shared orthogonality+regularizer term per batch, gradients averaged
/// over the batch, Adam update. A non-finite loss halts training and returns
/// the parameters from the end of the previous epoch.
TrainResult train(const std::vector<EegRecording>& train_set, const data::ItemCatalog& catalog,
                  const TrainConfig& cfg, const EpochCallback& on_epoch = nullptr);

}  // namespace eegrec::training
