// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/preprocess.hpp"
#include "core/quantum.hpp"
#include "core/tensor.hpp"

namespace eegrec::model {

struct ModelConfig {
  std::size_t electrodes = 5;    // EEG channels per recording
  std::size_t samples = 360;     // samples per channel
  std::size_t window = 15;       // segment width
  std::size_t step = 25;         // slide step
  std::size_t basis_count = 15;  // learnable basis vectors per segment slot
  std::size_t select_count = 2;  // c, size of top/bottom selections
  double alpha = 0.8;            // continuity filter ratio
  double beta = 0.4;             // interference filter ratio
  std::size_t depth = 5;         // GCN depth
  double teleport = 0.3;         // mix-back ratio toward the learned segments
  std::size_t hidden = 128;      // fusion hidden width
  std::size_t embed_dim = 64;    // item embedding dimension
  bool concat_input = false;     // also prepend the depth-0 block to the concat

  // ablation switches
  bool use_interference = true;
  bool use_continuity = true;
  bool temporal_mask = true;

  std::size_t segments_per_electrode() const;
  std::size_t total_segments() const;
  std::size_t concat_blocks() const { return depth + (concat_input ? 1 : 0); }
  std::size_t flat_width() const { return total_segments() * concat_blocks() * window; }
  void validate() const;
};

/// The three fused linear stages: two branch encoders plus the join.
struct FusionHead {
  Tensor h1, h2;  // continuity branch: flat -> hidden -> hidden
  Tensor h3, h4;  // interference branch: flat -> hidden -> hidden
  Tensor h5, h6;  // join: 2*hidden -> hidden -> embed_dim
};

/// Every learnable tensor in the network, in a fixed registry order.
struct ModelParams {
  std::vector<Tensor> bases;        // one basis_count x window matrix per segment
  std::vector<Tensor> cont_layers;  // depth window x window matrices
  std::vector<Tensor> intf_layers;
  FusionHead head;

  static ModelParams init(const ModelConfig& cfg, std::uint64_t seed);

  std::vector<Tensor> all() const;
  std::vector<std::pair<std::string, Tensor>> named() const;
};

/// Everything the loss terms and the inspect command need from one pass.
struct ForwardResult {
  Tensor final_rep;                  // 1 x embed_dim
  Tensor learned_segments;           // total x window (the projected states)
  std::vector<Tensor> learned_rows;  // the same, one 1 x window node per segment
  std::vector<quantum::UnitState> unit_states;
  std::vector<quantum::CollapseResult> collapses;
  SegmentSet segments;
  bool degenerate_recording = false;

  Tensor continuity_raw, continuity_filtered, continuity_norm;
  Tensor interference_raw, interference_filtered, interference_norm;
  double continuity_threshold = 0.0;
  double interference_threshold = 0.0;
};

/// One approximate-GCN propagation step:
///   [teleport * x_init + (1 - teleport) * adj_norm * x_prev] * layer
Tensor gcn_layer(const Tensor& x_init, const Tensor& x_prev, const Tensor& adj_norm,
                 const Tensor& layer, double teleport);

/// Feature-axis concatenation of per-depth outputs.
Tensor depth_concat(const std::vector<Tensor>& outputs);

/// Flattens both branch blocks and joins them through the fusion head.
Tensor fuse_final(const Tensor& cont_blocks, const Tensor& intf_blocks, const FusionHead& head);

/// Full pipeline for one recording. Must run under an active GraphScope.
ForwardResult forward(const EegRecording& rec, const ModelParams& params,
                      const ModelConfig& cfg);

}  // namespace eegrec::model
