// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "core/tensor.hpp"

namespace eegrec::adjacency {

// Both adjacency matrices index segments by flat position: row j is the
// future event, column k the past one, with segment-in-electrode positions
// i = j mod per_electrode and w = k mod per_electrode.

/// Gram matrix of the learned segment rows (graph op).
Tensor continuity_matrix(const Tensor& learned_segments);

/// All pairwise interference weights in one differentiable node:
///   out(j, k) = 2 * s_j^T O~_k O_j O_j O_k s_j
/// where O_j / O~_k are the operators of segment j's top and segment k's
/// bottom selections. top_rows / bottom_rows stack the c selected basis rows
/// of every segment ((total*c) x dim); states holds the unit segment states
/// (total x dim) and is treated as constant.
Tensor interference_matrix(const Tensor& top_rows, const Tensor& bottom_rows,
                           const Tensor& states, std::size_t c);

struct FilterResult {
  Tensor filtered;   // graph tensor, same shape as the input
  double threshold;  // resolved cut value on the post-ReLU matrix
};

/// ReLU, then drop entries below ratio*(max-min)+min of the post-ReLU
/// matrix, then zero every pair that is not strictly past-to-future
/// (i > w). The keep/drop decision is recomputed each forward pass and is
/// constant to the backward pass; retained values stay differentiable.
FilterResult apply_filter(const Tensor& adj, double ratio, std::size_t per_electrode,
                          bool temporal_mask = true);

}  // namespace eegrec::adjacency
