// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "core/tensor.hpp"

namespace eegrec::quantum {

// The Hilbert space here is real-valued: EEG vectors have no complex part,
// so bras are plain transposes and operators are symmetric.

struct UnitState {
  Tensor state;            // 1 x dim row vector, unit length or all zeros
  bool degenerate = false;  // input norm below threshold, state is zero
};

/// Measurement of one state against one learnable basis: the collapse
/// probability per basis vector plus the index sets driving selection.
struct CollapseResult {
  std::vector<double> probabilities;     // (b_j . state)^2 per basis row
  std::vector<std::size_t> top;          // c highest, ties to the lowest index
  std::vector<std::size_t> bottom;       // c lowest among the rest, same tie rule
};

/// v / |v|. Norms below 1e-12 yield the zero state, flagged degenerate.
UnitState to_unit_state(const Tensor& v);

/// Probabilities of collapsing onto each basis row plus top/bottom-c index
/// sets. Requires 2c <= basis rows so the two sets stay disjoint.
CollapseResult collapse_probabilities(const Tensor& state, const Tensor& basis, std::size_t c);

/// Splits indices by probability: the c largest and, excluding those, the c
/// smallest. Ties break toward the lowest index, so runs are reproducible.
void select_indices(const std::vector<double>& probabilities, std::size_t c,
                    std::vector<std::size_t>& top, std::vector<std::size_t>& bottom);

struct MixedState {
  Tensor state;  // 1 x dim
  bool empty_selection = false;
};

/// Projects a state onto the span of the selected basis rows using the
/// summed-operator form (sum of outer products applied once).
MixedState project_mixed_state(const Tensor& state, const Tensor& basis,
                               const std::vector<std::size_t>& indices);

/// Sum of outer products b_j b_j^T over the selected rows; always symmetric.
Tensor event_operator(const Tensor& basis, const std::vector<std::size_t>& indices);

/// Interference of a past event on a future one:
///   2 * s^T * o_past_not * o_future * o_future * o_past * s
double interference_value(const Tensor& state, const Tensor& o_past, const Tensor& o_past_not,
                          const Tensor& o_future);

/// | B B^T - I |_F, zero exactly when the rows are orthonormal.
double orthogonality_penalty(const Tensor& basis);

}  // namespace eegrec::quantum
