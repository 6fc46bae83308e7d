// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "core/tensor.hpp"

namespace eegrec {

/// One raw EEG capture: M electrode rows by N samples, plus a class label.
struct EegRecording {
  Tensor signal;  // M x N
  std::string label;
  std::string recording_id;
};

struct NormalizedSignal {
  Tensor matrix;  // M x N, all entries in [-1, 1]
  bool degenerate = false;  // constant input, normalized to all zeros
};

/// Sliding-window segmentation of one normalized recording. Segment (m, i)
/// lives at row flat_index(m, i, per_electrode) - 1 of the matrix; indices in
/// the public API are 1-based to match the windowing formulas.
struct SegmentSet {
  Tensor segments;  // (M * per_electrode) x window
  std::size_t electrodes = 0;      // M
  std::size_t window = 0;          // window width
  std::size_t step = 0;            // slide step
  std::size_t per_electrode = 0;   // segments per electrode
  std::size_t total() const { return electrodes * per_electrode; }
};

namespace preprocess {

/// (x - mean(x)) / (max(x) - min(x)) over the whole matrix. A constant
/// signal normalizes to all zeros and is flagged degenerate.
NormalizedSignal mean_normalize(const EegRecording& rec);

/// Number of windows per electrode row: floor((N - window + step) / step).
std::size_t segments_per_electrode(std::size_t n, std::size_t window, std::size_t step);

/// Cuts every electrode row into `window`-wide segments advancing by `step`.
SegmentSet sliding_window(const Tensor& normalized, std::size_t window, std::size_t step);

/// 1-based (electrode m, segment i) -> flat segment index j = (m-1)*per + i.
std::size_t flat_index(std::size_t m, std::size_t i, std::size_t per_electrode);

}  // namespace preprocess

}  // namespace eegrec
