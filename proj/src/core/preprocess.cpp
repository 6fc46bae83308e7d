// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace eegrec::preprocess {

NormalizedSignal mean_normalize(const EegRecording& rec) {
  const Tensor& x = rec.signal;
  if (!x.all_finite()) {
    throw_data("mean_normalize: recording '" + rec.recording_id + "' contains non-finite values");
  }
  double lo = x.values()[0], hi = x.values()[0], total = 0.0;
  for (double v : x.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    total += v;
  }
  NormalizedSignal out;
  out.matrix = Tensor(x.shape());
  if (hi == lo) {
    out.degenerate = true;  // flat signal, nothing to scale
    return out;
  }
  double mean = total / static_cast<double>(x.size());
  double range = hi - lo;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.matrix.values()[i] = (x.values()[i] - mean) / range;
  }
  return out;
}

std::size_t segments_per_electrode(std::size_t n, std::size_t window, std::size_t step) {
  if (window == 0 || step == 0) throw_config("window and step must be positive");
  if (window > n) {
    throw_config("window " + std::to_string(window) + " exceeds signal length " +
                 std::to_string(n));
  }
  return (n - window + step) / step;
}

SegmentSet sliding_window(const Tensor& normalized, std::size_t window, std::size_t step) {
  std::size_t m_count = normalized.rows();
  std::size_t n = normalized.cols();
  std::size_t per = segments_per_electrode(n, window, step);

  // Last window must end inside the row; guaranteed by the floor above.
  if ((per - 1) * step + window > n) throw_internal("sliding_window: overrun");

  SegmentSet set;
  set.electrodes = m_count;
  set.window = window;
  set.step = step;
  set.per_electrode = per;
  set.segments = Tensor({m_count * per, window});
  for (std::size_t m = 0; m < m_count; ++m) {
    for (std::size_t i = 0; i < per; ++i) {
      std::size_t start = i * step;
      std::size_t row = m * per + i;
      for (std::size_t j = 0; j < window; ++j) {
        set.segments.at(row, j) = normalized.at(m, start + j);
      }
    }
  }
  return set;
}

std::size_t flat_index(std::size_t m, std::size_t i, std::size_t per_electrode) {
  if (m < 1 || i < 1 || i > per_electrode) {
    throw_contract("flat_index: indices (m=" + std::to_string(m) + ", i=" + std::to_string(i) +
                   ") out of range for " + std::to_string(per_electrode) +
                   " segments per electrode");
  }
  return (m - 1) * per_electrode + i;
}

}  // namespace eegrec::preprocess
