// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "core/tensor.hpp"

namespace eegrec {

/// Glorot-uniform initialization: values uniform in +-sqrt(6/(fan_in+fan_out)),
/// fan_in = first dimension, fan_out = last dimension. Deterministic per seed.
Tensor xavier_init(const Shape& shape, std::uint64_t seed);

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Bias-corrected Adam over a fixed set of registered parameters. step()
/// consumes the parameters' grad buffers and zeroes them afterwards.
class AdamState {
 public:
  explicit AdamState(AdamConfig cfg = {}) : cfg_(cfg) {}

  void register_param(const Tensor& p);
  void register_params(const std::vector<Tensor>& ps);

  /// One update over all registered parameters. A non-finite gradient
  /// rejects the whole step and reports the offending parameter.
  void step();

  std::uint64_t step_count() const { return step_count_; }
  const AdamConfig& config() const { return cfg_; }
  void zero_grads();

 private:
  struct Slot {
    Tensor param;
    std::vector<double> m;
    std::vector<double> v;
  };
  AdamConfig cfg_;
  std::vector<Slot> slots_;
  std::uint64_t step_count_ = 0;
};

}  // namespace eegrec
