// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/optim.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace eegrec {

Tensor xavier_init(const Shape& shape, std::uint64_t seed) {
  if (shape.empty()) throw_contract("xavier_init: shape must have at least one dimension");
  double fan_in = static_cast<double>(shape.front());
  double fan_out = static_cast<double>(shape.back());
  double bound = std::sqrt(6.0 / (fan_in + fan_out));
  Rng rng(seed);
  Tensor t(shape, 0.0, true);
  for (double& v : t.values()) v = rng.uniform(-bound, bound);
  return t;
}

void AdamState::register_param(const Tensor& p) {
  if (!p.requires_grad()) {
    throw_contract("adam: parameter '" + p.name() + "' does not require gradients");
  }
  Slot s;
  s.param = p;
  s.m.assign(p.size(), 0.0);
  s.v.assign(p.size(), 0.0);
  slots_.push_back(std::move(s));
}

void AdamState::register_params(const std::vector<Tensor>& ps) {
  for (const Tensor& p : ps) register_param(p);
}

void AdamState::step() {
  // Validate every gradient before mutating anything, so a bad gradient
  // rejects the update as a whole.
  for (const Slot& s : slots_) {
    const Tensor& p = s.param;
    if (!p.has_grad()) continue;
    for (double g : const_cast<Tensor&>(p).grad()) {
      if (!std::isfinite(g)) {
        throw_data("adam: non-finite gradient for parameter '" +
                   (p.name().empty() ? std::string("<unnamed>") : p.name()) + "'");
      }
    }
  }
  ++step_count_;
  double t = static_cast<double>(step_count_);
  double bc1 = 1.0 - std::pow(cfg_.beta1, t);
  double bc2 = 1.0 - std::pow(cfg_.beta2, t);
  for (Slot& s : slots_) {
    if (!s.param.has_grad()) continue;
    std::vector<double>& vals = s.param.values();
    std::vector<double>& grads = s.param.grad();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      double g = grads[i];
      s.m[i] = cfg_.beta1 * s.m[i] + (1.0 - cfg_.beta1) * g;
      s.v[i] = cfg_.beta2 * s.v[i] + (1.0 - cfg_.beta2) * g * g;
      double m_hat = s.m[i] / bc1;
      double v_hat = s.v[i] / bc2;
      vals[i] -= cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
    }
  }
  zero_grads();
}

void AdamState::zero_grads() {
  for (Slot& s : slots_) s.param.zero_grad();
}

}  // namespace eegrec
