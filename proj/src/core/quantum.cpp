// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace eegrec::quantum {

namespace {
constexpr double kDegenerateNorm = 1e-12;
}

UnitState to_unit_state(const Tensor& v) {
  if (!v.all_finite()) throw_contract("to_unit_state: non-finite input");
  double norm = lin::norm(v);
  UnitState out;
  if (norm < kDegenerateNorm) {
    out.state = Tensor({1, v.size()});
    out.degenerate = true;  // the segment carries no signal to project
    return out;
  }
  out.state = Tensor({1, v.size()});
  for (std::size_t i = 0; i < v.size(); ++i) out.state.values()[i] = v.values()[i] / norm;
  return out;
}

void select_indices(const std::vector<double>& probabilities, std::size_t c,
                    std::vector<std::size_t>& top, std::vector<std::size_t>& bottom) {
  std::size_t n = probabilities.size();
  if (n < 2 * c) {
    throw_config("select_indices: need at least 2c = " + std::to_string(2 * c) +
                 " probabilities, got " + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (probabilities[a] != probabilities[b]) return probabilities[a] > probabilities[b];
    return a < b;
  });
  top.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(c));

  std::vector<bool> taken(n, false);
  for (std::size_t t : top) taken[t] = true;
  std::vector<std::size_t> rest;
  rest.reserve(n - c);
  for (std::size_t i = 0; i < n; ++i) {
    if (!taken[i]) rest.push_back(i);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    if (probabilities[a] != probabilities[b]) return probabilities[a] < probabilities[b];
    return a < b;
  });
  bottom.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(c));
}

CollapseResult collapse_probabilities(const Tensor& state, const Tensor& basis, std::size_t c) {
  std::size_t rows = basis.rows();
  if (2 * c > rows) {
    throw_config("collapse: c = " + std::to_string(c) + " exceeds half the basis size " +
                 std::to_string(rows));
  }
  if (basis.cols() != state.size()) {
    throw_contract("collapse: basis width " + std::to_string(basis.cols()) +
                   " does not match state length " + std::to_string(state.size()));
  }
  CollapseResult out;
  out.probabilities.resize(rows);
  for (std::size_t j = 0; j < rows; ++j) {
    double amp = 0.0;
    for (std::size_t k = 0; k < basis.cols(); ++k) {
      amp += basis.at(j, k) * state.values()[k];
    }
    out.probabilities[j] = amp * amp;
  }
  select_indices(out.probabilities, c, out.top, out.bottom);
  return out;
}

MixedState project_mixed_state(const Tensor& state, const Tensor& basis,
                               const std::vector<std::size_t>& indices) {
  MixedState out;
  if (indices.empty()) {
    out.state = Tensor({1, state.size()});
    out.empty_selection = true;
    return out;
  }
  Tensor op = event_operator(basis, indices);
  out.state = Tensor({1, state.size()});
  for (std::size_t i = 0; i < op.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < op.cols(); ++j) acc += op.at(i, j) * state.values()[j];
    out.state.values()[i] = acc;
  }
  return out;
}

Tensor event_operator(const Tensor& basis, const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw_contract("event_operator: empty index set");
  std::size_t dim = basis.cols();
  Tensor op({dim, dim});
  for (std::size_t j : indices) {
    if (j >= basis.rows()) {
      throw_contract("event_operator: basis index " + std::to_string(j) + " out of range");
    }
    for (std::size_t a = 0; a < dim; ++a) {
      double ba = basis.at(j, a);
      if (ba == 0.0) continue;
      for (std::size_t b = 0; b < dim; ++b) op.at(a, b) += ba * basis.at(j, b);
    }
  }
  return op;
}

double interference_value(const Tensor& state, const Tensor& o_past, const Tensor& o_past_not,
                          const Tensor& o_future) {
  std::size_t dim = state.size();
  for (const Tensor* op : {&o_past, &o_past_not, &o_future}) {
    if (op->ndim() != 2 || op->rows() != dim || op->cols() != dim) {
      throw_contract("interference_value: operator shape " + shape_str(op->shape()) +
                     " does not match state dimension " + std::to_string(dim));
    }
  }
  auto apply = [dim](const Tensor& op, const std::vector<double>& v) {
    std::vector<double> out(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) out[i] += op.at(i, j) * v[j];
    }
    return out;
  };
  std::vector<double> t = apply(o_past, state.values());
  t = apply(o_future, t);
  t = apply(o_future, t);
  t = apply(o_past_not, t);
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) acc += state.values()[i] * t[i];
  return 2.0 * acc;
}

double orthogonality_penalty(const Tensor& basis) {
  std::size_t rows = basis.rows();
  double ss = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      double g = 0.0;
      for (std::size_t k = 0; k < basis.cols(); ++k) g += basis.at(i, k) * basis.at(j, k);
      if (i == j) g -= 1.0;
      ss += g * g;
    }
  }
  return std::sqrt(ss);
}

}  // namespace eegrec::quantum
