// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace eegrec {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& s);
std::string shape_str(const Shape& s);

struct TensorData {
  Shape shape;
  std::vector<double> values;
  bool requires_grad = false;
  std::vector<double> grad;  // allocated on demand, always values.size() once present
  std::string name;
};

class Graph;

/// Dense row-major tensor of 64-bit floats. Value-semantics handle onto a
/// shared buffer: copies are cheap and alias.
///
/// A tensor is either a leaf (parameter or constant, not produced by any
/// graph) or the output of a Graph node. Leaf tensors with requires_grad set
/// collect gradients in their own grad buffer; node tensors keep gradients
/// inside the graph that produced them and are only valid while it lives.
class Tensor {
 public:
  Tensor() = default;

  Tensor(Shape shape, double fill = 0.0, bool requires_grad = false);

  static Tensor from_values(Shape shape, std::vector<double> values,
                            bool requires_grad = false);
  static Tensor scalar(double v);
  static Tensor matrix(std::initializer_list<std::initializer_list<double>> rows);
  static Tensor identity(std::size_t n);

  bool defined() const { return d_ != nullptr; }

  const Shape& shape() const { return d_->shape; }
  std::size_t ndim() const { return d_->shape.size(); }
  std::size_t size() const { return d_->values.size(); }
  std::size_t rows() const;
  std::size_t cols() const;
  bool is_scalar() const { return size() == 1; }

  std::vector<double>& values() { return d_->values; }
  const std::vector<double>& values() const { return d_->values; }
  double value() const;  // scalar tensors only
  double at(std::size_t r, std::size_t c) const;
  double& at(std::size_t r, std::size_t c);

  bool requires_grad() const { return d_->requires_grad; }
  void set_requires_grad(bool rg) { d_->requires_grad = rg; }

  /// Leaf gradient accumulator; allocated (zeroed) on first touch.
  std::vector<double>& grad();
  bool has_grad() const { return !d_->grad.empty(); }
  void zero_grad();

  const std::string& name() const { return d_->name; }
  Tensor& set_name(std::string name);

  /// Identity of the underlying buffer (stable across handle copies).
  const TensorData* data_ptr() const { return d_.get(); }
  TensorData* data_ptr() { return d_.get(); }

  /// Deep copy into a fresh leaf (no graph linkage, no grad).
  Tensor clone() const;

  bool all_finite() const;

  // Graph bookkeeping; set by Graph::emit.
  int node_index() const { return node_; }
  const Graph* producer() const { return producer_; }

 private:
  std::shared_ptr<TensorData> d_;
  int node_ = -1;
  Graph* producer_ = nullptr;
  friend class Graph;
};

/// Reverse-mode tape. Operations executed under an active GraphScope append
/// one record each, in execution order (which is already a topological
/// order). backward() replays the records once, in reverse, accumulating
/// gradients additively across fan-out.
class Graph {
 public:
  struct Node;
  using BackwardFn = std::function<void(Graph&, const Node&)>;

  struct Node {
    Tensor out;
    std::vector<Tensor> ins;
    BackwardFn back;
    std::vector<double> grad;  // dLoss/dOut, allocated during backward()
  };

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  std::size_t node_count() const { return nodes_.size(); }

  /// Runs reverse accumulation from a scalar loss produced by this graph.
  void backward(const Tensor& loss);
  bool backward_done() const { return backward_done_; }

  /// Gradient of a node tensor after backward(); null if untouched.
  const std::vector<double>* node_grad(const Tensor& t) const;

  /// Gradient accumulated for a requires_grad leaf; null if untouched.
  const std::vector<double>* leaf_grad(const Tensor& leaf) const;

  /// Adds scale * (accumulated leaf gradients) into the leaves' own grad
  /// buffers. Deterministic: leaves are visited in first-use order.
  void add_leaf_grads_to(double scale = 1.0);

  // -- op-implementation interface --

  /// Appends a node; computes nothing (values are produced eagerly by ops).
  Tensor emit(Shape shape, std::vector<double> values, std::vector<Tensor> ins,
              BackwardFn back);

  /// Gradient sink for an input tensor seen inside a backward closure.
  /// Returns null when the input needs no gradient.
  double* grad_sink(const Tensor& t);

  const double* grad_of(const Node& n) const { return n.grad.data(); }

 private:
  std::vector<Node> nodes_;
  std::unordered_map<const TensorData*, std::vector<double>> leaf_grads_;
  std::vector<const TensorData*> leaf_order_;
  std::unordered_map<const TensorData*, Tensor> leaf_handles_;
  bool backward_done_ = false;
};

/// RAII scope making a fresh graph the active tape for the current thread.
/// Graph ops require an active scope; scopes nest.
class GraphScope {
 public:
  GraphScope();
  ~GraphScope();
  GraphScope(const GraphScope&) = delete;
  GraphScope& operator=(const GraphScope&) = delete;

  Graph& graph() { return graph_; }

 private:
  Graph graph_;
  Graph* previous_;
};

/// Makes an existing graph the active tape for the current thread, without
/// owning it. Lets batch workers build graphs whose lifetime outlives the
/// worker so gradients can be reduced later in a fixed order.
class GraphActivation {
 public:
  explicit GraphActivation(Graph& g);
  ~GraphActivation();
  GraphActivation(const GraphActivation&) = delete;
  GraphActivation& operator=(const GraphActivation&) = delete;

 private:
  Graph* previous_;
};

/// Active tape for this thread, or null outside any scope.
Graph* active_graph();

// ---- differentiable operations (require an active GraphScope) ----

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);  // elementwise
Tensor scale(const Tensor& a, double s);
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);
Tensor relu(const Tensor& a);
Tensor softplus(const Tensor& a);  // log(1 + exp(x)), numerically stable
Tensor sum(const Tensor& a);
Tensor mean(const Tensor& a);
Tensor reshape(const Tensor& a, Shape shape);
Tensor concat_cols(const std::vector<Tensor>& parts);
Tensor vstack(const std::vector<Tensor>& parts);
Tensor gather_rows(const Tensor& a, const std::vector<std::size_t>& rows);
Tensor add_n(const std::vector<Tensor>& terms);

/// Divides every row by its sum; all-zero rows pass through unchanged.
Tensor row_normalize(const Tensor& a);

/// Frobenius norm as a scalar node (gradient a/|a|, zero at the origin).
Tensor frobenius_norm(const Tensor& a);

// ---- plain value-level helpers (no graph, leaf results) ----

namespace lin {

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);
double dot(const Tensor& a, const Tensor& b);  // same-size, flat
Tensor outer(const Tensor& a, const Tensor& b);
double norm(const Tensor& a);                  // Frobenius / L2
Tensor add(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);

}  // namespace lin

}  // namespace eegrec
