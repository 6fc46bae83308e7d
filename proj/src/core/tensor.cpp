// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/tensor.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "core/error.hpp"

namespace eegrec {

std::size_t shape_numel(const Shape& s) {
  std::size_t n = 1;
  for (std::size_t d : s) n *= d;
  return n;
}

std::string shape_str(const Shape& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "x" : "") << s[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------- Tensor

Tensor::Tensor(Shape shape, double fill, bool requires_grad) {
  if (shape.empty()) throw_contract("tensor shape must have at least one dimension");
  for (std::size_t d : shape) {
    if (d == 0) throw_contract("tensor dimensions must be positive, got " + shape_str(shape));
  }
  d_ = std::make_shared<TensorData>();
  d_->shape = std::move(shape);
  d_->values.assign(shape_numel(d_->shape), fill);
  d_->requires_grad = requires_grad;
}

Tensor Tensor::from_values(Shape shape, std::vector<double> values, bool requires_grad) {
  Tensor t(shape, 0.0, requires_grad);
  if (values.size() != t.size()) {
    throw_contract("value count " + std::to_string(values.size()) +
                   " does not match shape " + shape_str(shape));
  }
  t.d_->values = std::move(values);
  return t;
}

Tensor Tensor::scalar(double v) { return from_values({1}, {v}); }

Tensor Tensor::matrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::size_t r = rows.size();
  std::size_t c = rows.begin()->size();
  std::vector<double> vals;
  vals.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw_contract("ragged matrix literal");
    for (double v : row) vals.push_back(v);
  }
  return from_values({r, c}, std::move(vals));
}

Tensor Tensor::identity(std::size_t n) {
  Tensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.values()[i * n + i] = 1.0;
  return t;
}

std::size_t Tensor::rows() const {
  if (ndim() != 2) throw_contract("rows(): tensor is not 2-D, shape " + shape_str(shape()));
  return d_->shape[0];
}

std::size_t Tensor::cols() const {
  if (ndim() != 2) throw_contract("cols(): tensor is not 2-D, shape " + shape_str(shape()));
  return d_->shape[1];
}

double Tensor::value() const {
  if (!is_scalar()) throw_contract("value(): tensor is not scalar, shape " + shape_str(shape()));
  return d_->values[0];
}

double Tensor::at(std::size_t r, std::size_t c) const {
  return d_->values[r * cols() + c];
}

double& Tensor::at(std::size_t r, std::size_t c) {
  return d_->values[r * cols() + c];
}

std::vector<double>& Tensor::grad() {
  if (d_->grad.empty()) d_->grad.assign(d_->values.size(), 0.0);
  return d_->grad;
}

void Tensor::zero_grad() {
  if (!d_->grad.empty()) std::fill(d_->grad.begin(), d_->grad.end(), 0.0);
}

Tensor& Tensor::set_name(std::string name) {
  d_->name = std::move(name);
  return *this;
}

Tensor Tensor::clone() const {
  return Tensor::from_values(d_->shape, d_->values, d_->requires_grad);
}

bool Tensor::all_finite() const {
  for (double v : d_->values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Graph

namespace {
thread_local Graph* g_active_graph = nullptr;

Graph& require_graph() {
  if (!g_active_graph) throw_contract("tensor operation outside any GraphScope");
  return *g_active_graph;
}

void check_same_graph(const Tensor& t) {
  if (t.producer() != nullptr && t.producer() != g_active_graph) {
    throw_contract("tensor produced by a different graph used under the active scope");
  }
}
}  // namespace

Graph* active_graph() { return g_active_graph; }

GraphScope::GraphScope() : previous_(g_active_graph) { g_active_graph = &graph_; }

GraphScope::~GraphScope() { g_active_graph = previous_; }

GraphActivation::GraphActivation(Graph& g) : previous_(g_active_graph) { g_active_graph = &g; }

GraphActivation::~GraphActivation() { g_active_graph = previous_; }

Tensor Graph::emit(Shape shape, std::vector<double> values, std::vector<Tensor> ins,
                   BackwardFn back) {
  Tensor out = Tensor::from_values(std::move(shape), std::move(values));
  out.node_ = static_cast<int>(nodes_.size());
  out.producer_ = this;
  nodes_.push_back(Node{out, std::move(ins), std::move(back), {}});
  return out;
}

void Graph::backward(const Tensor& loss) {
  if (!loss.is_scalar()) {
    throw_contract("backward() requires a scalar loss, got shape " + shape_str(loss.shape()));
  }
  if (loss.producer() != this || loss.node_index() < 0) {
    throw_contract("backward() loss was not produced by this graph");
  }
  nodes_[static_cast<std::size_t>(loss.node_index())].grad.assign(1, 1.0);
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    Node& n = nodes_[i];
    if (n.grad.empty()) continue;  // not on any path to the loss
    if (n.back) n.back(*this, n);
  }
  backward_done_ = true;
}

const std::vector<double>* Graph::node_grad(const Tensor& t) const {
  if (t.producer() != this || t.node_index() < 0) return nullptr;
  const auto& g = nodes_[static_cast<std::size_t>(t.node_index())].grad;
  return g.empty() ? nullptr : &g;
}

const std::vector<double>* Graph::leaf_grad(const Tensor& leaf) const {
  auto it = leaf_grads_.find(leaf.data_ptr());
  return it == leaf_grads_.end() ? nullptr : &it->second;
}

void Graph::add_leaf_grads_to(double scale) {
  for (const TensorData* key : leaf_order_) {
    Tensor handle = leaf_handles_.at(key);
    const std::vector<double>& g = leaf_grads_.at(key);
    std::vector<double>& acc = handle.grad();
    for (std::size_t i = 0; i < g.size(); ++i) acc[i] += scale * g[i];
  }
}

double* Graph::grad_sink(const Tensor& t) {
  if (t.producer() == this && t.node_index() >= 0) {
    Node& n = nodes_[static_cast<std::size_t>(t.node_index())];
    if (n.grad.empty()) n.grad.assign(t.size(), 0.0);
    return n.grad.data();
  }
  if (!t.requires_grad()) return nullptr;
  auto it = leaf_grads_.find(t.data_ptr());
  if (it == leaf_grads_.end()) {
    it = leaf_grads_.emplace(t.data_ptr(), std::vector<double>(t.size(), 0.0)).first;
    leaf_order_.push_back(t.data_ptr());
    leaf_handles_.emplace(t.data_ptr(), t);
  }
  return it->second.data();
}

// ---------------------------------------------------------------- ops

namespace {

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw_contract(std::string(op) + ": shape mismatch " + shape_str(a.shape()) +
                   " vs " + shape_str(b.shape()));
  }
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
  Graph& g = require_graph();
  check_same_graph(a);
  check_same_graph(b);
  check_same_shape(a, b, "add");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] + b.values()[i];
  return g.emit(a.shape(), std::move(v), {a, b}, [](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    std::size_t sz = n.out.size();
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < sz; ++i) da[i] += go[i];
    }
    if (double* db = gr.grad_sink(n.ins[1])) {
      for (std::size_t i = 0; i < sz; ++i) db[i] += go[i];
    }
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  Graph& g = require_graph();
  check_same_graph(a);
  check_same_graph(b);
  check_same_shape(a, b, "sub");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] - b.values()[i];
  return g.emit(a.shape(), std::move(v), {a, b}, [](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    std::size_t sz = n.out.size();
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < sz; ++i) da[i] += go[i];
    }
    if (double* db = gr.grad_sink(n.ins[1])) {
      for (std::size_t i = 0; i < sz; ++i) db[i] -= go[i];
    }
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  Graph& g = require_graph();
  check_same_graph(a);
  check_same_graph(b);
  check_same_shape(a, b, "mul");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * b.values()[i];
  return g.emit(a.shape(), std::move(v), {a, b}, [](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    const auto& av = n.ins[0].values();
    const auto& bv = n.ins[1].values();
    std::size_t sz = n.out.size();
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < sz; ++i) da[i] += go[i] * bv[i];
    }
    if (double* db = gr.grad_sink(n.ins[1])) {
      for (std::size_t i = 0; i < sz; ++i) db[i] += go[i] * av[i];
    }
  });
}

Tensor scale(const Tensor& a, double s) {
  Graph& g = require_graph();
  check_same_graph(a);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * s;
  return g.emit(a.shape(), std::move(v), {a}, [s](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < n.out.size(); ++i) da[i] += s * go[i];
    }
  });
}

namespace {

// c[p x r] += a[p x q] * b[q x r]
void matmul_acc(const double* a, const double* b, double* c, std::size_t p, std::size_t q,
                std::size_t r) {
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t k = 0; k < q; ++k) {
      double aik = a[i * q + k];
      if (aik == 0.0) continue;
      const double* brow = b + k * r;
      double* crow = c + i * r;
      for (std::size_t j = 0; j < r; ++j) crow[j] += aik * brow[j];
    }
  }
}

// c[p x r] += a[q x p]^T * b[q x r]
void matmul_at_b_acc(const double* a, const double* b, double* c, std::size_t q, std::size_t p,
                     std::size_t r) {
  for (std::size_t k = 0; k < q; ++k) {
    const double* arow = a + k * p;
    const double* brow = b + k * r;
    for (std::size_t i = 0; i < p; ++i) {
      double aki = arow[i];
      if (aki == 0.0) continue;
      double* crow = c + i * r;
      for (std::size_t j = 0; j < r; ++j) crow[j] += aki * brow[j];
    }
  }
}

// c[p x r] += a[p x q] * b[r x q]^T
void matmul_a_bt_acc(const double* a, const double* b, double* c, std::size_t p, std::size_t q,
                     std::size_t r) {
  for (std::size_t i = 0; i < p; ++i) {
    const double* arow = a + i * q;
    for (std::size_t j = 0; j < r; ++j) {
      const double* brow = b + j * q;
      double acc = 0.0;
      for (std::size_t k = 0; k < q; ++k) acc += arow[k] * brow[k];
      c[i * r + j] += acc;
    }
  }
}

void check_matmul_shapes(const Tensor& a, const Tensor& b) {
  if (a.ndim() != 2 || b.ndim() != 2 || a.cols() != b.rows()) {
    throw_contract("matmul: incompatible shapes " + shape_str(a.shape()) + " and " +
                   shape_str(b.shape()));
  }
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  Graph& g = require_graph();
  check_same_graph(a);
  check_same_graph(b);
  check_matmul_shapes(a, b);
  std::size_t p = a.rows(), q = a.cols(), r = b.cols();
  std::vector<double> v(p * r, 0.0);
  matmul_acc(a.values().data(), b.values().data(), v.data(), p, q, r);
  return g.emit({p, r}, std::move(v), {a, b}, [p, q, r](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    const auto& av = n.ins[0].values();
    const auto& bv = n.ins[1].values();
    if (double* da = gr.grad_sink(n.ins[0])) {
      matmul_a_bt_acc(go, bv.data(), da, p, r, q);  // dA = G * B^T
    }
    if (double* db = gr.grad_sink(n.ins[1])) {
      matmul_at_b_acc(av.data(), go, db, p, q, r);  // dB = A^T * G
    }
  });
}

Tensor transpose(const Tensor& a) {
  Graph& g = require_graph();
  check_same_graph(a);
  std::size_t r = a.rows(), c = a.cols();
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) v[j * r + i] = a.values()[i * c + j];
  }
  return g.emit({c, r}, std::move(v), {a}, [r, c](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) da[i * c + j] += go[j * r + i];
      }
    }
  });
}

Tensor relu(const Tensor& a) {
  Graph& g = require_graph();
  check_same_graph(a);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] > 0.0 ? a.values()[i] : 0.0;
  return g.emit(a.shape(), std::move(v), {a}, [](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    const auto& av = n.ins[0].values();
    if (double* da = gr.grad_sink(n.ins[0])) {
      // subgradient at exactly 0 is 0
      for (std::size_t i = 0; i < n.out.size(); ++i) da[i] += av[i] > 0.0 ? go[i] : 0.0;
    }
  });
}

Tensor softplus(const Tensor& a) {
  Graph& g = require_graph();
  check_same_graph(a);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double x = a.values()[i];
    v[i] = x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  }
  return g.emit(a.shape(), std::move(v), {a}, [](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    const auto& av = n.ins[0].values();
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < n.out.size(); ++i) {
        double x = av[i];
        double sig = x > 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
        da[i] += go[i] * sig;
      }
    }
  });
}

Tensor sum(const Tensor& a) {
  Graph& g = require_graph();
  check_same_graph(a);
  double total = 0.0;
  for (double x : a.values()) total += x;
  return g.emit({1}, {total}, {a}, [](Graph& gr, const Graph::Node& n) {
    double go = gr.grad_of(n)[0];
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < n.ins[0].size(); ++i) da[i] += go;
    }
  });
}

Tensor mean(const Tensor& a) {
  Graph& g = require_graph();
  check_same_graph(a);
  double total = 0.0;
  for (double x : a.values()) total += x;
  double inv = 1.0 / static_cast<double>(a.size());
  return g.emit({1}, {total * inv}, {a}, [inv](Graph& gr, const Graph::Node& n) {
    double go = gr.grad_of(n)[0];
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < n.ins[0].size(); ++i) da[i] += go * inv;
    }
  });
}

Tensor reshape(const Tensor& a, Shape shape) {
  Graph& g = require_graph();
  check_same_graph(a);
  if (shape_numel(shape) != a.size()) {
    throw_contract("reshape: element count mismatch, " + shape_str(a.shape()) + " to " +
                   shape_str(shape));
  }
  std::vector<double> v = a.values();  // row-major order preserved
  return g.emit(std::move(shape), std::move(v), {a}, [](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < n.out.size(); ++i) da[i] += go[i];
    }
  });
}

Tensor concat_cols(const std::vector<Tensor>& parts) {
  Graph& g = require_graph();
  if (parts.empty()) throw_contract("concat_cols: no inputs");
  std::size_t r = parts[0].rows();
  std::size_t total_c = 0;
  for (const Tensor& p : parts) {
    check_same_graph(p);
    if (p.rows() != r) throw_contract("concat_cols: row count mismatch");
    total_c += p.cols();
  }
  std::vector<double> v(r * total_c);
  std::size_t off = 0;
  for (const Tensor& p : parts) {
    std::size_t c = p.cols();
    for (std::size_t i = 0; i < r; ++i) {
      std::memcpy(v.data() + i * total_c + off, p.values().data() + i * c, c * sizeof(double));
    }
    off += c;
  }
  return g.emit({r, total_c}, std::move(v), parts,
                [r, total_c](Graph& gr, const Graph::Node& n) {
                  const double* go = gr.grad_of(n);
                  std::size_t off = 0;
                  for (const Tensor& p : n.ins) {
                    std::size_t c = p.cols();
                    if (double* dp = gr.grad_sink(p)) {
                      for (std::size_t i = 0; i < r; ++i) {
                        for (std::size_t j = 0; j < c; ++j) {
                          dp[i * c + j] += go[i * total_c + off + j];
                        }
                      }
                    }
                    off += c;
                  }
                });
}

Tensor vstack(const std::vector<Tensor>& parts) {
  Graph& g = require_graph();
  if (parts.empty()) throw_contract("vstack: no inputs");
  std::size_t c = parts[0].cols();
  std::size_t total_r = 0;
  for (const Tensor& p : parts) {
    check_same_graph(p);
    if (p.cols() != c) throw_contract("vstack: column count mismatch");
    total_r += p.rows();
  }
  std::vector<double> v;
  v.reserve(total_r * c);
  for (const Tensor& p : parts) v.insert(v.end(), p.values().begin(), p.values().end());
  return g.emit({total_r, c}, std::move(v), parts, [](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    std::size_t off = 0;
    for (const Tensor& p : n.ins) {
      if (double* dp = gr.grad_sink(p)) {
        for (std::size_t i = 0; i < p.size(); ++i) dp[i] += go[off + i];
      }
      off += p.size();
    }
  });
}

Tensor gather_rows(const Tensor& a, const std::vector<std::size_t>& rows) {
  Graph& g = require_graph();
  check_same_graph(a);
  std::size_t c = a.cols();
  for (std::size_t r : rows) {
    if (r >= a.rows()) {
      throw_contract("gather_rows: row " + std::to_string(r) + " out of range for " +
                     shape_str(a.shape()));
    }
  }
  std::vector<double> v(rows.size() * c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::memcpy(v.data() + i * c, a.values().data() + rows[i] * c, c * sizeof(double));
  }
  return g.emit({rows.size(), c}, std::move(v), {a},
                [rows, c](Graph& gr, const Graph::Node& n) {
                  const double* go = gr.grad_of(n);
                  if (double* da = gr.grad_sink(n.ins[0])) {
                    for (std::size_t i = 0; i < rows.size(); ++i) {
                      for (std::size_t j = 0; j < c; ++j) da[rows[i] * c + j] += go[i * c + j];
                    }
                  }
                });
}

Tensor add_n(const std::vector<Tensor>& terms) {
  Graph& g = require_graph();
  if (terms.empty()) throw_contract("add_n: no inputs");
  for (const Tensor& t : terms) {
    check_same_graph(t);
    check_same_shape(terms[0], t, "add_n");
  }
  std::vector<double> v(terms[0].size(), 0.0);
  for (const Tensor& t : terms) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += t.values()[i];
  }
  return g.emit(terms[0].shape(), std::move(v), terms, [](Graph& gr, const Graph::Node& n) {
    const double* go = gr.grad_of(n);
    for (const Tensor& t : n.ins) {
      if (double* dt = gr.grad_sink(t)) {
        for (std::size_t i = 0; i < n.out.size(); ++i) dt[i] += go[i];
      }
    }
  });
}

Tensor row_normalize(const Tensor& a) {
  Graph& g = require_graph();
  check_same_graph(a);
  std::size_t r = a.rows(), c = a.cols();
  std::vector<double> sums(r, 0.0);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) sums[i] += a.values()[i * c + j];
    if (sums[i] == 0.0) {
      for (std::size_t j = 0; j < c; ++j) v[i * c + j] = 0.0;
    } else {
      for (std::size_t j = 0; j < c; ++j) v[i * c + j] = a.values()[i * c + j] / sums[i];
    }
  }
  return g.emit({r, c}, std::move(v), {a},
                [r, c, sums](Graph& gr, const Graph::Node& n) {
                  // y_ij = x_ij / s_i  =>  dx_ij = (g_ij - sum_k g_ik y_ik) / s_i
                  const double* go = gr.grad_of(n);
                  const auto& yv = n.out.values();
                  if (double* da = gr.grad_sink(n.ins[0])) {
                    for (std::size_t i = 0; i < r; ++i) {
                      if (sums[i] == 0.0) continue;
                      double gy = 0.0;
                      for (std::size_t j = 0; j < c; ++j) gy += go[i * c + j] * yv[i * c + j];
                      for (std::size_t j = 0; j < c; ++j) {
                        da[i * c + j] += (go[i * c + j] - gy) / sums[i];
                      }
                    }
                  }
                });
}

Tensor frobenius_norm(const Tensor& a) {
  Graph& g = require_graph();
  check_same_graph(a);
  double ss = 0.0;
  for (double x : a.values()) ss += x * x;
  double norm = std::sqrt(ss);
  return g.emit({1}, {norm}, {a}, [norm](Graph& gr, const Graph::Node& n) {
    if (norm == 0.0) return;
    double go = gr.grad_of(n)[0];
    const auto& av = n.ins[0].values();
    if (double* da = gr.grad_sink(n.ins[0])) {
      for (std::size_t i = 0; i < av.size(); ++i) da[i] += go * av[i] / norm;
    }
  });
}

// ---------------------------------------------------------------- lin

namespace lin {

Tensor matmul(const Tensor& a, const Tensor& b) {
  check_matmul_shapes(a, b);
  std::size_t p = a.rows(), q = a.cols(), r = b.cols();
  Tensor out({p, r});
  matmul_acc(a.values().data(), b.values().data(), out.values().data(), p, q, r);
  return out;
}

Tensor transpose(const Tensor& a) {
  std::size_t r = a.rows(), c = a.cols();
  Tensor out({c, r});
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) out.values()[j * r + i] = a.values()[i * c + j];
  }
  return out;
}

double dot(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) throw_contract("dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.values()[i] * b.values()[i];
  return acc;
}

Tensor outer(const Tensor& a, const Tensor& b) {
  Tensor out({a.size(), b.size()});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out.values()[i * b.size() + j] = a.values()[i] * b.values()[j];
    }
  }
  return out;
}

double norm(const Tensor& a) {
  double ss = 0.0;
  for (double x : a.values()) ss += x * x;
  return std::sqrt(ss);
}

Tensor add(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "lin::add");
  Tensor out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = a.values()[i] + b.values()[i];
  return out;
}

Tensor scale(const Tensor& a, double s) {
  Tensor out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = a.values()[i] * s;
  return out;
}

}  // namespace lin

}  // namespace eegrec
