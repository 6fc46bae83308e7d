// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/adjacency.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace eegrec::adjacency {

Tensor continuity_matrix(const Tensor& learned_segments) {
  return matmul(learned_segments, transpose(learned_segments));
}

namespace {

// Small fixed-size helpers over raw row-major buffers; c is tiny (2 by
// default) so everything stays in L1.
void matvec(const double* m, const double* v, double* out, std::size_t r, std::size_t c) {
  for (std::size_t i = 0; i < r; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < c; ++j) acc += m[i * c + j] * v[j];
    out[i] = acc;
  }
}

void matvec_t(const double* m, const double* v, double* out, std::size_t r, std::size_t c) {
  for (std::size_t j = 0; j < c; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) out[j] += m[i * c + j] * v[i];
  }
}

// out[r x q] = a[r x dim] * b[q x dim]^T
void gram_block(const double* a, const double* b, double* out, std::size_t r, std::size_t q,
                std::size_t dim) {
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) acc += a[i * dim + k] * b[j * dim + k];
      out[i * q + j] = acc;
    }
  }
}

}  // namespace

Tensor interference_matrix(const Tensor& top_rows, const Tensor& bottom_rows,
                           const Tensor& states, std::size_t c) {
  Graph* g = active_graph();
  if (!g) throw_contract("interference_matrix requires an active GraphScope");
  std::size_t total = states.rows();
  std::size_t dim = states.cols();
  if (top_rows.rows() != total * c || bottom_rows.rows() != total * c ||
      top_rows.cols() != dim || bottom_rows.cols() != dim) {
    throw_contract("interference_matrix: row stacks must be (segments*c) x dim");
  }

  const double* tv = top_rows.values().data();
  const double* bv = bottom_rows.values().data();
  const double* sv = states.values().data();

  // Per-pair value: 2 * a^T M1 M2 M3 b with
  //   a  = Bot_k s_j      M1 = Bot_k Top_j^T
  //   b  = Top_k s_j      M2 = Top_j Top_j^T   M3 = Top_j Top_k^T
  std::vector<double> m2(total * c * c);
  for (std::size_t j = 0; j < total; ++j) {
    gram_block(tv + j * c * dim, tv + j * c * dim, m2.data() + j * c * c, c, c, dim);
  }

  std::vector<double> out(total * total, 0.0);
  std::vector<double> a(c), b(c), m1(c * c), m3(c * c), u(c), w(c), z(c);
  for (std::size_t j = 0; j < total; ++j) {
    const double* sj = sv + j * dim;
    const double* tj = tv + j * c * dim;
    const double* m2j = m2.data() + j * c * c;
    for (std::size_t k = 0; k < total; ++k) {
      const double* tk = tv + k * c * dim;
      const double* bk = bv + k * c * dim;
      matvec(bk, sj, a.data(), c, dim);
      matvec(tk, sj, b.data(), c, dim);
      gram_block(bk, tj, m1.data(), c, c, dim);
      gram_block(tj, tk, m3.data(), c, c, dim);
      matvec(m3.data(), b.data(), u.data(), c, c);
      matvec(m2j, u.data(), w.data(), c, c);
      matvec(m1.data(), w.data(), z.data(), c, c);
      double acc = 0.0;
      for (std::size_t q = 0; q < c; ++q) acc += a[q] * z[q];
      out[j * total + k] = 2.0 * acc;
    }
  }

  Tensor states_copy = states;  // keep the constant alive for backward
  return g->emit(
      {total, total}, std::move(out), {top_rows, bottom_rows, states_copy},
      [total, dim, c, m2](Graph& gr, const Graph::Node& n) {
        const double* go = gr.grad_of(n);
        const double* tv = n.ins[0].values().data();
        const double* bv = n.ins[1].values().data();
        const double* sv = n.ins[2].values().data();
        double* dt = gr.grad_sink(n.ins[0]);
        double* db_rows = gr.grad_sink(n.ins[1]);
        if (!dt && !db_rows) return;

        std::vector<double> a(c), b(c), m1(c * c), m3(c * c), u(c), w(c), z(c), l1(c), l2(c);
        std::vector<double> dvec(c);
        for (std::size_t j = 0; j < total; ++j) {
          const double* sj = sv + j * dim;
          const double* tj = tv + j * c * dim;
          const double* m2j = m2.data() + j * c * c;
          for (std::size_t k = 0; k < total; ++k) {
            double gval = go[j * total + k];
            if (gval == 0.0) continue;
            const double* tk = tv + k * c * dim;
            const double* bk = bv + k * c * dim;
            matvec(bk, sj, a.data(), c, dim);
            matvec(tk, sj, b.data(), c, dim);
            gram_block(bk, tj, m1.data(), c, c, dim);
            gram_block(tj, tk, m3.data(), c, c, dim);
            matvec(m3.data(), b.data(), u.data(), c, c);
            matvec(m2j, u.data(), w.data(), c, c);
            matvec(m1.data(), w.data(), z.data(), c, c);
            matvec_t(m1.data(), a.data(), l1.data(), c, c);
            matvec(m2j, l1.data(), l2.data(), c, c);

            double s2 = 2.0 * gval;
            double* dtj = dt ? dt + j * c * dim : nullptr;
            double* dtk = dt ? dt + k * c * dim : nullptr;
            double* dbk = db_rows ? db_rows + k * c * dim : nullptr;
            for (std::size_t p = 0; p < c; ++p) {
              for (std::size_t q = 0; q < c; ++q) {
                double dm1 = s2 * a[p] * w[q];   // d val / d M1[p,q]
                double dm2 = s2 * l1[p] * u[q];  // d val / d M2[p,q]
                double dm3 = s2 * l2[p] * b[q];  // d val / d M3[p,q]
                for (std::size_t x = 0; x < dim; ++x) {
                  // M1 = Bot_k Top_j^T
                  if (dbk) dbk[p * dim + x] += dm1 * tj[q * dim + x];
                  if (dtj) dtj[q * dim + x] += dm1 * bk[p * dim + x];
                  // M2 = Top_j Top_j^T (both factors are Top_j)
                  if (dtj) {
                    dtj[p * dim + x] += dm2 * tj[q * dim + x];
                    dtj[q * dim + x] += dm2 * tj[p * dim + x];
                  }
                  // M3 = Top_j Top_k^T
                  if (dtj) dtj[p * dim + x] += dm3 * tk[q * dim + x];
                  if (dtk) dtk[q * dim + x] += dm3 * tj[p * dim + x];
                }
              }
            }
            // a = Bot_k s_j, b = Top_k s_j
            if (dbk) {
              for (std::size_t q = 0; q < c; ++q) {
                double da = s2 * z[q];
                for (std::size_t x = 0; x < dim; ++x) dbk[q * dim + x] += da * sj[x];
              }
            }
            if (dtk) {
              matvec_t(m3.data(), l2.data(), dvec.data(), c, c);  // db = 2g M3^T l2
              for (std::size_t q = 0; q < c; ++q) {
                double dbq = s2 * dvec[q];
                for (std::size_t x = 0; x < dim; ++x) dtk[q * dim + x] += dbq * sj[x];
              }
            }
          }
        }
      });
}

FilterResult apply_filter(const Tensor& adj, double ratio, std::size_t per_electrode,
                          bool temporal_mask) {
  if (ratio < 0.0 || ratio > 1.0) {
    throw_config("filter ratio must lie in [0, 1], got " + std::to_string(ratio));
  }
  if (per_electrode == 0) throw_contract("apply_filter: per_electrode must be positive");
  Tensor positive = relu(adj);

  // Threshold statistics run over the whole post-ReLU matrix, zeros included.
  double lo = positive.values()[0], hi = positive.values()[0];
  for (double v : positive.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double threshold = ratio * (hi - lo) + lo;

  std::size_t n = positive.rows();
  Tensor mask({n, n});
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t i_seg = j % per_electrode;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t w_seg = k % per_electrode;
      bool keep = positive.at(j, k) >= threshold;
      if (temporal_mask && i_seg <= w_seg) keep = false;
      mask.at(j, k) = keep ? 1.0 : 0.0;
    }
  }
  return FilterResult{mul(positive, mask), threshold};
}

}  // namespace eegrec::adjacency
