// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/model.hpp"

#include <cstdio>

#include "core/adjacency.hpp"
#include "core/error.hpp"
#include "core/optim.hpp"
#include "core/rng.hpp"

namespace eegrec::model {

std::size_t ModelConfig::segments_per_electrode() const {
  return preprocess::segments_per_electrode(samples, window, step);
}

std::size_t ModelConfig::total_segments() const {
  return electrodes * segments_per_electrode();
}

void ModelConfig::validate() const {
  if (electrodes == 0 || samples == 0) throw_config("electrodes and samples must be positive");
  if (window == 0 || window > samples) {
    throw_config("window must lie in [1, samples], got " + std::to_string(window));
  }
  if (step == 0 || step > samples) {
    throw_config("step must lie in [1, samples], got " + std::to_string(step));
  }
  if (select_count == 0) throw_config("select_count must be positive");
  if (2 * select_count > basis_count) {
    throw_config("basis_count must be at least 2*select_count (" +
                 std::to_string(2 * select_count) + "), got " + std::to_string(basis_count));
  }
  if (alpha < 0.0 || alpha > 1.0) throw_config("alpha must lie in [0, 1]");
  if (beta < 0.0 || beta > 1.0) throw_config("beta must lie in [0, 1]");
  if (teleport < 0.0 || teleport > 1.0) throw_config("teleport ratio must lie in [0, 1]");
  if (depth == 0) throw_config("depth must be at least 1");
  if (hidden == 0 || embed_dim == 0) throw_config("hidden and embed_dim must be positive");
}

ModelParams ModelParams::init(const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ModelParams p;
  std::uint64_t stream = 0;
  auto next_seed = [&] { return Rng::derive(seed, stream++); };

  std::size_t total = cfg.total_segments();
  p.bases.reserve(total);
  char buf[64];
  for (std::size_t j = 0; j < total; ++j) {
    Tensor b = xavier_init({cfg.basis_count, cfg.window}, next_seed());
    std::snprintf(buf, sizeof(buf), "basis_%03zu", j);
    b.set_name(buf);
    p.bases.push_back(b);
  }
  for (std::size_t d = 0; d < cfg.depth; ++d) {
    Tensor h = xavier_init({cfg.window, cfg.window}, next_seed());
    std::snprintf(buf, sizeof(buf), "cont_h%zu", d);
    p.cont_layers.push_back(h.set_name(buf));
  }
  for (std::size_t d = 0; d < cfg.depth; ++d) {
    Tensor h = xavier_init({cfg.window, cfg.window}, next_seed());
    std::snprintf(buf, sizeof(buf), "intf_h%zu", d);
    p.intf_layers.push_back(h.set_name(buf));
  }
  std::size_t flat = cfg.flat_width();
  p.head.h1 = xavier_init({flat, cfg.hidden}, next_seed()).set_name("fuse_h1");
  p.head.h2 = xavier_init({cfg.hidden, cfg.hidden}, next_seed()).set_name("fuse_h2");
  p.head.h3 = xavier_init({flat, cfg.hidden}, next_seed()).set_name("fuse_h3");
  p.head.h4 = xavier_init({cfg.hidden, cfg.hidden}, next_seed()).set_name("fuse_h4");
  p.head.h5 = xavier_init({2 * cfg.hidden, cfg.hidden}, next_seed()).set_name("fuse_h5");
  p.head.h6 = xavier_init({cfg.hidden, cfg.embed_dim}, next_seed()).set_name("fuse_h6");
  return p;
}

std::vector<Tensor> ModelParams::all() const {
  std::vector<Tensor> out;
  out.reserve(bases.size() + cont_layers.size() + intf_layers.size() + 6);
  out.insert(out.end(), bases.begin(), bases.end());
  out.insert(out.end(), cont_layers.begin(), cont_layers.end());
  out.insert(out.end(), intf_layers.begin(), intf_layers.end());
  for (const Tensor& h : {head.h1, head.h2, head.h3, head.h4, head.h5, head.h6}) {
    out.push_back(h);
  }
  return out;
}

std::vector<std::pair<std::string, Tensor>> ModelParams::named() const {
  std::vector<std::pair<std::string, Tensor>> out;
  for (const Tensor& t : all()) out.emplace_back(t.name(), t);
  return out;
}

Tensor gcn_layer(const Tensor& x_init, const Tensor& x_prev, const Tensor& adj_norm,
                 const Tensor& layer, double teleport) {
  if (x_init.shape() != x_prev.shape()) {
    throw_contract("gcn_layer: depth input shape " + shape_str(x_prev.shape()) +
                   " does not match initial features " + shape_str(x_init.shape()));
  }
  Tensor mixed = add(scale(x_init, teleport), scale(matmul(adj_norm, x_prev), 1.0 - teleport));
  return matmul(mixed, layer);
}

Tensor depth_concat(const std::vector<Tensor>& outputs) { return concat_cols(outputs); }

namespace {
Tensor sequence(const Tensor& x, const Tensor& ha, const Tensor& hb) {
  return matmul(relu(matmul(x, ha)), hb);
}
}  // namespace

Tensor fuse_final(const Tensor& cont_blocks, const Tensor& intf_blocks, const FusionHead& head) {
  if (cont_blocks.shape() != intf_blocks.shape()) {
    throw_contract("fuse_final: branch shapes differ");
  }
  Tensor flat_cont = reshape(cont_blocks, {1, cont_blocks.size()});
  Tensor flat_intf = reshape(intf_blocks, {1, intf_blocks.size()});
  Tensor joined = concat_cols({sequence(flat_cont, head.h1, head.h2),
                               sequence(flat_intf, head.h3, head.h4)});
  return sequence(joined, head.h5, head.h6);
}

namespace {

struct StageGuard {
  const char* stage;
  template <typename F>
  auto run(F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(stage) + ": " + e.what());
    }
  }
};

Tensor gcn_branch(const Tensor& x_init, const Tensor& adj_norm,
                  const std::vector<Tensor>& layers, double teleport, bool concat_input) {
  std::vector<Tensor> blocks;
  if (concat_input) blocks.push_back(x_init);
  Tensor x_prev = x_init;
  for (const Tensor& layer : layers) {
    x_prev = gcn_layer(x_init, x_prev, adj_norm, layer, teleport);
    blocks.push_back(x_prev);
  }
  return depth_concat(blocks);
}

}  // namespace

ForwardResult forward(const EegRecording& rec, const ModelParams& params,
                      const ModelConfig& cfg) {
  if (!active_graph()) throw_contract("forward requires an active GraphScope");
  cfg.validate();
  if (rec.signal.rows() != cfg.electrodes) {
    throw_contract("forward: recording '" + rec.recording_id + "' has " +
                   std::to_string(rec.signal.rows()) + " electrodes, config expects " +
                   std::to_string(cfg.electrodes));
  }
  if (rec.signal.cols() != cfg.samples) {
    throw_contract("forward: recording '" + rec.recording_id + "' has " +
                   std::to_string(rec.signal.cols()) + " samples, config expects " +
                   std::to_string(cfg.samples));
  }

  ForwardResult out;

  // normalize + segment
  NormalizedSignal norm = StageGuard{"normalize"}.run([&] {
    return preprocess::mean_normalize(rec);
  });
  out.degenerate_recording = norm.degenerate;
  out.segments = StageGuard{"segment"}.run([&] {
    return preprocess::sliding_window(norm.matrix, cfg.window, cfg.step);
  });
  std::size_t total = out.segments.total();
  if (params.bases.size() != total) {
    throw_contract("forward: parameter set holds " + std::to_string(params.bases.size()) +
                   " bases but the config segments to " + std::to_string(total));
  }

  // unit states + collapse selections (selection is detached from gradients)
  StageGuard{"collapse"}.run([&] {
    out.unit_states.reserve(total);
    out.collapses.reserve(total);
    for (std::size_t j = 0; j < total; ++j) {
      Tensor seg = Tensor::from_values({1, cfg.window},
                                       std::vector<double>(
                                           out.segments.segments.values().begin() +
                                               static_cast<std::ptrdiff_t>(j * cfg.window),
                                           out.segments.segments.values().begin() +
                                               static_cast<std::ptrdiff_t>((j + 1) * cfg.window)));
      quantum::UnitState u = quantum::to_unit_state(seg);
      out.collapses.push_back(
          quantum::collapse_probabilities(u.state, params.bases[j], cfg.select_count));
      out.unit_states.push_back(std::move(u));
    }
    return 0;
  });

  // learned (projected) segments
  std::vector<Tensor> top_rows(total), bottom_rows(total);
  StageGuard{"project"}.run([&] {
    out.learned_rows.reserve(total);
    for (std::size_t j = 0; j < total; ++j) {
      top_rows[j] = gather_rows(params.bases[j], out.collapses[j].top);
      bottom_rows[j] = gather_rows(params.bases[j], out.collapses[j].bottom);
      Tensor projected =
          matmul(matmul(out.unit_states[j].state, transpose(top_rows[j])), top_rows[j]);
      out.learned_rows.push_back(projected);
    }
    out.learned_segments = vstack(out.learned_rows);
    return 0;
  });

  std::size_t per = out.segments.per_electrode;
  Tensor zero_adj({total, total});

  Tensor cont_norm = zero_adj;
  if (cfg.use_continuity) {
    StageGuard{"continuity"}.run([&] {
      out.continuity_raw = adjacency::continuity_matrix(out.learned_segments);
      auto filt = adjacency::apply_filter(out.continuity_raw, cfg.alpha, per, cfg.temporal_mask);
      out.continuity_filtered = filt.filtered;
      out.continuity_threshold = filt.threshold;
      out.continuity_norm = row_normalize(out.continuity_filtered);
      cont_norm = out.continuity_norm;
      return 0;
    });
  }

  Tensor intf_norm = zero_adj;
  if (cfg.use_interference) {
    StageGuard{"interference"}.run([&] {
      Tensor state_matrix({total, cfg.window});
      for (std::size_t j = 0; j < total; ++j) {
        for (std::size_t k = 0; k < cfg.window; ++k) {
          state_matrix.at(j, k) = out.unit_states[j].state.values()[k];
        }
      }
      out.interference_raw = adjacency::interference_matrix(
          vstack(top_rows), vstack(bottom_rows), state_matrix, cfg.select_count);
      auto filt = adjacency::apply_filter(out.interference_raw, cfg.beta, per, cfg.temporal_mask);
      out.interference_filtered = filt.filtered;
      out.interference_threshold = filt.threshold;
      out.interference_norm = row_normalize(out.interference_filtered);
      intf_norm = out.interference_norm;
      return 0;
    });
  }

  // two GCN branches + fusion
  return StageGuard{"aggregate"}.run([&] {
    Tensor cont_blocks = gcn_branch(out.learned_segments, cont_norm, params.cont_layers,
                                    cfg.teleport, cfg.concat_input);
    Tensor intf_blocks = gcn_branch(out.learned_segments, intf_norm, params.intf_layers,
                                    cfg.teleport, cfg.concat_input);
    out.final_rep = fuse_final(cont_blocks, intf_blocks, params.head);
    return std::move(out);
  });
}

}  // namespace eegrec::model
