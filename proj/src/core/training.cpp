// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/training.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <thread>

#include "core/error.hpp"

namespace eegrec::training {

namespace {
// Independent sub-stream tags for the stages of a run.
constexpr std::uint64_t kStreamInit = 0x11;
constexpr std::uint64_t kStreamShuffle = 0x50;
constexpr std::uint64_t kStreamPairs = 0xE0;
}  // namespace

void TrainConfig::validate() const {
  model.validate();
  if (batch_size == 0) throw_config("batch_size must be positive");
  if (reg_weight < 0.0) throw_config("reg_weight must be non-negative");
  if (learning_rate <= 0.0) throw_config("learning_rate must be positive");
  if (pos_per_step == 0 || neg_per_step == 0) {
    throw_config("pos_per_step and neg_per_step must be positive");
  }
  if (threads == 0) throw_config("threads must be positive");
}

std::vector<TrainingPair> sample_pairs(const std::string& label,
                                       const data::ItemCatalog& catalog, std::size_t n_pos,
                                       std::size_t n_neg, Rng& rng) {
  const std::vector<std::size_t>& pos_pool = catalog.of_label(label);
  std::vector<std::size_t> neg_pool = catalog.not_of_label(label);
  if (pos_pool.size() < n_pos) {
    throw_data("sampling: class '" + label + "' holds " + std::to_string(pos_pool.size()) +
               " items, need " + std::to_string(n_pos));
  }
  if (neg_pool.size() < n_neg) {
    throw_data("sampling: classes other than '" + label + "' hold " +
               std::to_string(neg_pool.size()) + " items, need " + std::to_string(n_neg));
  }
  std::vector<std::size_t> pos_pick = rng.sample_without_replacement(pos_pool.size(), n_pos);
  std::vector<std::size_t> neg_pick = rng.sample_without_replacement(neg_pool.size(), n_neg);
  std::vector<TrainingPair> out;
  out.reserve(n_pos * n_neg);
  for (std::size_t p : pos_pick) {
    for (std::size_t n : neg_pick) {
      out.push_back(TrainingPair{pos_pool[p], neg_pool[n]});
    }
  }
  return out;
}

Tensor bpr_loss(const Tensor& rep, const std::vector<Tensor>& liked,
                const std::vector<Tensor>& disliked) {
  if (liked.empty() || disliked.empty()) {
    throw_contract("bpr_loss: liked and disliked sets must be nonempty");
  }
  std::vector<Tensor> terms;
  terms.reserve(liked.size() * disliked.size());
  for (const Tensor& pos : liked) {
    if (pos.size() != rep.size()) {
      throw_contract("bpr_loss: item vector length " + std::to_string(pos.size()) +
                     " does not match representation length " + std::to_string(rep.size()));
    }
    Tensor pos_score = matmul(rep, transpose(pos));
    for (const Tensor& neg : disliked) {
      if (neg.size() != rep.size()) {
        throw_contract("bpr_loss: item vector length " + std::to_string(neg.size()) +
                       " does not match representation length " + std::to_string(rep.size()));
      }
      Tensor margin = sub(pos_score, matmul(rep, transpose(neg)));
      terms.push_back(softplus(scale(margin, -1.0)));  // -log(sigmoid(margin))
    }
  }
  Tensor total = add_n(terms);
  return reshape(total, {1});
}

ContinuityLoss continuity_loss(const model::ForwardResult& fwd) {
  ContinuityLoss out;
  std::size_t per = fwd.segments.per_electrode;
  std::size_t electrodes = fwd.segments.electrodes;
  if (per < 2) {
    out.loss = Tensor::scalar(0.0);
    out.too_short = true;
    return out;
  }
  std::vector<Tensor> terms;
  terms.reserve(electrodes * (per - 1));
  for (std::size_t m = 0; m < electrodes; ++m) {
    for (std::size_t i = 0; i + 1 < per; ++i) {
      std::size_t j = m * per + i;
      Tensor dot = matmul(fwd.learned_rows[j], transpose(fwd.unit_states[j + 1].state));
      terms.push_back(softplus(scale(dot, -1.0)));
    }
  }
  out.loss = reshape(add_n(terms), {1});
  return out;
}

Tensor orthogonality_loss(const model::ModelParams& params) {
  std::vector<Tensor> terms;
  terms.reserve(params.bases.size());
  for (const Tensor& basis : params.bases) {
    Tensor eye = Tensor::identity(basis.rows());
    terms.push_back(frobenius_norm(sub(matmul(basis, transpose(basis)), eye)));
  }
  return scale(add_n(terms), 1.0 / static_cast<double>(terms.size()));
}

Tensor regularizer(const model::ModelParams& params, double rho) {
  std::vector<Tensor> norms;
  for (const Tensor& p : params.all()) norms.push_back(frobenius_norm(p));
  return scale(add_n(norms), rho);
}

Tensor total_loss(const Tensor& l1, const Tensor& l2, const Tensor& l3,
                  const model::ModelParams& params, double rho) {
  auto check = [](const Tensor& term, const char* name) {
    if (!term.all_finite()) {
      throw_data(std::string("total loss: non-finite ") + name + " term");
    }
  };
  check(l1, "ranking");
  check(l2, "orthogonality");
  check(l3, "continuity");
  Tensor reg = regularizer(params, rho);
  check(reg, "regularizer");
  return add(add(l1, l2), add(l3, reg));
}

namespace {

struct InstanceResult {
  std::unique_ptr<Graph> graph;
  double l1 = 0.0;
  double l3 = 0.0;
  std::exception_ptr error;
};

InstanceResult run_instance(const EegRecording& rec, const data::ItemCatalog& catalog,
                            const model::ModelParams& params, const TrainConfig& cfg,
                            std::uint64_t pair_seed) {
  InstanceResult out;
  out.graph = std::make_unique<Graph>();
  try {
    GraphActivation act(*out.graph);
    model::ForwardResult fwd = model::forward(rec, params, cfg.model);

    Rng pair_rng(pair_seed);
    std::vector<TrainingPair> pairs =
        sample_pairs(rec.label, catalog, cfg.pos_per_step, cfg.neg_per_step, pair_rng);
    std::vector<Tensor> liked, disliked;
    for (const TrainingPair& p : pairs) {
      liked.push_back(catalog.items[p.liked].embedding);
      disliked.push_back(catalog.items[p.disliked].embedding);
    }
    Tensor loss = bpr_loss(fwd.final_rep, liked, disliked);
    out.l1 = loss.value();
    if (cfg.use_continuity_loss) {
      ContinuityLoss cl = continuity_loss(fwd);
      out.l3 = cl.loss.value();
      if (!cl.too_short) loss = add(loss, cl.loss);
    }
    out.graph->backward(loss);
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

}  // namespace

TrainResult train(const std::vector<EegRecording>& train_set, const data::ItemCatalog& catalog,
                  const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  if (train_set.empty()) throw_data("training set is empty");

  TrainResult result;
  result.params = model::ModelParams::init(cfg.model, Rng::derive(cfg.seed, kStreamInit));

  AdamConfig adam_cfg;
  adam_cfg.learning_rate = cfg.learning_rate;
  AdamState adam(adam_cfg);
  adam.register_params(result.params.all());

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<Tensor> snapshot;  // last-good parameter values
  auto take_snapshot = [&] {
    snapshot.clear();
    for (const Tensor& p : result.params.all()) snapshot.push_back(p.clone());
  };
  auto restore_snapshot = [&] {
    std::vector<Tensor> live = result.params.all();
    for (std::size_t i = 0; i < live.size(); ++i) live[i].values() = snapshot[i].values();
  };

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    auto t0 = std::chrono::steady_clock::now();
    take_snapshot();

    Rng shuffle_rng(Rng::derive(cfg.seed, kStreamShuffle + epoch));
    shuffle_rng.shuffle(order);

    double sum_l1 = 0.0, sum_l3 = 0.0, sum_l2 = 0.0, sum_reg = 0.0;
    std::size_t batches = 0;
    bool halted = false;

    for (std::size_t batch_start = 0; batch_start < order.size() && !halted;
         batch_start += cfg.batch_size) {
      std::size_t batch_n = std::min(cfg.batch_size, order.size() - batch_start);
      std::vector<InstanceResult> results(batch_n);

      auto worker = [&](std::size_t lane) {
        for (std::size_t b = lane; b < batch_n; b += cfg.threads) {
          std::size_t pos = batch_start + b;
          std::uint64_t pair_seed =
              Rng::derive(Rng::derive(cfg.seed, kStreamPairs + epoch), pos);
          results[b] = run_instance(train_set[order[pos]], catalog, result.params, cfg, pair_seed);
        }
      };
      if (cfg.threads <= 1 || batch_n == 1) {
        worker(0);
      } else {
        std::vector<std::thread> pool;
        std::size_t lanes = std::min(cfg.threads, batch_n);
        pool.reserve(lanes);
        for (std::size_t t = 0; t < lanes; ++t) pool.emplace_back(worker, t);
        for (std::thread& t : pool) t.join();
      }

      double batch_l1 = 0.0, batch_l3 = 0.0;
      for (InstanceResult& r : results) {
        if (r.error) std::rethrow_exception(r.error);
        batch_l1 += r.l1;
        batch_l3 += r.l3;
      }
      // Deterministic ordered reduction; batch terms are averaged.
      double inv_batch = 1.0 / static_cast<double>(batch_n);
      for (InstanceResult& r : results) r.graph->add_leaf_grads_to(inv_batch);

      double l2_val = 0.0, reg_val = 0.0;
      {
        GraphScope scope;
        Tensor reg = regularizer(result.params, cfg.reg_weight);
        Tensor extra = reg;
        if (cfg.use_qm_loss) {
          Tensor l2 = orthogonality_loss(result.params);
          l2_val = l2.value();
          extra = add(l2, reg);
        }
        reg_val = reg.value();
        scope.graph().backward(extra);
        scope.graph().add_leaf_grads_to(1.0);
      }

      double batch_total = batch_l1 * inv_batch + batch_l3 * inv_batch + l2_val + reg_val;
      if (!std::isfinite(batch_total)) {
        restore_snapshot();
        result.halted_on_nan = true;
        result.halted_epoch = epoch;
        halted = true;
        break;
      }

      adam.step();
      sum_l1 += batch_l1;
      sum_l3 += batch_l3;
      sum_l2 += l2_val;
      sum_reg += reg_val;
      ++batches;
    }
    if (halted) break;

    EpochStats stats;
    stats.epoch = epoch;
    stats.l1 = sum_l1 / static_cast<double>(order.size());
    stats.l3 = sum_l3 / static_cast<double>(order.size());
    stats.l2 = sum_l2 / static_cast<double>(batches);
    stats.reg = sum_reg / static_cast<double>(batches);
    stats.total = stats.l1 + stats.l2 + stats.l3 + stats.reg;
    stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.log.push_back(stats);
    if (on_epoch) on_epoch(stats, result.params);
  }
  return result;
}

}  // namespace eegrec::training
