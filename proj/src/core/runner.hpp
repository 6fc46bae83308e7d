// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/data.hpp"
#include "core/evaluation.hpp"
#include "core/model.hpp"

namespace eegrec::runner {

struct LoadedData {
  std::vector<EegRecording> recordings;
  data::ItemCatalog catalog;
};

/// Resolves the configured data source (synthetic or files), applies the
/// class map and distribution shaping.
LoadedData load_data(const RunConfig& cfg);

struct EvalSummary {
  double p_at_k = 0.0;
  double r_at_k = 0.0;
  double f1_at_k = 0.0;
  std::size_t instances = 0;
};

/// Writes dataset.txt, embeddings.tsv and images/ under the output directory.
void cmd_generate(const RunConfig& cfg);

/// Data -> shaping -> split -> training. Writes config.snapshot, epoch.log
/// and checkpoint.bin into the output directory.
void cmd_train(const RunConfig& cfg);

/// Loads a checkpoint (its embedded config fixes the model shape), rebuilds
/// the split, scores every test instance. Writes metrics.tsv, summary.tsv
/// and optional style sweep files.
EvalSummary cmd_eval(const RunConfig& cfg, const std::string& checkpoint_path);

/// Trains and evaluates once per value of a sweepable hyperparameter;
/// emits (value, metrics) rows to sweep.tsv.
void cmd_sweep(const RunConfig& cfg, const std::string& key,
               const std::vector<std::string>& values);

/// Dumps one instance's collapse probabilities and adjacency matrices.
void cmd_inspect(const RunConfig& cfg, const std::string& checkpoint_path,
                 const std::string& recording_id);

/// In-memory evaluation of given parameters over a test set (shared by
/// cmd_eval, cmd_sweep and the acceptance harness).
EvalSummary evaluate(const model::ModelParams& params, const model::ModelConfig& model_cfg,
                     const std::vector<EegRecording>& test_set,
                     const data::ItemCatalog& catalog, const RunConfig& cfg,
                     std::vector<evaluation::PrMetrics>* per_instance = nullptr);

}  // namespace eegrec::runner
