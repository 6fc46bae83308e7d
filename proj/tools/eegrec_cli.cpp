// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end; talks to the engine exclusively through the
// shared-library C API.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eegrec.h"

namespace {

int exit_code_for(eegrec_status status) {
  switch (status) {
    case EEGREC_OK: return 0;
    case EEGREC_ERR_CONFIG:
    case EEGREC_ERR_DATA:
    case EEGREC_ERR_PARSE:
    case EEGREC_ERR_IO: return 2;  // user/config problems
    default: return 1;             // internal
  }
}

struct Options {
  std::string config_file;
  std::vector<std::string> sets;  // raw key=value overrides
  std::vector<std::pair<std::string, std::string>> flags;  // named overrides, in parse order
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config_file, "key = value configuration file");
  cmd->add_option("--set", opt.sets, "extra key=value override (repeatable)");

  static const char* keys[] = {
      "seed",    "out",      "synthetic", "k",          "window",   "step",
      "basis",   "select",   "alpha",     "beta",       "depth",    "teleport",
      "hidden",  "embed_dim", "lr",       "batch",      "epochs",   "rho",
      "n_pos",   "n_neg",    "threads",   "electrodes", "samples",  "dataset",
      "data_format", "embeddings", "images", "class_map", "distribution", "shaped_total",
      "split_ratio", "candidates_pos", "candidates_neg", "style_report", "checkpoint_every",
      "eval_every",
      "synthetic_items", "synthetic_noise", "synthetic_jitter", "synthetic_image_dim",
      "use_interference", "use_continuity", "temporal_mask", "continuity_loss", "qm_loss",
      "concat_input",
  };
  for (const char* key : keys) {
    std::string name = "--" + std::string(key);
    cmd->add_option_function<std::string>(
        name,
        [&opt, key](const std::string& value) { opt.flags.emplace_back(key, value); },
        std::string("override configuration key '") + key + "'");
  }
}

int apply_config(eegrec_ctx* ctx, const Options& opt) {
  if (!opt.config_file.empty()) {
    eegrec_status s = eegrec_config_load(ctx, opt.config_file.c_str());
    if (s != EEGREC_OK) {
      std::fprintf(stderr, "error: %s\n", eegrec_last_error(ctx));
      return exit_code_for(s);
    }
  }
  for (const auto& [key, value] : opt.flags) {
    eegrec_status s = eegrec_config_set(ctx, key.c_str(), value.c_str());
    if (s != EEGREC_OK) {
      std::fprintf(stderr, "error: %s\n", eegrec_last_error(ctx));
      return exit_code_for(s);
    }
  }
  for (const std::string& kv : opt.sets) {
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      return 2;
    }
    eegrec_status s =
        eegrec_config_set(ctx, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (s != EEGREC_OK) {
      std::fprintf(stderr, "error: %s\n", eegrec_last_error(ctx));
      return exit_code_for(s);
    }
  }
  return 0;
}

int finish(eegrec_ctx* ctx, eegrec_status s) {
  if (s != EEGREC_OK) std::fprintf(stderr, "error: %s\n", eegrec_last_error(ctx));
  return exit_code_for(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEG-signal based item recommendation pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", eegrec_version());

  Options gen_opt, train_opt, eval_opt, sweep_opt, inspect_opt;

  CLI::App* gen = app.add_subcommand("generate", "write a synthetic dataset");
  add_common(gen, gen_opt);

  CLI::App* train = app.add_subcommand("train", "train a model and write a checkpoint");
  add_common(train, train_opt);

  CLI::App* eval = app.add_subcommand("eval", "score the held-out split against a checkpoint");
  add_common(eval, eval_opt);
  std::string eval_ckpt;
  eval->add_option("checkpoint", eval_ckpt, "checkpoint file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "train/eval across hyperparameter values");
  add_common(sweep, sweep_opt);
  std::string sweep_key, sweep_values;
  sweep->add_option("--key", sweep_key, "hyperparameter to sweep")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();

  CLI::App* inspect =
      app.add_subcommand("inspect", "dump collapse probabilities and adjacency matrices");
  add_common(inspect, inspect_opt);
  std::string inspect_ckpt, inspect_rec;
  inspect->add_option("checkpoint", inspect_ckpt, "checkpoint file")->required();
  inspect->add_option("--recording", inspect_rec, "recording id (default: first)");

  CLI11_PARSE(app, argc, argv);

  eegrec_ctx* ctx = eegrec_ctx_new();
  if (!ctx) {
    std::fprintf(stderr, "error: cannot allocate context\n");
    return 1;
  }
  int rc = 1;
  if (gen->parsed()) {
    rc = apply_config(ctx, gen_opt);
    if (rc == 0) rc = finish(ctx, eegrec_generate(ctx));
  } else if (train->parsed()) {
    rc = apply_config(ctx, train_opt);
    if (rc == 0) rc = finish(ctx, eegrec_train(ctx));
  } else if (eval->parsed()) {
    rc = apply_config(ctx, eval_opt);
    if (rc == 0) rc = finish(ctx, eegrec_eval(ctx, eval_ckpt.c_str(), nullptr));
  } else if (sweep->parsed()) {
    rc = apply_config(ctx, sweep_opt);
    if (rc == 0) rc = finish(ctx, eegrec_sweep(ctx, sweep_key.c_str(), sweep_values.c_str()));
  } else if (inspect->parsed()) {
    rc = apply_config(ctx, inspect_opt);
    if (rc == 0) {
      rc = finish(ctx, eegrec_inspect(ctx, inspect_ckpt.c_str(),
                                      inspect_rec.empty() ? nullptr : inspect_rec.c_str()));
    }
  }
  eegrec_ctx_free(ctx);
  return rc;
}
