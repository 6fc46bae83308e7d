// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "core/data.hpp"
#include "core/training.hpp"

namespace eegrec {

/// Fully resolved run settings: model and training hyperparameters, data
/// sources, the evaluation protocol, and output placement. Precedence is
/// flags > config file > defaults; the resolved state is serialized verbatim
/// into every run directory.
struct RunConfig {
  training::TrainConfig train;

  // data sources
  std::string dataset_path;
  std::string data_format = "canonical";  // canonical | mbd
  std::string embeddings_path;
  std::string images_dir;
  std::string class_map_path;
  data::DistributionKind distribution = data::DistributionKind::as_is;
  std::size_t shaped_total = 0;
  double split_ratio = 0.85;

  // self-contained synthetic mode
  bool synthetic = false;
  std::size_t synthetic_classes = 8;
  std::size_t synthetic_per_class = 50;
  std::size_t synthetic_items = 25;
  double synthetic_noise = 0.05;
  double synthetic_jitter = 2.0;
  std::size_t synthetic_image_dim = 16;

  // evaluation protocol
  std::size_t k = 10;
  std::size_t candidates_pos = 15;
  std::size_t candidates_neg = 85;
  bool style_report = false;
  std::size_t checkpoint_every = 0;  // extra checkpoint every N epochs; 0 = final only
  std::size_t eval_every = 0;        // validation P@k every N epochs; 0 = off

  std::string out_dir = "run";

  /// Applies one key=value assignment; unknown keys or bad values raise a
  /// config error naming the key.
  void set(const std::string& key, const std::string& value);

  /// Every key in a fixed order, normalized.
  std::string serialize() const;

  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& origin);

  data::SyntheticSpec synthetic_spec() const;

  static const std::vector<std::string>& sweepable_keys();
};

}  // namespace eegrec
