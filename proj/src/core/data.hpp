// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/preprocess.hpp"
#include "core/rng.hpp"
#include "core/tensor.hpp"

namespace eegrec::data {

struct ItemRecord {
  std::string item_id;
  std::string label;
  Tensor embedding;  // 1 x embed_dim
  Tensor image;      // optional d x d grayscale in [0, 255]; undefined when absent
};

struct ItemCatalog {
  std::vector<ItemRecord> items;
  std::size_t embed_dim = 0;
  std::map<std::string, std::vector<std::size_t>> by_label;

  void rebuild_index();
  const std::vector<std::size_t>& of_label(const std::string& label) const;
  std::vector<std::size_t> not_of_label(const std::string& label) const;
};

struct DatasetSplit {
  std::vector<EegRecording> train;
  std::vector<EegRecording> test;
  std::size_t single_instance_classes = 0;  // placed wholly in train
};

enum class DistributionKind { as_is, normal, long_tail };

struct DistributionSpec {
  DistributionKind kind = DistributionKind::as_is;
  std::size_t total = 0;  // shaped total; 0 keeps the source total
};

DistributionKind parse_distribution(const std::string& name);
std::string distribution_name(DistributionKind kind);

struct ParsedEeg {
  std::vector<EegRecording> recordings;
  std::size_t skipped_events = 0;  // events missing one of the five channels
};

/// Tab-separated capture records, one channel per line:
///   record_id  event_id  device  channel  class_code  sample_count  v1,v2,...
/// Lines sharing an event id are grouped into one recording using the fixed
/// channel order AF3, AF4, T7, T8, Pz; rows are truncated or zero-padded to
/// `samples`. Events missing a channel are skipped and counted.
ParsedEeg parse_mbd_tsv(const std::string& path, std::size_t electrodes = 5,
                        std::size_t samples = 360);

/// Canonical recording text format, records back to back:
///   M N label recording_id
///   <M lines of N floats>
std::vector<EegRecording> read_canonical(const std::string& path);
void write_canonical(const std::vector<EegRecording>& recordings, const std::string& path);

/// child<TAB>merged label pairs.
std::map<std::string, std::string> load_class_map(const std::string& path);
void apply_class_map(std::vector<EegRecording>& recordings,
                     const std::map<std::string, std::string>& mapping);

/// Subsamples per-class counts to match the requested distribution. Normal
/// shaping spreads a discretized standard-normal density over the classes in
/// label order; long-tail and as-is keep the source counts.
std::vector<EegRecording> shape_distribution(const std::vector<EegRecording>& recordings,
                                             const DistributionSpec& spec, Rng& rng);

/// Stratified per-class split, deterministic per rng state.
DatasetSplit split(const std::vector<EegRecording>& recordings, double train_ratio, Rng& rng);

struct SyntheticSpec {
  std::size_t classes = 8;
  std::size_t per_class = 50;
  std::size_t embed_dim = 16;
  std::size_t electrodes = 5;
  std::size_t samples = 360;
  double noise = 0.05;          // additive signal noise (templates are O(1))
  std::size_t items_per_class = 25;
  std::size_t image_dim = 16;
  double embed_jitter = 2.0;    // item spread around the class direction
  bool with_images = true;
};

struct SyntheticData {
  std::vector<EegRecording> recordings;
  ItemCatalog catalog;
};

/// Class-separable desk-scale data: each class is a fixed mixture of
/// sinusoids per electrode plus noise, a class direction in embedding space
/// with per-item jitter, and a class-textured grayscale image per item.
SyntheticData generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

/// Embedding file: item_id<TAB>label<TAB>f1 f2 ... fE. When image_dir is
/// nonempty, <image_dir>/<item_id>.pgm is attached where present.
ItemCatalog load_embeddings(const std::string& path, const std::string& image_dir = "");
void write_embeddings(const ItemCatalog& catalog, const std::string& path);

Tensor read_pgm(const std::string& path);
void write_pgm(const Tensor& image, const std::string& path);

}  // namespace eegrec::data
