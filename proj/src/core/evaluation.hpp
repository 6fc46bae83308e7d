// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "core/data.hpp"
#include "core/rng.hpp"
#include "core/tensor.hpp"

namespace eegrec::evaluation {

/// Scoring pool for one test instance: n_pos items sharing the instance's
/// label plus n_neg items drawn from the other labels, no duplicates.
struct CandidateSet {
  std::vector<std::size_t> items;  // catalog indices; the first `positives` share the label
  std::size_t positives = 0;
};

CandidateSet sample_candidates(const std::string& label, const data::ItemCatalog& catalog,
                               Rng& rng, std::size_t n_pos = 15, std::size_t n_neg = 85);

/// Candidates sorted by descending dot score against the representation,
/// ties broken by item id; the first k are returned.
std::vector<std::size_t> recommend_topk(const Tensor& rep, const data::ItemCatalog& catalog,
                                        const CandidateSet& candidates, std::size_t k);

struct PrMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

PrMetrics precision_recall_f1(const std::vector<std::size_t>& recommended,
                              const std::vector<std::size_t>& positives, std::size_t k);

/// Cosine of two representations; zero vectors score 0.
double content_similarity(const Tensor& rep_a, const Tensor& rep_b);

/// Mean over pixels of 1 - |a - b| / max(a, b); both-zero pixels count 1.
double color_similarity(const Tensor& img_a, const Tensor& img_b);

/// Binary edge map: 3x3 gradient magnitude thresholded at the image's own
/// 90th percentile. Border pixels are never edges.
Tensor edge_map(const Tensor& img);

/// 1 - XOR(edge maps) / pixel count.
double structural_similarity(const Tensor& img_a, const Tensor& img_b);

struct StyleScores {
  double content = 0.0;    // clamped at 0 for threshold counting
  double color = 0.0;
  double structural = 0.0;
  double synthesis = 0.0;  // product of the three
  double mixed = 0.0;      // synthesis * instance precision@k
};

struct StyleReport {
  std::vector<double> thresholds;
  // fraction of recommendations with score >= threshold, per threshold
  std::vector<double> content, color, structural, synthesis, mixed;
  std::size_t scored = 0;
  std::size_t missing_images = 0;  // recommendations excluded for lack of a raw image
};

struct StyleObservation {
  StyleScores scores;
  bool has_images = false;
};

/// Scores one recommended item against the viewed item's image/embedding.
StyleObservation style_scores(const data::ItemRecord& viewed, const data::ItemRecord& recommended,
                              double instance_precision);

/// Accumulates per-recommendation scores into threshold-sweep fractions.
StyleReport build_style_report(const std::vector<StyleObservation>& observations,
                               const std::vector<double>& thresholds);

}  // namespace eegrec::evaluation
