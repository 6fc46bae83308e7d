// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace eegrec::evaluation {

CandidateSet sample_candidates(const std::string& label, const data::ItemCatalog& catalog,
                               Rng& rng, std::size_t n_pos, std::size_t n_neg) {
  const std::vector<std::size_t>& pos_pool = catalog.of_label(label);
  std::vector<std::size_t> neg_pool = catalog.not_of_label(label);
  if (pos_pool.size() < n_pos) {
    throw_data("candidates: class '" + label + "' holds " + std::to_string(pos_pool.size()) +
               " items, need " + std::to_string(n_pos));
  }
  if (neg_pool.size() < n_neg) {
    throw_data("candidates: classes other than '" + label + "' hold " +
               std::to_string(neg_pool.size()) + " items, need " + std::to_string(n_neg));
  }
  CandidateSet out;
  out.positives = n_pos;
  out.items.reserve(n_pos + n_neg);
  for (std::size_t p : rng.sample_without_replacement(pos_pool.size(), n_pos)) {
    out.items.push_back(pos_pool[p]);
  }
  for (std::size_t n : rng.sample_without_replacement(neg_pool.size(), n_neg)) {
    out.items.push_back(neg_pool[n]);
  }
  return out;
}

std::vector<std::size_t> recommend_topk(const Tensor& rep, const data::ItemCatalog& catalog,
                                        const CandidateSet& candidates, std::size_t k) {
  if (k > candidates.items.size()) {
    throw_contract("recommend_topk: k = " + std::to_string(k) + " exceeds candidate count " +
                   std::to_string(candidates.items.size()));
  }
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(candidates.items.size());
  for (std::size_t idx : candidates.items) {
    scored.emplace_back(lin::dot(rep, catalog.items[idx].embedding), idx);
  }
  std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return catalog.items[a.second].item_id < catalog.items[b.second].item_id;
  });
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(scored[i].second);
  return out;
}

PrMetrics precision_recall_f1(const std::vector<std::size_t>& recommended,
                              const std::vector<std::size_t>& positives, std::size_t k) {
  if (recommended.size() != k) {
    throw_contract("precision_recall_f1: recommendation list length " +
                   std::to_string(recommended.size()) + " differs from k = " + std::to_string(k));
  }
  std::size_t hits = 0;
  for (std::size_t r : recommended) {
    if (std::find(positives.begin(), positives.end(), r) != positives.end()) ++hits;
  }
  PrMetrics m;
  m.precision = static_cast<double>(hits) / static_cast<double>(k);
  m.recall = positives.empty() ? 0.0
                               : static_cast<double>(hits) / static_cast<double>(positives.size());
  m.f1 = (m.precision + m.recall) > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

double content_similarity(const Tensor& rep_a, const Tensor& rep_b) {
  double na = lin::norm(rep_a);
  double nb = lin::norm(rep_b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return lin::dot(rep_a, rep_b) / (na * nb);
}

double color_similarity(const Tensor& img_a, const Tensor& img_b) {
  if (img_a.shape() != img_b.shape()) {
    throw_contract("color_similarity: image shapes differ, " + shape_str(img_a.shape()) +
                   " vs " + shape_str(img_b.shape()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < img_a.size(); ++i) {
    double a = img_a.values()[i];
    double b = img_b.values()[i];
    double hi = std::max(a, b);
    total += hi == 0.0 ? 1.0 : 1.0 - std::abs(a - b) / hi;
  }
  return total / static_cast<double>(img_a.size());
}

Tensor edge_map(const Tensor& img) {
  std::size_t h = img.rows(), w = img.cols();
  Tensor magnitude({h, w});
  for (std::size_t y = 1; y + 1 < h; ++y) {
    for (std::size_t x = 1; x + 1 < w; ++x) {
      double gx = (img.at(y - 1, x + 1) + 2.0 * img.at(y, x + 1) + img.at(y + 1, x + 1)) -
                  (img.at(y - 1, x - 1) + 2.0 * img.at(y, x - 1) + img.at(y + 1, x - 1));
      double gy = (img.at(y + 1, x - 1) + 2.0 * img.at(y + 1, x) + img.at(y + 1, x + 1)) -
                  (img.at(y - 1, x - 1) + 2.0 * img.at(y - 1, x) + img.at(y - 1, x + 1));
      magnitude.at(y, x) = std::sqrt(gx * gx + gy * gy);
    }
  }
  std::vector<double> sorted = magnitude.values();
  std::sort(sorted.begin(), sorted.end());
  std::size_t rank = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(sorted.size())));
  double threshold = sorted[std::min(rank == 0 ? 0 : rank - 1, sorted.size() - 1)];
  Tensor edges({h, w});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges.values()[i] = magnitude.values()[i] > threshold ? 1.0 : 0.0;
  }
  return edges;
}

double structural_similarity(const Tensor& img_a, const Tensor& img_b) {
  if (img_a.shape() != img_b.shape()) {
    throw_contract("structural_similarity: image shapes differ");
  }
  Tensor ea = edge_map(img_a);
  Tensor eb = edge_map(img_b);
  std::size_t mismatched = 0;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if ((ea.values()[i] != 0.0) != (eb.values()[i] != 0.0)) ++mismatched;
  }
  return 1.0 - static_cast<double>(mismatched) / static_cast<double>(ea.size());
}

StyleObservation style_scores(const data::ItemRecord& viewed, const data::ItemRecord& recommended,
                              double instance_precision) {
  StyleObservation out;
  if (!viewed.image.defined() || !recommended.image.defined()) return out;
  out.has_images = true;
  double content = content_similarity(viewed.embedding, recommended.embedding);
  out.scores.content = std::max(0.0, content);  // thresholds are non-negative
  out.scores.color = color_similarity(viewed.image, recommended.image);
  out.scores.structural = structural_similarity(viewed.image, recommended.image);
  out.scores.synthesis = out.scores.content * out.scores.color * out.scores.structural;
  out.scores.mixed = out.scores.synthesis * instance_precision;
  return out;
}

StyleReport build_style_report(const std::vector<StyleObservation>& observations,
                               const std::vector<double>& thresholds) {
  StyleReport rep;
  rep.thresholds = thresholds;
  rep.content.assign(thresholds.size(), 0.0);
  rep.color.assign(thresholds.size(), 0.0);
  rep.structural.assign(thresholds.size(), 0.0);
  rep.synthesis.assign(thresholds.size(), 0.0);
  rep.mixed.assign(thresholds.size(), 0.0);
  for (const StyleObservation& obs : observations) {
    if (!obs.has_images) {
      ++rep.missing_images;
      continue;
    }
    ++rep.scored;
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      if (obs.scores.content >= thresholds[t]) rep.content[t] += 1.0;
      if (obs.scores.color >= thresholds[t]) rep.color[t] += 1.0;
      if (obs.scores.structural >= thresholds[t]) rep.structural[t] += 1.0;
      if (obs.scores.synthesis >= thresholds[t]) rep.synthesis[t] += 1.0;
      if (obs.scores.mixed >= thresholds[t]) rep.mixed[t] += 1.0;
    }
  }
  if (rep.scored > 0) {
    double inv = 1.0 / static_cast<double>(rep.scored);
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      rep.content[t] *= inv;
      rep.color[t] *= inv;
      rep.structural[t] *= inv;
      rep.synthesis[t] *= inv;
      rep.mixed[t] *= inv;
    }
  }
  return rep;
}

}  // namespace eegrec::evaluation
