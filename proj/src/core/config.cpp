// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace eegrec {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size() || v < 0) throw std::invalid_argument(value);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw_config("key '" + key + "': expected a non-negative integer, got '" + value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw_config("key '" + key + "': expected a number, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw_config("key '" + key + "': expected a boolean, got '" + value + "'");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  model::ModelConfig& m = train.model;
  if (key == "electrodes") m.electrodes = parse_size(key, value);
  else if (key == "samples") m.samples = parse_size(key, value);
  else if (key == "window") m.window = parse_size(key, value);
  else if (key == "step") m.step = parse_size(key, value);
  else if (key == "basis") m.basis_count = parse_size(key, value);
  else if (key == "select") m.select_count = parse_size(key, value);
  else if (key == "alpha") m.alpha = parse_real(key, value);
  else if (key == "beta") m.beta = parse_real(key, value);
  else if (key == "depth") m.depth = parse_size(key, value);
  else if (key == "teleport") m.teleport = parse_real(key, value);
  else if (key == "hidden") m.hidden = parse_size(key, value);
  else if (key == "embed_dim") m.embed_dim = parse_size(key, value);
  else if (key == "concat_input") m.concat_input = parse_bool(key, value);
  else if (key == "use_interference") m.use_interference = parse_bool(key, value);
  else if (key == "use_continuity") m.use_continuity = parse_bool(key, value);
  else if (key == "temporal_mask") m.temporal_mask = parse_bool(key, value);
  else if (key == "continuity_loss") train.use_continuity_loss = parse_bool(key, value);
  else if (key == "qm_loss") train.use_qm_loss = parse_bool(key, value);
  else if (key == "lr") train.learning_rate = parse_real(key, value);
  else if (key == "batch") train.batch_size = parse_size(key, value);
  else if (key == "rho") train.reg_weight = parse_real(key, value);
  else if (key == "epochs") train.epochs = parse_size(key, value);
  else if (key == "seed") train.seed = parse_size(key, value);
  else if (key == "n_pos") train.pos_per_step = parse_size(key, value);
  else if (key == "n_neg") train.neg_per_step = parse_size(key, value);
  else if (key == "threads") train.threads = parse_size(key, value);
  else if (key == "dataset") dataset_path = value;
  else if (key == "data_format") {
    if (value != "canonical" && value != "mbd") {
      throw_config("key 'data_format': expected canonical or mbd, got '" + value + "'");
    }
    data_format = value;
  } else if (key == "embeddings") embeddings_path = value;
  else if (key == "images") images_dir = value;
  else if (key == "class_map") class_map_path = value;
  else if (key == "distribution") distribution = data::parse_distribution(value);
  else if (key == "shaped_total") shaped_total = parse_size(key, value);
  else if (key == "split_ratio") split_ratio = parse_real(key, value);
  else if (key == "synthetic") {
    // CxN shorthand: classes x recordings-per-class
    std::size_t xpos = value.find('x');
    if (xpos == std::string::npos) {
      throw_config("key 'synthetic': expected CxN (e.g. 8x50), got '" + value + "'");
    }
    synthetic_classes = parse_size(key, value.substr(0, xpos));
    synthetic_per_class = parse_size(key, value.substr(xpos + 1));
    synthetic = true;
  } else if (key == "synthetic_items") synthetic_items = parse_size(key, value);
  else if (key == "synthetic_noise") synthetic_noise = parse_real(key, value);
  else if (key == "synthetic_jitter") synthetic_jitter = parse_real(key, value);
  else if (key == "synthetic_image_dim") synthetic_image_dim = parse_size(key, value);
  else if (key == "k") k = parse_size(key, value);
  else if (key == "candidates_pos") candidates_pos = parse_size(key, value);
  else if (key == "candidates_neg") candidates_neg = parse_size(key, value);
  else if (key == "style_report") style_report = parse_bool(key, value);
  else if (key == "checkpoint_every") checkpoint_every = parse_size(key, value);
  else if (key == "eval_every") eval_every = parse_size(key, value);
  else if (key == "out") out_dir = value;
  else throw_config("unknown configuration key '" + key + "'");
}

std::string RunConfig::serialize() const {
  const model::ModelConfig& m = train.model;
  std::ostringstream out;
  out << "electrodes = " << m.electrodes << '\n';
  out << "samples = " << m.samples << '\n';
  out << "window = " << m.window << '\n';
  out << "step = " << m.step << '\n';
  out << "basis = " << m.basis_count << '\n';
  out << "select = " << m.select_count << '\n';
  out << "alpha = " << format_real(m.alpha) << '\n';
  out << "beta = " << format_real(m.beta) << '\n';
  out << "depth = " << m.depth << '\n';
  out << "teleport = " << format_real(m.teleport) << '\n';
  out << "hidden = " << m.hidden << '\n';
  out << "embed_dim = " << m.embed_dim << '\n';
  out << "concat_input = " << (m.concat_input ? "true" : "false") << '\n';
  out << "use_interference = " << (m.use_interference ? "true" : "false") << '\n';
  out << "use_continuity = " << (m.use_continuity ? "true" : "false") << '\n';
  out << "temporal_mask = " << (m.temporal_mask ? "true" : "false") << '\n';
  out << "continuity_loss = " << (train.use_continuity_loss ? "true" : "false") << '\n';
  out << "qm_loss = " << (train.use_qm_loss ? "true" : "false") << '\n';
  out << "lr = " << format_real(train.learning_rate) << '\n';
  out << "batch = " << train.batch_size << '\n';
  out << "rho = " << format_real(train.reg_weight) << '\n';
  out << "epochs = " << train.epochs << '\n';
  out << "seed = " << train.seed << '\n';
  // mini-batch gradients are averaged over the batch, not summed
  out << "grad_reduction = average\n";
  out << "n_pos = " << train.pos_per_step << '\n';
  out << "n_neg = " << train.neg_per_step << '\n';
  out << "threads = " << train.threads << '\n';
  out << "dataset = " << dataset_path << '\n';
  out << "data_format = " << data_format << '\n';
  out << "embeddings = " << embeddings_path << '\n';
  out << "images = " << images_dir << '\n';
  out << "class_map = " << class_map_path << '\n';
  out << "distribution = " << data::distribution_name(distribution) << '\n';
  out << "shaped_total = " << shaped_total << '\n';
  out << "split_ratio = " << format_real(split_ratio) << '\n';
  if (synthetic) {
    out << "synthetic = " << synthetic_classes << 'x' << synthetic_per_class << '\n';
    out << "synthetic_items = " << synthetic_items << '\n';
    out << "synthetic_noise = " << format_real(synthetic_noise) << '\n';
    out << "synthetic_jitter = " << format_real(synthetic_jitter) << '\n';
    out << "synthetic_image_dim = " << synthetic_image_dim << '\n';
  }
  out << "k = " << k << '\n';
  out << "candidates_pos = " << candidates_pos << '\n';
  out << "candidates_neg = " << candidates_neg << '\n';
  out << "style_report = " << (style_report ? "true" : "false") << '\n';
  out << "checkpoint_every = " << checkpoint_every << '\n';
  out << "eval_every = " << eval_every << '\n';
  out << "out = " << out_dir << '\n';
  return out.str();
}

void RunConfig::load_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw_config(origin + " line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key == "grad_reduction") continue;  // informational, single supported mode
    set(key, value);
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_text(buf.str(), path);
}

data::SyntheticSpec RunConfig::synthetic_spec() const {
  data::SyntheticSpec spec;
  spec.classes = synthetic_classes;
  spec.per_class = synthetic_per_class;
  spec.embed_dim = train.model.embed_dim;
  spec.electrodes = train.model.electrodes;
  spec.samples = train.model.samples;
  spec.noise = synthetic_noise;
  spec.items_per_class = synthetic_items;
  spec.image_dim = synthetic_image_dim;
  spec.embed_jitter = synthetic_jitter;
  return spec;
}

const std::vector<std::string>& RunConfig::sweepable_keys() {
  static const std::vector<std::string> keys = {"window", "step",  "basis",    "select",
                                                "alpha",  "beta",  "depth",    "teleport"};
  return keys;
}

}  // namespace eegrec
