// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "core/error.hpp"

namespace eegrec::data {

namespace {

const char* kChannelOrder[] = {"AF3", "AF4", "T7", "T8", "Pz"};

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw_parse("line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void ItemCatalog::rebuild_index() {
  by_label.clear();
  for (std::size_t i = 0; i < items.size(); ++i) by_label[items[i].label].push_back(i);
}

const std::vector<std::size_t>& ItemCatalog::of_label(const std::string& label) const {
  static const std::vector<std::size_t> empty;
  auto it = by_label.find(label);
  return it == by_label.end() ? empty : it->second;
}

std::vector<std::size_t> ItemCatalog::not_of_label(const std::string& label) const {
  std::vector<std::size_t> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].label != label) out.push_back(i);
  }
  return out;
}

DistributionKind parse_distribution(const std::string& name) {
  if (name == "as-is" || name == "as_is") return DistributionKind::as_is;
  if (name == "normal") return DistributionKind::normal;
  if (name == "long-tail" || name == "long_tail") return DistributionKind::long_tail;
  throw_config("unknown distribution '" + name + "' (expected as-is, normal, or long-tail)");
}

std::string distribution_name(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::as_is: return "as-is";
    case DistributionKind::normal: return "normal";
    case DistributionKind::long_tail: return "long-tail";
  }
  return "as-is";
}

ParsedEeg parse_mbd_tsv(const std::string& path, std::size_t electrodes, std::size_t samples) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open EEG source file '" + path + "'");
  if (electrodes != 5) throw_config("MBD parsing expects 5 electrodes");

  struct EventRows {
    std::map<std::string, std::vector<double>> channels;
    std::string label;
    std::size_t order = 0;
  };
  std::map<std::string, EventRows> events;
  std::vector<std::string> event_order;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f = split_fields(line, '\t');
    if (f.size() != 7) {
      throw_parse("line " + std::to_string(line_no) + ": expected 7 tab-separated fields, got " +
                  std::to_string(f.size()));
    }
    const std::string& event_id = f[1];
    const std::string& channel = f[3];
    const std::string& label = f[4];
    std::vector<std::string> sample_strs = split_fields(f[6], ',');
    std::vector<double> row;
    row.reserve(sample_strs.size());
    for (const std::string& s : sample_strs) row.push_back(parse_double(s, line_no));

    auto it = events.find(event_id);
    if (it == events.end()) {
      it = events.emplace(event_id, EventRows{}).first;
      it->second.label = label;
      it->second.order = event_order.size();
      event_order.push_back(event_id);
    }
    it->second.channels[channel] = std::move(row);
  }

  ParsedEeg out;
  for (const std::string& event_id : event_order) {
    const EventRows& ev = events.at(event_id);
    bool complete = true;
    for (const char* ch : kChannelOrder) {
      if (!ev.channels.count(ch)) {
        complete = false;
        break;
      }
    }
    if (!complete) {
      ++out.skipped_events;
      continue;
    }
    EegRecording rec;
    rec.label = ev.label;
    rec.recording_id = event_id;
    rec.signal = Tensor({5, samples});
    for (std::size_t m = 0; m < 5; ++m) {
      const std::vector<double>& row = ev.channels.at(kChannelOrder[m]);
      std::size_t n = std::min(samples, row.size());  // truncate tail / zero-pad
      for (std::size_t j = 0; j < n; ++j) rec.signal.at(m, j) = row[j];
    }
    out.recordings.push_back(std::move(rec));
  }
  return out;
}

std::vector<EegRecording> read_canonical(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open dataset file '" + path + "'");
  std::vector<EegRecording> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream header(line);
    std::size_t m = 0, n = 0;
    std::string label, rec_id;
    if (!(header >> m >> n >> label >> rec_id)) {
      throw_parse("line " + std::to_string(line_no) + ": bad recording header '" + line + "'");
    }
    EegRecording rec;
    rec.label = label;
    rec.recording_id = rec_id;
    rec.signal = Tensor({m, n});
    for (std::size_t r = 0; r < m; ++r) {
      if (!std::getline(in, line)) {
        throw_parse("line " + std::to_string(line_no) + ": truncated recording '" + rec_id + "'");
      }
      ++line_no;
      std::vector<std::string> vals = split_fields(line, ' ');
      if (vals.size() != n) {
        throw_parse("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                    " samples, got " + std::to_string(vals.size()));
      }
      for (std::size_t j = 0; j < n; ++j) rec.signal.at(r, j) = parse_double(vals[j], line_no);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void write_canonical(const std::vector<EegRecording>& recordings, const std::string& path) {
  std::ofstream outf(path);
  if (!outf) throw_io("cannot write dataset file '" + path + "'");
  for (const EegRecording& rec : recordings) {
    outf << rec.signal.rows() << ' ' << rec.signal.cols() << ' ' << rec.label << ' '
         << rec.recording_id << '\n';
    for (std::size_t r = 0; r < rec.signal.rows(); ++r) {
      for (std::size_t j = 0; j < rec.signal.cols(); ++j) {
        if (j) outf << ' ';
        outf << format_double(rec.signal.at(r, j));
      }
      outf << '\n';
    }
  }
  if (!outf) throw_io("failed writing dataset file '" + path + "'");
}

std::map<std::string, std::string> load_class_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open class map '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f = split_fields(line, '\t');
    if (f.size() != 2) {
      throw_parse("line " + std::to_string(line_no) + ": class map expects child<TAB>merged");
    }
    out[f[0]] = f[1];
  }
  return out;
}

void apply_class_map(std::vector<EegRecording>& recordings,
                     const std::map<std::string, std::string>& mapping) {
  for (EegRecording& rec : recordings) {
    auto it = mapping.find(rec.label);
    if (it != mapping.end()) rec.label = it->second;
  }
}

std::vector<EegRecording> shape_distribution(const std::vector<EegRecording>& recordings,
                                             const DistributionSpec& spec, Rng& rng) {
  if (spec.kind != DistributionKind::normal) return recordings;  // source counts kept

  std::map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < recordings.size(); ++i) {
    classes[recordings[i].label].push_back(i);
  }
  std::size_t n_classes = classes.size();
  if (n_classes == 0) return {};
  std::size_t total = spec.total == 0 ? recordings.size() : spec.total;

  // Discretized standard-normal density across classes in label order; the
  // middle of the order receives the largest share.
  std::vector<double> density(n_classes);
  double density_sum = 0.0;
  for (std::size_t r = 0; r < n_classes; ++r) {
    double z = -2.0 + 4.0 * (static_cast<double>(r) + 0.5) / static_cast<double>(n_classes);
    density[r] = std::exp(-0.5 * z * z);
    density_sum += density[r];
  }
  std::vector<std::size_t> target(n_classes);
  std::vector<std::pair<double, std::size_t>> remainder;
  std::size_t assigned = 0;
  for (std::size_t r = 0; r < n_classes; ++r) {
    double share = static_cast<double>(total) * density[r] / density_sum;
    target[r] = static_cast<std::size_t>(share);
    assigned += target[r];
    remainder.emplace_back(share - std::floor(share), r);
  }
  std::sort(remainder.begin(), remainder.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 0; assigned < total; ++i) {
    ++target[remainder[i % n_classes].second];
    ++assigned;
  }

  std::vector<std::string> offenders;
  std::size_t r = 0;
  for (const auto& [label, idx] : classes) {
    if (target[r] > idx.size()) {
      offenders.push_back(label + " (want " + std::to_string(target[r]) + ", have " +
                          std::to_string(idx.size()) + ")");
    }
    ++r;
  }
  if (!offenders.empty()) {
    std::string msg = "normal shaping infeasible for classes:";
    for (const std::string& o : offenders) msg += " " + o;
    throw_data(msg);
  }

  std::vector<EegRecording> out;
  out.reserve(total);
  r = 0;
  for (const auto& [label, idx] : classes) {
    std::vector<std::size_t> pick = rng.sample_without_replacement(idx.size(), target[r]);
    std::sort(pick.begin(), pick.end());
    for (std::size_t p : pick) out.push_back(recordings[idx[p]]);
    ++r;
  }
  return out;
}

DatasetSplit split(const std::vector<EegRecording>& recordings, double train_ratio, Rng& rng) {
  if (train_ratio <= 0.0 || train_ratio >= 1.0) {
    throw_config("train ratio must lie strictly between 0 and 1");
  }
  std::map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < recordings.size(); ++i) {
    classes[recordings[i].label].push_back(i);
  }
  DatasetSplit out;
  for (auto& [label, idx] : classes) {
    rng.shuffle(idx);
    if (idx.size() < 2) {
      out.single_instance_classes += 1;
      for (std::size_t i : idx) out.train.push_back(recordings[i]);
      continue;
    }
    double want = train_ratio * static_cast<double>(idx.size());
    std::size_t n_train = static_cast<std::size_t>(std::llround(want));
    n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      (i < n_train ? out.train : out.test).push_back(recordings[idx[i]]);
    }
  }
  return out;
}

SyntheticData generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  if (spec.classes < 2) throw_config("synthetic data needs at least 2 classes");
  SyntheticData out;
  char buf[32];

  for (std::size_t cls = 0; cls < spec.classes; ++cls) {
    std::snprintf(buf, sizeof(buf), "c%03zu", cls);
    std::string label = buf;
    Rng class_rng(Rng::derive(seed, 1000 + cls));

    // Class signature: three sinusoids per electrode.
    struct Wave {
      double freq, phase, amp;
    };
    std::vector<Wave> waves(spec.electrodes * 3);
    for (Wave& w : waves) {
      w.freq = class_rng.uniform(2.0, 18.0);
      w.phase = class_rng.uniform(0.0, 2.0 * std::numbers::pi);
      w.amp = class_rng.uniform(0.5, 1.0);
    }

    Rng noise_rng(Rng::derive(seed, 2000 + cls));
    for (std::size_t inst = 0; inst < spec.per_class; ++inst) {
      EegRecording rec;
      rec.label = label;
      std::snprintf(buf, sizeof(buf), "rec_%03zu_%04zu", cls, inst);
      rec.recording_id = buf;
      rec.signal = Tensor({spec.electrodes, spec.samples});
      for (std::size_t m = 0; m < spec.electrodes; ++m) {
        for (std::size_t t = 0; t < spec.samples; ++t) {
          double x = static_cast<double>(t) / static_cast<double>(spec.samples);
          double v = 0.0;
          for (std::size_t p = 0; p < 3; ++p) {
            const Wave& w = waves[m * 3 + p];
            v += w.amp * std::sin(2.0 * std::numbers::pi * w.freq * x + w.phase);
          }
          if (spec.noise > 0.0) v += spec.noise * noise_rng.normal();
          rec.signal.at(m, t) = v;
        }
      }
      out.recordings.push_back(std::move(rec));
    }

    // Class direction in embedding space plus jittered items.
    Rng embed_rng(Rng::derive(seed, 3000 + cls));
    std::vector<double> center(spec.embed_dim);
    double cnorm = 0.0;
    for (double& v : center) {
      v = embed_rng.normal();
      cnorm += v * v;
    }
    cnorm = std::sqrt(cnorm);
    for (double& v : center) v /= cnorm;

    double img_fx = class_rng.uniform(1.0, 4.0);
    double img_fy = class_rng.uniform(1.0, 4.0);
    for (std::size_t it = 0; it < spec.items_per_class; ++it) {
      ItemRecord item;
      std::snprintf(buf, sizeof(buf), "item_%03zu_%04zu", cls, it);
      item.item_id = buf;
      item.label = label;
      std::vector<double> emb(spec.embed_dim);
      double norm = 0.0;
      for (std::size_t e = 0; e < spec.embed_dim; ++e) {
        emb[e] = center[e] + spec.embed_jitter * embed_rng.normal() /
                                 std::sqrt(static_cast<double>(spec.embed_dim));
        norm += emb[e] * emb[e];
      }
      norm = std::sqrt(norm);
      for (double& v : emb) v /= norm;
      item.embedding = Tensor::from_values({1, spec.embed_dim}, std::move(emb));
      if (spec.with_images) {
        double phase = embed_rng.uniform(0.0, 2.0 * std::numbers::pi);
        item.image = Tensor({spec.image_dim, spec.image_dim});
        for (std::size_t y = 0; y < spec.image_dim; ++y) {
          for (std::size_t x = 0; x < spec.image_dim; ++x) {
            double arg = 2.0 * std::numbers::pi *
                             (img_fx * static_cast<double>(x) + img_fy * static_cast<double>(y)) /
                             static_cast<double>(spec.image_dim) +
                         phase;
            item.image.at(y, x) = std::floor(127.5 * (1.0 + std::sin(arg)));
          }
        }
      }
      out.catalog.items.push_back(std::move(item));
    }
  }
  out.catalog.embed_dim = spec.embed_dim;
  out.catalog.rebuild_index();
  return out;
}

ItemCatalog load_embeddings(const std::string& path, const std::string& image_dir) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open embedding file '" + path + "'");
  ItemCatalog catalog;
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f = split_fields(line, '\t');
    if (f.size() != 3) {
      throw_parse("line " + std::to_string(line_no) +
                  ": expected item_id<TAB>label<TAB>floats, got " + std::to_string(f.size()) +
                  " fields");
    }
    ItemRecord item;
    item.item_id = f[0];
    item.label = f[1];
    if (seen.count(item.item_id)) {
      throw_data("duplicate item_id '" + item.item_id + "' at line " + std::to_string(line_no));
    }
    seen[item.item_id] = line_no;
    std::vector<std::string> vals = split_fields(f[2], ' ');
    std::vector<double> emb;
    emb.reserve(vals.size());
    for (const std::string& s : vals) {
      if (s.empty()) continue;
      emb.push_back(parse_double(s, line_no));
    }
    if (emb.empty()) throw_parse("line " + std::to_string(line_no) + ": empty embedding");
    if (catalog.embed_dim == 0) {
      catalog.embed_dim = emb.size();
    } else if (emb.size() != catalog.embed_dim) {
      throw_data("line " + std::to_string(line_no) + ": embedding width " +
                 std::to_string(emb.size()) + " differs from established width " +
                 std::to_string(catalog.embed_dim));
    }
    std::size_t width = emb.size();
    item.embedding = Tensor::from_values({1, width}, std::move(emb));
    if (!image_dir.empty()) {
      std::string img_path = image_dir + "/" + item.item_id + ".pgm";
      if (std::filesystem::exists(img_path)) item.image = read_pgm(img_path);
    }
    catalog.items.push_back(std::move(item));
  }
  if (catalog.items.empty()) throw_data("embedding file '" + path + "' holds no items");
  catalog.rebuild_index();
  return catalog;
}

void write_embeddings(const ItemCatalog& catalog, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw_io("cannot write embedding file '" + path + "'");
  for (const ItemRecord& item : catalog.items) {
    out << item.item_id << '\t' << item.label << '\t';
    for (std::size_t i = 0; i < item.embedding.size(); ++i) {
      if (i) out << ' ';
      out << format_double(item.embedding.values()[i]);
    }
    out << '\n';
  }
}

Tensor read_pgm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open image '" + path + "'");
  std::string magic;
  in >> magic;
  if (magic != "P2" && magic != "P3") {
    throw_parse("image '" + path + "': only ASCII PGM (P2) or PPM (P3) is supported");
  }
  std::size_t w = 0, h = 0;
  double maxval = 0;
  in >> w >> h >> maxval;
  Tensor img({h, w});
  if (magic == "P2") {
    for (std::size_t i = 0; i < h * w; ++i) {
      double v;
      if (!(in >> v)) throw_parse("image '" + path + "': truncated pixel data");
      img.values()[i] = v;
    }
  } else {
    // RGB input; the similarity formulas operate on one channel (luma)
    for (std::size_t i = 0; i < h * w; ++i) {
      double r, g, b;
      if (!(in >> r >> g >> b)) throw_parse("image '" + path + "': truncated pixel data");
      img.values()[i] = 0.299 * r + 0.587 * g + 0.114 * b;
    }
  }
  return img;
}

void write_pgm(const Tensor& image, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw_io("cannot write image '" + path + "'");
  out << "P2\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  for (std::size_t r = 0; r < image.rows(); ++r) {
    for (std::size_t c = 0; c < image.cols(); ++c) {
      if (c) out << ' ';
      long v = std::lround(std::clamp(image.at(r, c), 0.0, 255.0));
      out << v;
    }
    out << '\n';
  }
}

}  // namespace eegrec::data
