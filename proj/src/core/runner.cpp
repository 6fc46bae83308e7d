// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "core/checkpoint.hpp"
#include "core/error.hpp"
#include "core/training.hpp"

namespace eegrec::runner {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kStreamSplit = 0x5317;
constexpr std::uint64_t kStreamSynth = 0x5E3D;
constexpr std::uint64_t kStreamShape = 0x54A9;
constexpr std::uint64_t kStreamEval = 0xE7A1;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw_io("cannot create output directory '" + dir + "': " + ec.message());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw_io("cannot write '" + path + "'");
  out << text;
  if (!out) throw_io("failed writing '" + path + "'");
}

void write_matrix(const std::string& path, const Tensor& matrix) {
  std::ofstream out(path);
  if (!out) throw_io("cannot write '" + path + "'");
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c) out << '\t';
      out << fmt(matrix.at(r, c));
    }
    out << '\n';
  }
}

data::DatasetSplit split_data(const RunConfig& cfg, const std::vector<EegRecording>& recordings) {
  Rng split_rng(Rng::derive(cfg.train.seed, kStreamSplit));
  return data::split(recordings, cfg.split_ratio, split_rng);
}

model::ModelParams params_from_checkpoint(const checkpoint::Loaded& loaded,
                                          model::ModelConfig& model_cfg_out) {
  RunConfig embedded;
  embedded.load_text(loaded.config_text, "checkpoint config");
  model_cfg_out = embedded.train.model;
  model::ModelParams params = model::ModelParams::init(model_cfg_out, 0);
  checkpoint::restore_into(loaded, params.named());
  return params;
}

}  // namespace

LoadedData load_data(const RunConfig& cfg) {
  LoadedData out;
  if (cfg.synthetic) {
    data::SyntheticData synth =
        data::generate_synthetic(cfg.synthetic_spec(), Rng::derive(cfg.train.seed, kStreamSynth));
    out.recordings = std::move(synth.recordings);
    out.catalog = std::move(synth.catalog);
  } else {
    if (cfg.dataset_path.empty()) {
      throw_config("no dataset configured: set 'dataset' or use synthetic mode");
    }
    if (!fs::exists(cfg.dataset_path)) {
      throw_io("dataset path '" + cfg.dataset_path + "' does not exist");
    }
    if (cfg.data_format == "mbd") {
      data::ParsedEeg parsed = data::parse_mbd_tsv(cfg.dataset_path, cfg.train.model.electrodes,
                                                   cfg.train.model.samples);
      if (parsed.skipped_events) {
        std::cerr << "note: skipped " << parsed.skipped_events
                  << " events with missing channels\n";
      }
      out.recordings = std::move(parsed.recordings);
    } else {
      out.recordings = data::read_canonical(cfg.dataset_path);
    }
    if (cfg.embeddings_path.empty()) {
      throw_config("no item embeddings configured: set 'embeddings'");
    }
    out.catalog = data::load_embeddings(cfg.embeddings_path, cfg.images_dir);
  }

  if (!cfg.class_map_path.empty()) {
    auto mapping = data::load_class_map(cfg.class_map_path);
    data::apply_class_map(out.recordings, mapping);
    for (data::ItemRecord& item : out.catalog.items) {
      auto it = mapping.find(item.label);
      if (it != mapping.end()) item.label = it->second;
    }
    out.catalog.rebuild_index();
  }

  if (cfg.distribution != data::DistributionKind::as_is) {
    data::DistributionSpec spec{cfg.distribution, cfg.shaped_total};
    Rng shape_rng(Rng::derive(cfg.train.seed, kStreamShape));
    out.recordings = data::shape_distribution(out.recordings, spec, shape_rng);
  }
  return out;
}

void cmd_generate(const RunConfig& cfg) {
  RunConfig resolved = cfg;
  resolved.synthetic = true;
  ensure_dir(resolved.out_dir);
  data::SyntheticData synth = data::generate_synthetic(
      resolved.synthetic_spec(), Rng::derive(resolved.train.seed, kStreamSynth));
  data::write_canonical(synth.recordings, resolved.out_dir + "/dataset.txt");
  data::write_embeddings(synth.catalog, resolved.out_dir + "/embeddings.tsv");
  std::size_t images = 0;
  if (synth.catalog.items.size() && synth.catalog.items[0].image.defined()) {
    ensure_dir(resolved.out_dir + "/images");
    for (const data::ItemRecord& item : synth.catalog.items) {
      data::write_pgm(item.image, resolved.out_dir + "/images/" + item.item_id + ".pgm");
      ++images;
    }
  }
  write_file(resolved.out_dir + "/config.snapshot", resolved.serialize());
  std::cout << "generated " << synth.recordings.size() << " recordings, "
            << synth.catalog.items.size() << " items, " << images << " images under "
            << resolved.out_dir << "\n";
}

void cmd_train(const RunConfig& cfg) {
  cfg.train.validate();
  ensure_dir(cfg.out_dir);
  write_file(cfg.out_dir + "/config.snapshot", cfg.serialize());

  LoadedData loaded = load_data(cfg);
  data::DatasetSplit split = split_data(cfg, loaded.recordings);
  if (split.single_instance_classes) {
    std::cerr << "warning: " << split.single_instance_classes
              << " single-instance classes were placed wholly in the training set\n";
  }
  std::cout << "training on " << split.train.size() << " instances ("
            << split.test.size() << " held out)\n";

  std::ofstream log(cfg.out_dir + "/epoch.log");
  if (!log) throw_io("cannot write epoch log");
  log << "epoch\tl1\tl2\tl3\ttotal\n";
  std::ofstream validation_log;
  auto on_epoch = [&](const training::EpochStats& s, const model::ModelParams& params) {
    // wall time goes to the console only, keeping the log reproducible
    log << s.epoch << '\t' << fmt(s.l1) << '\t' << fmt(s.l2) << '\t' << fmt(s.l3) << '\t'
        << fmt(s.total) << '\n';
    log.flush();
    std::cout << "epoch " << s.epoch << ": L1=" << s.l1 << " L2=" << s.l2 << " L3=" << s.l3
              << " total=" << s.total << " (" << s.wall_seconds << "s)\n";
    if (cfg.checkpoint_every && (s.epoch + 1) % cfg.checkpoint_every == 0) {
      checkpoint::save(cfg.out_dir + "/checkpoint_epoch_" + std::to_string(s.epoch) + ".bin",
                       cfg.serialize(), params.named());
    }
    if (cfg.eval_every && (s.epoch + 1) % cfg.eval_every == 0 && !split.test.empty()) {
      EvalSummary val = evaluate(params, cfg.train.model, split.test, loaded.catalog, cfg);
      if (!validation_log.is_open()) {
        validation_log.open(cfg.out_dir + "/validation.log");
        validation_log << "epoch\tp_at_" << cfg.k << '\n';
      }
      validation_log << s.epoch << '\t' << fmt(val.p_at_k) << '\n';
      validation_log.flush();
      std::cout << "epoch " << s.epoch << ": validation P@" << cfg.k << " = " << val.p_at_k
                << "\n";
    }
  };

  training::TrainResult result = training::train(split.train, loaded.catalog, cfg.train, on_epoch);
  if (result.halted_on_nan) {
    std::cerr << "warning: non-finite loss during epoch " << result.halted_epoch
              << "; checkpoint holds the last good parameters\n";
  }
  checkpoint::save(cfg.out_dir + "/checkpoint.bin", cfg.serialize(), result.params.named());
  std::cout << "checkpoint written to " << cfg.out_dir << "/checkpoint.bin\n";
}

EvalSummary evaluate(const model::ModelParams& params, const model::ModelConfig& model_cfg,
                     const std::vector<EegRecording>& test_set,
                     const data::ItemCatalog& catalog, const RunConfig& cfg,
                     std::vector<evaluation::PrMetrics>* per_instance) {
  EvalSummary summary;
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    const EegRecording& rec = test_set[i];
    GraphScope scope;
    model::ForwardResult fwd = model::forward(rec, params, model_cfg);
    Tensor rep = fwd.final_rep.clone();

    Rng cand_rng(Rng::derive(Rng::derive(cfg.train.seed, kStreamEval), i));
    evaluation::CandidateSet candidates = evaluation::sample_candidates(
        rec.label, catalog, cand_rng, cfg.candidates_pos, cfg.candidates_neg);
    std::vector<std::size_t> top =
        evaluation::recommend_topk(rep, catalog, candidates, cfg.k);
    std::vector<std::size_t> positives(candidates.items.begin(),
                                       candidates.items.begin() +
                                           static_cast<std::ptrdiff_t>(candidates.positives));
    evaluation::PrMetrics m = evaluation::precision_recall_f1(top, positives, cfg.k);
    if (per_instance) per_instance->push_back(m);
    summary.p_at_k += m.precision;
    summary.r_at_k += m.recall;
    summary.f1_at_k += m.f1;
    ++summary.instances;
  }
  if (summary.instances) {
    double inv = 1.0 / static_cast<double>(summary.instances);
    summary.p_at_k *= inv;
    summary.r_at_k *= inv;
    summary.f1_at_k *= inv;
  }
  return summary;
}

EvalSummary cmd_eval(const RunConfig& cfg, const std::string& checkpoint_path) {
  checkpoint::Loaded loaded_ckpt = checkpoint::load(checkpoint_path);
  model::ModelConfig model_cfg;
  model::ModelParams params = params_from_checkpoint(loaded_ckpt, model_cfg);

  LoadedData loaded = load_data(cfg);
  data::DatasetSplit split = split_data(cfg, loaded.recordings);
  if (split.test.empty()) throw_data("evaluation: test split is empty");

  ensure_dir(cfg.out_dir);
  std::ofstream per(cfg.out_dir + "/metrics.tsv");
  if (!per) throw_io("cannot write metrics.tsv");
  per << "recording_id\tlabel\tprecision\trecall\tf1\n";

  std::vector<evaluation::PrMetrics> instance_metrics;
  EvalSummary summary =
      evaluate(params, model_cfg, split.test, loaded.catalog, cfg, &instance_metrics);
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    const evaluation::PrMetrics& m = instance_metrics[i];
    per << split.test[i].recording_id << '\t' << split.test[i].label << '\t' << fmt(m.precision)
        << '\t' << fmt(m.recall) << '\t' << fmt(m.f1) << '\n';
  }

  std::ostringstream sum;
  sum << "instances\t" << summary.instances << '\n';
  sum << "p_at_" << cfg.k << '\t' << fmt(summary.p_at_k) << '\n';
  sum << "r_at_" << cfg.k << '\t' << fmt(summary.r_at_k) << '\n';
  sum << "f1_at_" << cfg.k << '\t' << fmt(summary.f1_at_k) << '\n';
  write_file(cfg.out_dir + "/summary.tsv", sum.str());
  std::printf("  %-12s %s\n", "metric", "value");
  std::printf("  P@%-10zu %.4f\n", cfg.k, summary.p_at_k);
  std::printf("  R@%-10zu %.4f\n", cfg.k, summary.r_at_k);
  std::printf("  F1@%-9zu %.4f\n", cfg.k, summary.f1_at_k);
  std::printf("  %-12s %zu\n", "instances", summary.instances);

  if (cfg.style_report) {
    // Match each test instance to a viewed item of its class (deterministic
    // first item) and score its recommendations.
    std::vector<evaluation::StyleObservation> observations;
    for (std::size_t i = 0; i < split.test.size(); ++i) {
      const EegRecording& rec = split.test[i];
      const std::vector<std::size_t>& own = loaded.catalog.of_label(rec.label);
      if (own.empty()) continue;
      const data::ItemRecord& viewed = loaded.catalog.items[own.front()];

      GraphScope scope;
      model::ForwardResult fwd = model::forward(rec, params, model_cfg);
      Rng cand_rng(Rng::derive(Rng::derive(cfg.train.seed, kStreamEval), i));
      evaluation::CandidateSet candidates = evaluation::sample_candidates(
          rec.label, loaded.catalog, cand_rng, cfg.candidates_pos, cfg.candidates_neg);
      std::vector<std::size_t> top =
          evaluation::recommend_topk(fwd.final_rep, loaded.catalog, candidates, cfg.k);
      for (std::size_t idx : top) {
        observations.push_back(evaluation::style_scores(viewed, loaded.catalog.items[idx],
                                                        instance_metrics[i].precision));
      }
    }
    std::vector<double> thresholds;
    for (int t = 0; t <= 10; ++t) thresholds.push_back(0.1 * t);
    evaluation::StyleReport report = evaluation::build_style_report(observations, thresholds);
    std::ostringstream style;
    style << "threshold\tcontent\tcolor\tstructural\tsynthesis\tmixed\n";
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      style << fmt(report.thresholds[t]) << '\t' << fmt(report.content[t]) << '\t'
            << fmt(report.color[t]) << '\t' << fmt(report.structural[t]) << '\t'
            << fmt(report.synthesis[t]) << '\t' << fmt(report.mixed[t]) << '\n';
    }
    write_file(cfg.out_dir + "/style.tsv", style.str());
    if (report.missing_images) {
      std::cerr << "note: " << report.missing_images
                << " recommendations lacked raw images and were excluded\n";
    }
  }
  return summary;
}

void cmd_sweep(const RunConfig& cfg, const std::string& key,
               const std::vector<std::string>& values) {
  const auto& keys = RunConfig::sweepable_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    std::string valid;
    for (const std::string& k : keys) valid += (valid.empty() ? "" : ", ") + k;
    throw_config("'" + key + "' is not sweepable; valid keys: " + valid);
  }
  if (values.empty()) throw_config("sweep needs at least one value");
  ensure_dir(cfg.out_dir);
  std::ofstream table(cfg.out_dir + "/sweep.tsv");
  if (!table) throw_io("cannot write sweep.tsv");
  table << key << "\tp_at_" << cfg.k << "\tr_at_" << cfg.k << "\tf1_at_" << cfg.k << '\n';
  for (const std::string& value : values) {
    RunConfig run = cfg;
    run.set(key, value);
    run.out_dir = cfg.out_dir + "/" + key + "_" + value;
    cmd_train(run);
    EvalSummary s = cmd_eval(run, run.out_dir + "/checkpoint.bin");
    table << value << '\t' << fmt(s.p_at_k) << '\t' << fmt(s.r_at_k) << '\t' << fmt(s.f1_at_k)
          << '\n';
    table.flush();
  }
  std::cout << "sweep table written to " << cfg.out_dir << "/sweep.tsv\n";
}

void cmd_inspect(const RunConfig& cfg, const std::string& checkpoint_path,
                 const std::string& recording_id) {
  checkpoint::Loaded loaded_ckpt = checkpoint::load(checkpoint_path);
  model::ModelConfig model_cfg;
  model::ModelParams params = params_from_checkpoint(loaded_ckpt, model_cfg);

  LoadedData loaded = load_data(cfg);
  const EegRecording* rec = nullptr;
  if (recording_id.empty()) {
    if (loaded.recordings.empty()) throw_data("inspect: dataset holds no recordings");
    rec = &loaded.recordings.front();
  } else {
    for (const EegRecording& r : loaded.recordings) {
      if (r.recording_id == recording_id) {
        rec = &r;
        break;
      }
    }
    if (!rec) throw_data("inspect: recording '" + recording_id + "' not found");
  }

  ensure_dir(cfg.out_dir);
  GraphScope scope;
  model::ForwardResult fwd = model::forward(*rec, params, model_cfg);

  std::ostringstream collapse;
  std::size_t per = fwd.segments.per_electrode;
  for (std::size_t j = 0; j < fwd.collapses.size(); ++j) {
    collapse << "segment m=" << (j / per + 1) << " i=" << (j % per + 1) << " probs:";
    for (double p : fwd.collapses[j].probabilities) collapse << ' ' << fmt(p);
    collapse << " top:";
    for (std::size_t t : fwd.collapses[j].top) collapse << ' ' << (t + 1);
    collapse << " bottom:";
    for (std::size_t b : fwd.collapses[j].bottom) collapse << ' ' << (b + 1);
    if (fwd.unit_states[j].degenerate) collapse << " degenerate";
    collapse << '\n';
  }
  write_file(cfg.out_dir + "/collapse.txt", collapse.str());

  if (fwd.continuity_filtered.defined()) {
    write_matrix(cfg.out_dir + "/continuity_filtered.tsv", fwd.continuity_filtered);
    write_matrix(cfg.out_dir + "/continuity_normalized.tsv", fwd.continuity_norm);
  }
  if (fwd.interference_filtered.defined()) {
    write_matrix(cfg.out_dir + "/interference_filtered.tsv", fwd.interference_filtered);
    write_matrix(cfg.out_dir + "/interference_normalized.tsv", fwd.interference_norm);
  }
  std::cout << "inspection dump for '" << rec->recording_id << "' written to " << cfg.out_dir
            << "\n";
}

}  // namespace eegrec::runner
