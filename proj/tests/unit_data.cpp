// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <doctest.h>

#include "core/data.hpp"
#include "core/error.hpp"

using namespace eegrec;
using namespace eegrec::data;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string mbd_line(const std::string& event, const std::string& channel,
                     const std::string& label, std::size_t samples) {
  std::ostringstream out;
  out << "1\t" << event << "\tIN\t" << channel << "\t" << label << "\t" << samples << "\t";
  for (std::size_t i = 0; i < samples; ++i) {
    if (i) out << ',';
    out << (i % 7) << ".5";
  }
  return out.str();
}

}  // namespace

TEST_CASE("parsing channel-per-line EEG capture files") {
  auto path = temp_file("eegrec_mbd_test.tsv");

  SUBCASE("five well-formed lines become one recording") {
    std::ostringstream text;
    for (const char* ch : {"AF3", "AF4", "T7", "T8", "Pz"}) {
      text << mbd_line("ev1", ch, "42", 360) << '\n';
    }
    write_text(path, text.str());
    ParsedEeg parsed = parse_mbd_tsv(path.string());
    CHECK(parsed.skipped_events == 0);
    REQUIRE(parsed.recordings.size() == 1);
    CHECK(parsed.recordings[0].label == "42");
    CHECK(parsed.recordings[0].recording_id == "ev1");
    CHECK(parsed.recordings[0].signal.rows() == 5);
    CHECK(parsed.recordings[0].signal.cols() == 360);
  }
  SUBCASE("an event missing a channel is skipped and counted") {
    std::ostringstream text;
    for (const char* ch : {"AF3", "AF4", "T7", "T8"}) {
      text << mbd_line("ev1", ch, "42", 360) << '\n';
    }
    for (const char* ch : {"AF3", "AF4", "T7", "T8", "Pz"}) {
      text << mbd_line("ev2", ch, "9", 360) << '\n';
    }
    write_text(path, text.str());
    ParsedEeg parsed = parse_mbd_tsv(path.string());
    CHECK(parsed.skipped_events == 1);
    REQUIRE(parsed.recordings.size() == 1);
    CHECK(parsed.recordings[0].recording_id == "ev2");
  }
  SUBCASE("short channels are zero-padded, long ones truncated") {
    std::ostringstream text;
    text << mbd_line("ev1", "AF3", "7", 300) << '\n';
    text << mbd_line("ev1", "AF4", "7", 400) << '\n';
    for (const char* ch : {"T7", "T8", "Pz"}) text << mbd_line("ev1", ch, "7", 360) << '\n';
    write_text(path, text.str());
    ParsedEeg parsed = parse_mbd_tsv(path.string());
    REQUIRE(parsed.recordings.size() == 1);
    const Tensor& sig = parsed.recordings[0].signal;
    for (std::size_t j = 300; j < 360; ++j) CHECK(sig.at(0, j) == 0.0);  // padded tail
    CHECK(sig.cols() == 360);
  }
  SUBCASE("malformed lines report their line number") {
    write_text(path, mbd_line("ev1", "AF3", "1", 10) + "\nnot a record\n");
    CHECK_THROWS_WITH_AS(parse_mbd_tsv(path.string()), doctest::Contains("line 2"), Error);
  }
  std::filesystem::remove(path);
}

TEST_CASE("canonical recording files re-serialize byte-stably") {
  Rng rng(3);
  std::vector<EegRecording> recs;
  for (int i = 0; i < 4; ++i) {
    EegRecording rec;
    rec.label = "c00" + std::to_string(i % 2);
    rec.recording_id = "rec_" + std::to_string(i);
    rec.signal = Tensor({2, 9});
    for (double& v : rec.signal.values()) v = rng.uniform(-30, 30);
    recs.push_back(std::move(rec));
  }
  auto p1 = temp_file("eegrec_canon_1.txt");
  auto p2 = temp_file("eegrec_canon_2.txt");
  write_canonical(recs, p1.string());
  std::vector<EegRecording> reread = read_canonical(p1.string());
  REQUIRE(reread.size() == recs.size());
  write_canonical(reread, p2.string());
  CHECK(read_text(p1) == read_text(p2));
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(reread[i].signal.values() == recs[i].signal.values());
    CHECK(reread[i].label == recs[i].label);
    CHECK(reread[i].recording_id == recs[i].recording_id);
  }
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("distribution shaping") {
  auto make_flat = [](std::size_t classes, std::size_t per) {
    std::vector<EegRecording> recs;
    for (std::size_t c = 0; c < classes; ++c) {
      for (std::size_t i = 0; i < per; ++i) {
        EegRecording rec;
        rec.label = "c" + std::to_string(c);
        rec.recording_id = rec.label + "_" + std::to_string(i);
        rec.signal = Tensor({1, 4});
        recs.push_back(std::move(rec));
      }
    }
    return recs;
  };

  SUBCASE("as-is and long-tail keep the source") {
    auto recs = make_flat(3, 10);
    Rng rng(5);
    auto kept = shape_distribution(recs, {DistributionKind::as_is, 0}, rng);
    CHECK(kept.size() == recs.size());
    auto tail = shape_distribution(recs, {DistributionKind::long_tail, 0}, rng);
    CHECK(tail.size() == recs.size());
  }
  SUBCASE("normal shaping peaks at the middle class") {
    auto recs = make_flat(3, 20);
    Rng rng(7);
    auto shaped = shape_distribution(recs, {DistributionKind::normal, 30}, rng);
    CHECK(shaped.size() == 30);
    std::map<std::string, std::size_t> counts;
    for (const auto& r : shaped) counts[r.label] += 1;
    CHECK(counts["c1"] > counts["c0"]);
    CHECK(counts["c1"] > counts["c2"]);
  }
  SUBCASE("shaped totals hit the configured total exactly") {
    auto recs = make_flat(5, 40);
    Rng rng(9);
    for (std::size_t total : {17, 50, 100}) {
      auto shaped = shape_distribution(recs, {DistributionKind::normal, total}, rng);
      CHECK(shaped.size() == total);
    }
  }
  SUBCASE("infeasible targets list the offending classes") {
    auto recs = make_flat(3, 5);
    Rng rng(11);
    CHECK_THROWS_WITH_AS(shape_distribution(recs, {DistributionKind::normal, 15}, rng),
                         doctest::Contains("c1"), Error);
  }
}

TEST_CASE("stratified splitting") {
  auto make_labeled = [](const std::map<std::string, std::size_t>& counts) {
    std::vector<EegRecording> recs;
    for (const auto& [label, n] : counts) {
      for (std::size_t i = 0; i < n; ++i) {
        EegRecording rec;
        rec.label = label;
        rec.recording_id = label + "_" + std::to_string(i);
        rec.signal = Tensor({1, 4});
        recs.push_back(std::move(rec));
      }
    }
    return recs;
  };

  SUBCASE("a hundred instances split 85/15") {
    auto recs = make_labeled({{"a", 100}});
    Rng rng(3);
    DatasetSplit s = split(recs, 0.85, rng);
    CHECK(s.train.size() == 85);
    CHECK(s.test.size() == 15);
  }
  SUBCASE("same seed, same split") {
    auto recs = make_labeled({{"a", 40}, {"b", 25}});
    Rng r1(5), r2(5);
    DatasetSplit s1 = split(recs, 0.85, r1);
    DatasetSplit s2 = split(recs, 0.85, r2);
    REQUIRE(s1.train.size() == s2.train.size());
    for (std::size_t i = 0; i < s1.train.size(); ++i) {
      CHECK(s1.train[i].recording_id == s2.train[i].recording_id);
    }
  }
  SUBCASE("per-class ratio stays within one instance of the target") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      std::map<std::string, std::size_t> counts;
      std::size_t n_classes = 2 + rng.next_index(4);
      for (std::size_t c = 0; c < n_classes; ++c) {
        counts["cl" + std::to_string(c)] = 2 + rng.next_index(40);
      }
      auto recs = make_labeled(counts);
      Rng srng(trial);
      DatasetSplit s = split(recs, 0.85, srng);
      std::map<std::string, std::size_t> train_counts;
      for (const auto& r : s.train) train_counts[r.label] += 1;
      for (const auto& [label, total] : counts) {
        double want = 0.85 * static_cast<double>(total);
        CHECK(std::fabs(static_cast<double>(train_counts[label]) - want) <= 1.0);
      }
    }
  }
  SUBCASE("single-instance classes go to training with a count") {
    auto recs = make_labeled({{"a", 1}, {"b", 10}});
    Rng rng(9);
    DatasetSplit s = split(recs, 0.85, rng);
    CHECK(s.single_instance_classes == 1);
    bool found = false;
    for (const auto& r : s.train) found |= r.label == "a";
    CHECK(found);
  }
}

TEST_CASE("synthetic data generation") {
  SUBCASE("zero noise repeats the class template exactly") {
    SyntheticSpec spec;
    spec.classes = 2;
    spec.per_class = 3;
    spec.noise = 0.0;
    spec.electrodes = 2;
    spec.samples = 30;
    spec.embed_dim = 4;
    spec.items_per_class = 15;
    spec.with_images = false;
    SyntheticData out = generate_synthetic(spec, 5);
    CHECK(out.recordings[0].signal.values() == out.recordings[1].signal.values());
    CHECK(out.recordings[0].signal.values() != out.recordings[3].signal.values());
  }
  SUBCASE("counts satisfy the candidate-protocol feasibility contract") {
    SyntheticSpec spec;
    spec.classes = 8;
    spec.per_class = 50;
    spec.samples = 60;
    spec.with_images = false;
    SyntheticData out = generate_synthetic(spec, 7);
    CHECK(out.recordings.size() == 400);
    for (const auto& [label, items] : out.catalog.by_label) {
      CHECK(items.size() >= 15);
      CHECK(out.catalog.items.size() - items.size() >= 85);
    }
  }
  SUBCASE("high-SNR classes are linearly separable (perceptron oracle)") {
    SyntheticSpec spec;
    spec.classes = 5;
    spec.per_class = 12;
    spec.noise = 0.05;
    spec.electrodes = 2;
    spec.samples = 60;
    spec.with_images = false;
    SyntheticData out = generate_synthetic(spec, 9);

    std::map<std::string, std::size_t> class_ids;
    for (const auto& rec : out.recordings) {
      class_ids.emplace(rec.label, class_ids.size());
    }
    std::size_t dim = spec.electrodes * spec.samples;
    std::vector<std::vector<double>> weights(class_ids.size(),
                                             std::vector<double>(dim + 1, 0.0));
    auto predict = [&](const EegRecording& rec) {
      std::size_t best = 0;
      double best_score = -1e300;
      for (std::size_t c = 0; c < weights.size(); ++c) {
        double score = weights[c][dim];
        for (std::size_t i = 0; i < dim; ++i) score += weights[c][i] * rec.signal.values()[i];
        if (score > best_score) {
          best_score = score;
          best = c;
        }
      }
      return best;
    };
    for (int epoch = 0; epoch < 30; ++epoch) {
      for (const auto& rec : out.recordings) {
        std::size_t want = class_ids[rec.label];
        std::size_t got = predict(rec);
        if (got != want) {
          for (std::size_t i = 0; i < dim; ++i) {
            weights[want][i] += rec.signal.values()[i];
            weights[got][i] -= rec.signal.values()[i];
          }
          weights[want][dim] += 1.0;
          weights[got][dim] -= 1.0;
        }
      }
    }
    std::size_t correct = 0;
    for (const auto& rec : out.recordings) correct += predict(rec) == class_ids[rec.label];
    double accuracy = static_cast<double>(correct) / static_cast<double>(out.recordings.size());
    CHECK(accuracy > 0.9);
  }
}

TEST_CASE("embedding files") {
  auto path = temp_file("eegrec_embed_test.tsv");
  SUBCASE("happy path with two items") {
    write_text(path, "i1\tc0\t1 2 3 4\ni2\tc1\t5 6 7 8\n");
    ItemCatalog cat = load_embeddings(path.string());
    CHECK(cat.items.size() == 2);
    CHECK(cat.embed_dim == 4);
    CHECK(cat.items[1].embedding.values() == std::vector<double>{5, 6, 7, 8});
  }
  SUBCASE("duplicate item ids are rejected by name") {
    write_text(path, "i1\tc0\t1 2\ni1\tc1\t3 4\n");
    CHECK_THROWS_WITH_AS(load_embeddings(path.string()), doctest::Contains("i1"), Error);
  }
  SUBCASE("width drift is rejected with the offending line") {
    write_text(path, "i1\tc0\t1 2 3\ni2\tc1\t4 5\n");
    CHECK_THROWS_WITH_AS(load_embeddings(path.string()), doctest::Contains("line 2"), Error);
  }
  SUBCASE("an empty catalog is an error") {
    write_text(path, "");
    CHECK_THROWS_AS(load_embeddings(path.string()), Error);
  }
  SUBCASE("round trip preserves ids, labels and values") {
    write_text(path, "i1\tc0\t1.5 -2.25\ni2\tc1\t0.125 3\n");
    ItemCatalog cat = load_embeddings(path.string());
    auto p2 = temp_file("eegrec_embed_rt.tsv");
    write_embeddings(cat, p2.string());
    ItemCatalog again = load_embeddings(p2.string());
    REQUIRE(again.items.size() == cat.items.size());
    for (std::size_t i = 0; i < cat.items.size(); ++i) {
      CHECK(again.items[i].item_id == cat.items[i].item_id);
      CHECK(again.items[i].embedding.values() == cat.items[i].embedding.values());
    }
    std::filesystem::remove(p2);
  }
  std::filesystem::remove(path);
}

TEST_CASE("class maps rewrite labels") {
  auto path = temp_file("eegrec_classmap.tsv");
  write_text(path, "7\tmammal\n9\tmammal\n# comment\n12\tbird\n");
  auto mapping = load_class_map(path.string());
  CHECK(mapping.size() == 3);
  std::vector<EegRecording> recs(2);
  recs[0].label = "7";
  recs[0].signal = Tensor({1, 2});
  recs[1].label = "100";
  recs[1].signal = Tensor({1, 2});
  apply_class_map(recs, mapping);
  CHECK(recs[0].label == "mammal");
  CHECK(recs[1].label == "100");
  std::filesystem::remove(path);
}

TEST_CASE("grayscale image files round-trip") {
  Tensor img({3, 5});
  for (std::size_t i = 0; i < img.size(); ++i) img.values()[i] = static_cast<double>(i * 16);
  auto path = temp_file("eegrec_img.pgm");
  write_pgm(img, path.string());
  Tensor back = read_pgm(path.string());
  CHECK(back.shape() == img.shape());
  for (std::size_t i = 0; i < img.size(); ++i) CHECK(back.values()[i] == img.values()[i]);
  std::filesystem::remove(path);
}

TEST_CASE("color images are collapsed to luma on load") {
  auto path = temp_file("eegrec_img.ppm");
  write_text(path, "P3\n2 1\n255\n255 0 0 0 255 0\n");
  Tensor img = read_pgm(path.string());
  CHECK(img.rows() == 1);
  CHECK(img.cols() == 2);
  CHECK(img.values()[0] == doctest::Approx(0.299 * 255));
  CHECK(img.values()[1] == doctest::Approx(0.587 * 255));
  std::filesystem::remove(path);
}
