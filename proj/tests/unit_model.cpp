// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <filesystem>

#include <doctest.h>

#include "core/checkpoint.hpp"
#include "core/error.hpp"
#include "core/model.hpp"
#include "core/optim.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

using namespace eegrec;
using namespace eegrec::model;

namespace {

ModelConfig toy_config() {
  ModelConfig cfg;
  cfg.electrodes = 1;
  cfg.samples = 12;
  cfg.window = 4;
  cfg.step = 4;
  cfg.basis_count = 4;
  cfg.select_count = 2;
  cfg.alpha = 0.3;
  cfg.beta = 0.3;
  cfg.depth = 2;
  cfg.teleport = 0.4;
  cfg.hidden = 6;
  cfg.embed_dim = 8;
  return cfg;
}

EegRecording toy_recording(std::uint64_t seed) {
  EegRecording rec;
  rec.recording_id = "toy";
  rec.label = "c000";
  rec.signal = Tensor({1, 12});
  Rng rng(seed);
  for (double& v : rec.signal.values()) v = rng.uniform(-40, 40);
  return rec;
}

}  // namespace

TEST_CASE("gcn layer") {
  Rng rng(3);
  Tensor x_init({3, 4}), x_prev({3, 4}), adj({3, 3}), layer({4, 4});
  for (double& v : x_init.values()) v = rng.uniform(-1, 1);
  for (double& v : x_prev.values()) v = rng.uniform(-1, 1);
  for (double& v : adj.values()) v = rng.uniform(0, 1);
  for (double& v : layer.values()) v = rng.uniform(-1, 1);

  SUBCASE("teleport-only limit ignores the adjacency") {
    GraphScope scope;
    Tensor with_adj = gcn_layer(x_init, x_prev, adj, layer, 1.0);
    Tensor rand_adj({3, 3});
    for (double& v : rand_adj.values()) v = rng.uniform(-5, 5);
    Tensor with_other = gcn_layer(x_init, x_prev, rand_adj, layer, 1.0);
    CHECK(with_adj.values() == with_other.values());  // bitwise
  }
  SUBCASE("identity propagation at zero teleport") {
    GraphScope scope;
    Tensor out = gcn_layer(x_init, x_prev, Tensor::identity(3), Tensor::identity(4), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out.values()[i] == doctest::Approx(x_prev.values()[i]).epsilon(1e-12));
    }
  }
  SUBCASE("an all-zero adjacency row reduces to the teleport term") {
    GraphScope scope;
    Tensor zero_row_adj = adj.clone();
    for (std::size_t k = 0; k < 3; ++k) zero_row_adj.at(1, k) = 0.0;
    Tensor out = gcn_layer(x_init, x_prev, zero_row_adj, layer, 0.4);
    // row 1 should equal 0.4 * x_init[1] * layer
    for (std::size_t j = 0; j < 4; ++j) {
      double want = 0.0;
      for (std::size_t k = 0; k < 4; ++k) want += 0.4 * x_init.at(1, k) * layer.at(k, j);
      CHECK(out.at(1, j) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  SUBCASE("shape mismatch is a contract error") {
    GraphScope scope;
    Tensor bad({2, 4});
    CHECK_THROWS_AS(gcn_layer(x_init, bad, adj, layer, 0.5), Error);
  }
}

TEST_CASE("depth concatenation") {
  GraphScope scope;
  Rng rng(5);
  SUBCASE("single block passes through") {
    Tensor a({3, 4});
    for (double& v : a.values()) v = rng.uniform(-1, 1);
    Tensor relu_a = relu(a);
    CHECK(depth_concat({relu_a}).values() == relu_a.values());
  }
  SUBCASE("two blocks keep their column order") {
    Tensor a = Tensor::matrix({{1, 2}, {3, 4}});
    Tensor b = Tensor::matrix({{5, 6}, {7, 8}});
    Tensor cat = depth_concat({a, b});
    CHECK(cat.values() == std::vector<double>{1, 2, 5, 6, 3, 4, 7, 8});
  }
  SUBCASE("production-shape arithmetic") {
    std::vector<Tensor> blocks(5, Tensor({70, 15}));
    Tensor cat = depth_concat(blocks);
    CHECK(cat.rows() == 70);
    CHECK(cat.cols() == 75);
  }
}

TEST_CASE("fusion head") {
  ModelConfig cfg = toy_config();
  Rng rng(7);

  auto random_head = [&](std::size_t flat) {
    FusionHead head;
    std::uint64_t s = 100;
    head.h1 = xavier_init({flat, cfg.hidden}, s++);
    head.h2 = xavier_init({cfg.hidden, cfg.hidden}, s++);
    head.h3 = xavier_init({flat, cfg.hidden}, s++);
    head.h4 = xavier_init({cfg.hidden, cfg.hidden}, s++);
    head.h5 = xavier_init({2 * cfg.hidden, cfg.hidden}, s++);
    head.h6 = xavier_init({cfg.hidden, cfg.embed_dim}, s++);
    return head;
  };

  SUBCASE("zero branches give a zero representation") {
    GraphScope scope;
    Tensor zeros({3, 8});
    FusionHead head = random_head(24);
    Tensor rep = fuse_final(zeros, zeros, head);
    for (double v : rep.values()) CHECK(v == 0.0);
  }
  SUBCASE("output length is the configured embedding width") {
    GraphScope scope;
    Tensor a({3, 8}), b({3, 8});
    for (double& v : a.values()) v = rng.uniform(-1, 1);
    for (double& v : b.values()) v = rng.uniform(-1, 1);
    Tensor rep = fuse_final(a, b, random_head(24));
    CHECK(rep.rows() == 1);
    CHECK(rep.cols() == cfg.embed_dim);
  }
  SUBCASE("identical branches cancel under mirrored join weights") {
    // With (h1,h2) == (h3,h4) the two branch activations are equal, so a
    // join matrix stacked as [W; -W] nulls the representation exactly.
    GraphScope scope;
    Tensor a({3, 8});
    for (double& v : a.values()) v = rng.uniform(-1, 1);
    FusionHead head = random_head(24);
    head.h3 = head.h1;
    head.h4 = head.h2;
    Tensor w({cfg.hidden, cfg.hidden});
    for (double& v : w.values()) v = rng.uniform(-1, 1);
    head.h5 = Tensor({2 * cfg.hidden, cfg.hidden});
    for (std::size_t i = 0; i < cfg.hidden; ++i) {
      for (std::size_t j = 0; j < cfg.hidden; ++j) {
        head.h5.at(i, j) = w.at(i, j);
        head.h5.at(cfg.hidden + i, j) = -w.at(i, j);
      }
    }
    Tensor rep = fuse_final(a, a, head);
    for (double v : rep.values()) CHECK(std::fabs(v) < 1e-12);
  }
}

TEST_CASE("full forward pass") {
  ModelConfig cfg = toy_config();
  EegRecording rec = toy_recording(11);
  ModelParams params = ModelParams::init(cfg, 42);

  SUBCASE("intermediate shapes follow the closed-form table") {
    GraphScope scope;
    ForwardResult fwd = forward(rec, params, cfg);
    CHECK(fwd.segments.per_electrode == 3);
    CHECK(fwd.segments.total() == 3);
    CHECK(fwd.learned_segments.rows() == 3);
    CHECK(fwd.learned_segments.cols() == 4);
    CHECK(fwd.continuity_raw.rows() == 3);
    CHECK(fwd.interference_raw.rows() == 3);
    CHECK(fwd.final_rep.rows() == 1);
    CHECK(fwd.final_rep.cols() == 8);
    CHECK(fwd.collapses.size() == 3);
    for (const auto& col : fwd.collapses) {
      CHECK(col.top.size() == 2);
      CHECK(col.bottom.size() == 2);
    }
  }
  SUBCASE("bit-identical across runs") {
    auto run = [&] {
      GraphScope scope;
      return forward(rec, params, cfg).final_rep.values();
    };
    CHECK(run() == run());
  }
  SUBCASE("temporal mask holds in both filtered matrices") {
    GraphScope scope;
    ForwardResult fwd = forward(rec, params, cfg);
    std::size_t per = fwd.segments.per_electrode;
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        if (j % per <= k % per) {
          CHECK(fwd.continuity_filtered.at(j, k) == 0.0);
          CHECK(fwd.interference_filtered.at(j, k) == 0.0);
        }
      }
    }
  }
  SUBCASE("config and parameter mismatches are contract errors") {
    GraphScope scope;
    ModelConfig other = cfg;
    other.electrodes = 2;
    CHECK_THROWS_AS(forward(rec, params, other), Error);
  }
  SUBCASE("stage failures carry the stage name") {
    EegRecording bad = rec;
    bad.signal = rec.signal.clone();
    bad.signal.values()[3] = std::nan("");
    GraphScope scope;
    CHECK_THROWS_WITH_AS(forward(bad, params, cfg), doctest::Contains("normalize"), Error);
  }
  SUBCASE("the depth-0 block can be prepended to the concat") {
    ModelConfig with_input = cfg;
    with_input.concat_input = true;
    CHECK(with_input.flat_width() == 3 * 3 * 4);  // segments x (depth+1) x window
    ModelParams wider = ModelParams::init(with_input, 42);
    GraphScope scope;
    ForwardResult fwd = forward(rec, wider, with_input);
    CHECK(fwd.final_rep.cols() == 8);
  }
  SUBCASE("gradients through the whole pipeline match finite differences") {
    std::vector<Tensor> probe = {params.bases[0], params.cont_layers[0],
                                 params.intf_layers[1], params.head.h6};
    auto report = oracles::fd_check(probe, [&] {
      ForwardResult fwd = forward(rec, params, cfg);
      return sum(fwd.final_rep);
    });
    CAPTURE(report.where);
    CHECK(report.max_rel < 1e-4);
  }
}

TEST_CASE("checkpoint round-trips bit-exactly") {
  ModelConfig cfg = toy_config();
  ModelParams params = ModelParams::init(cfg, 9);
  std::string path = (std::filesystem::temp_directory_path() / "eegrec_ckpt_test.bin").string();

  checkpoint::save(path, "window = 4\n", params.named());
  checkpoint::Loaded loaded = checkpoint::load(path);
  CHECK(loaded.config_text == "window = 4\n");
  CHECK(loaded.params.size() == params.named().size());
  for (std::size_t i = 0; i < loaded.params.size(); ++i) {
    CHECK(loaded.params[i].first == params.named()[i].first);
    CHECK(loaded.params[i].second.values() == params.named()[i].second.values());
  }

  ModelParams fresh = ModelParams::init(cfg, 77);
  checkpoint::restore_into(loaded, fresh.named());
  auto want = params.all();
  auto got = fresh.all();
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i].values() == want[i].values());

  std::filesystem::remove(path);
}
