// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "core/error.hpp"
#include "core/preprocess.hpp"
#include "core/rng.hpp"

using namespace eegrec;
using namespace eegrec::preprocess;

namespace {
EegRecording make_rec(Tensor signal) {
  EegRecording rec;
  rec.signal = std::move(signal);
  rec.label = "c000";
  rec.recording_id = "r0";
  return rec;
}
}  // namespace

TEST_CASE("mean normalization") {
  SUBCASE("constant signal normalizes to zeros and is flagged") {
    NormalizedSignal out = mean_normalize(make_rec(Tensor::matrix({{5, 5, 5}})));
    CHECK(out.degenerate);
    for (double v : out.matrix.values()) CHECK(v == 0.0);
  }
  SUBCASE("simple ramp") {
    NormalizedSignal out = mean_normalize(make_rec(Tensor::matrix({{1, 2, 3}})));
    CHECK_FALSE(out.degenerate);
    CHECK(out.matrix.values()[0] == doctest::Approx(-0.5));
    CHECK(out.matrix.values()[1] == doctest::Approx(0.0));
    CHECK(out.matrix.values()[2] == doctest::Approx(0.5));
  }
  SUBCASE("outputs always land in [-1, 1]") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      Tensor sig({2 + rng.next_index(3), 4 + rng.next_index(8)});
      for (double& v : sig.values()) v = rng.uniform(-500, 500);
      NormalizedSignal out = mean_normalize(make_rec(sig));
      for (double v : out.matrix.values()) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("sliding windows") {
  SUBCASE("hand-enumerated layout, N=7 window=3 step=2") {
    Tensor sig = Tensor::matrix({{1, 2, 3, 4, 5, 6, 7}});
    SegmentSet set = sliding_window(sig, 3, 2);
    CHECK(set.per_electrode == 3);
    CHECK(set.segments.rows() == 3);
    // columns 1-3, 3-5, 5-7 in 1-based terms
    CHECK(set.segments.values() == std::vector<double>{1, 2, 3, 3, 4, 5, 5, 6, 7});
  }
  SUBCASE("whole-row window") {
    Tensor sig = Tensor::matrix({{1, 2, 3, 4}, {5, 6, 7, 8}});
    SegmentSet set = sliding_window(sig, 4, 4);
    CHECK(set.per_electrode == 1);
    CHECK(set.segments.rows() == 2);
    CHECK(set.segments.values() == sig.values());
  }
  SUBCASE("production-scale counts") {
    CHECK(segments_per_electrode(360, 15, 25) == 14);
    Tensor sig({5, 360});
    SegmentSet set = sliding_window(sig, 15, 25);
    CHECK(set.total() == 70);
  }
  SUBCASE("window larger than the row is a config error") {
    CHECK_THROWS_AS(segments_per_electrode(10, 11, 2), Error);
  }
  SUBCASE("concatenating step==window segments rebuilds a prefix") {
    Rng rng(8);
    Tensor sig({1, 11});
    for (double& v : sig.values()) v = rng.uniform(-1, 1);
    SegmentSet set = sliding_window(sig, 3, 3);
    CHECK(set.per_electrode == 3);
    for (std::size_t i = 0; i < set.per_electrode * 3; ++i) {
      CHECK(set.segments.values()[i] == sig.values()[i]);
    }
  }
  SUBCASE("segment count matches a brute-force enumeration") {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t n = 1 + rng.next_index(40);
      std::size_t window = 1 + rng.next_index(n);
      std::size_t step = 1 + rng.next_index(n);
      std::size_t brute = 0;
      for (std::size_t i = 1; (i - 1) * step + window <= n; ++i) ++brute;
      CHECK(segments_per_electrode(n, window, step) == brute);
    }
  }
  SUBCASE("no segment reads past the row end") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t n = 2 + rng.next_index(30);
      std::size_t window = 1 + rng.next_index(n);
      std::size_t step = 1 + rng.next_index(n);
      std::size_t per = segments_per_electrode(n, window, step);
      CHECK((per - 1) * step + window <= n);
    }
  }
}

TEST_CASE("flat segment indexing") {
  CHECK(flat_index(1, 1, 14) == 1);
  CHECK(flat_index(2, 1, 14) == 15);
  CHECK(flat_index(5, 14, 14) == 70);

  SUBCASE("bijection onto 1..M*per") {
    std::vector<bool> seen(5 * 14 + 1, false);
    for (std::size_t m = 1; m <= 5; ++m) {
      for (std::size_t i = 1; i <= 14; ++i) {
        std::size_t j = flat_index(m, i, 14);
        CHECK(j >= 1);
        CHECK(j <= 70);
        CHECK_FALSE(seen[j]);
        seen[j] = true;
      }
    }
  }
  SUBCASE("out-of-range indices are contract errors") {
    CHECK_THROWS_AS(flat_index(0, 1, 14), Error);
    CHECK_THROWS_AS(flat_index(1, 0, 14), Error);
    CHECK_THROWS_AS(flat_index(1, 15, 14), Error);
  }
}
