// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstddef>
#include <random>
#include <vector>

namespace eegrec {

/// Deterministic random stream. Every distribution is hand-rolled on top of
/// std::mt19937_64 so that identical seeds give identical draws on every
/// platform and standard library (std::uniform_real_distribution and friends
/// are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(next_double() * static_cast<double>(n));
  }

  /// Standard normal via Box-Muller (no cached spare; one draw = two u64s).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = next_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  /// k distinct indices from [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  /// Independent sub-stream seed for a named stage of a larger run.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace eegrec
