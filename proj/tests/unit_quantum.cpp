// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "core/error.hpp"
#include "core/quantum.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

using namespace eegrec;
using namespace eegrec::quantum;

TEST_CASE("unit state revision") {
  SUBCASE("3-4-5 triangle") {
    UnitState u = to_unit_state(Tensor::from_values({1, 2}, {3, 4}));
    CHECK_FALSE(u.degenerate);
    CHECK(u.state.values()[0] == doctest::Approx(0.6));
    CHECK(u.state.values()[1] == doctest::Approx(0.8));
  }
  SUBCASE("idempotent on unit vectors") {
    Rng rng(5);
    Tensor v = oracles::random_unit(6, rng);
    UnitState u = to_unit_state(v);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(u.state.values()[i] == doctest::Approx(v.values()[i]).epsilon(1e-12));
    }
    CHECK(std::fabs(lin::norm(u.state) - 1.0) < 1e-12);
  }
  SUBCASE("zero input flags degenerate") {
    UnitState u = to_unit_state(Tensor({1, 4}));
    CHECK(u.degenerate);
    for (double v : u.state.values()) CHECK(v == 0.0);
  }
}

TEST_CASE("collapse probabilities") {
  SUBCASE("aligned standard basis") {
    Tensor basis = Tensor::matrix({{1, 0}, {0, 1}});
    CollapseResult r = collapse_probabilities(Tensor::from_values({1, 2}, {1, 0}), basis, 1);
    CHECK(r.probabilities[0] == doctest::Approx(1.0));
    CHECK(r.probabilities[1] == doctest::Approx(0.0));
    CHECK(r.top == std::vector<std::size_t>{0});
    CHECK(r.bottom == std::vector<std::size_t>{1});
  }
  SUBCASE("rotated basis hand case") {
    Tensor basis = Tensor::matrix({{0.6, 0.8}, {0.8, -0.6}});
    CollapseResult r = collapse_probabilities(Tensor::from_values({1, 2}, {1, 0}), basis, 1);
    CHECK(r.probabilities[0] == doctest::Approx(0.36));
    CHECK(r.probabilities[1] == doctest::Approx(0.64));
  }
  SUBCASE("complete orthonormal basis resolves all probability") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
      Tensor basis = oracles::random_orthonormal(6, rng);
      Tensor state = oracles::random_unit(6, rng);
      CollapseResult r = collapse_probabilities(state, basis, 3);
      double total = 0.0;
      for (double p : r.probabilities) total += p;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  SUBCASE("oversized selection is a config error") {
    Tensor basis = Tensor::matrix({{1, 0}, {0, 1}});
    CHECK_THROWS_AS(collapse_probabilities(Tensor::from_values({1, 2}, {1, 0}), basis, 2), Error);
  }
}

TEST_CASE("index selection") {
  std::vector<std::size_t> top, bottom;
  SUBCASE("plain ordering") {
    select_indices({0.5, 0.3, 0.2}, 1, top, bottom);
    CHECK(top == std::vector<std::size_t>{0});
    CHECK(bottom == std::vector<std::size_t>{2});
  }
  SUBCASE("ties break toward the lowest index, sets stay disjoint") {
    select_indices({0.4, 0.4, 0.4}, 1, top, bottom);
    CHECK(top == std::vector<std::size_t>{0});
    CHECK(bottom == std::vector<std::size_t>{1});
  }
  SUBCASE("c = n/2 partitions every index") {
    select_indices({0.1, 0.9, 0.3, 0.7}, 2, top, bottom);
    std::vector<bool> seen(4, false);
    for (std::size_t i : top) seen[i] = true;
    for (std::size_t i : bottom) {
      CHECK_FALSE(seen[i]);
      seen[i] = true;
    }
    for (bool s : seen) CHECK(s);
  }
}

TEST_CASE("mixed-state projection") {
  Rng rng(23);
  SUBCASE("complete orthonormal selection is the identity") {
    Tensor basis = oracles::random_orthonormal(5, rng);
    Tensor state = oracles::random_unit(5, rng);
    MixedState m = project_mixed_state(state, basis, {0, 1, 2, 3, 4});
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(m.state.values()[i] == doctest::Approx(state.values()[i]).epsilon(1e-10));
    }
  }
  SUBCASE("single orthonormal row reproduces the scaled basis vector") {
    Tensor basis = oracles::random_orthonormal(4, rng);
    Tensor state = oracles::random_unit(4, rng);
    MixedState m = project_mixed_state(state, basis, {2});
    double amp = 0.0;
    for (std::size_t k = 0; k < 4; ++k) amp += basis.at(2, k) * state.values()[k];
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(m.state.values()[k] == doctest::Approx(amp * basis.at(2, k)).epsilon(1e-10));
    }
  }
  SUBCASE("empty selection yields the zero state with a warning flag") {
    Tensor basis = Tensor::matrix({{1, 0}, {0, 1}});
    MixedState m = project_mixed_state(Tensor::from_values({1, 2}, {1, 0}), basis, {});
    CHECK(m.empty_selection);
    for (double v : m.state.values()) CHECK(v == 0.0);
  }
  SUBCASE("term-by-term sum equals the summed-operator route") {
    // distributivity of the dot product, fuzzed
    for (int trial = 0; trial < 300; ++trial) {
      std::size_t dim = 2 + rng.next_index(6);
      std::size_t rows = 2 + rng.next_index(5);
      Tensor basis({rows, dim});
      for (double& v : basis.values()) v = rng.uniform(-1, 1);
      Tensor state = oracles::random_unit(dim, rng);
      std::vector<std::size_t> indices;
      for (std::size_t r = 0; r < rows; ++r) {
        if (rng.next_double() < 0.6) indices.push_back(r);
      }
      if (indices.empty()) indices.push_back(0);

      // term-by-term route
      std::vector<double> term_sum(dim, 0.0);
      for (std::size_t j : indices) {
        double amp = 0.0;
        for (std::size_t k = 0; k < dim; ++k) amp += basis.at(j, k) * state.values()[k];
        for (std::size_t k = 0; k < dim; ++k) term_sum[k] += amp * basis.at(j, k);
      }
      MixedState m = project_mixed_state(state, basis, indices);
      for (std::size_t k = 0; k < dim; ++k) {
        CHECK(std::fabs(m.state.values()[k] - term_sum[k]) < 1e-10);
      }
    }
  }
}

TEST_CASE("event operators") {
  Rng rng(31);
  SUBCASE("complete orthonormal sums to the identity") {
    Tensor basis = oracles::random_orthonormal(5, rng);
    Tensor op = event_operator(basis, {0, 1, 2, 3, 4});
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        CHECK(op.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
      }
    }
  }
  SUBCASE("single unit row gives an idempotent rank-1 projector") {
    Tensor basis = oracles::random_orthonormal(4, rng);
    Tensor op = event_operator(basis, {1});
    Tensor op2 = oracles::naive_matmul(op, op);
    for (std::size_t i = 0; i < op.size(); ++i) {
      CHECK(std::fabs(op2.values()[i] - op.values()[i]) < 1e-10);
    }
  }
  SUBCASE("outer product by hand") {
    Tensor basis = Tensor::matrix({{1, 0}});
    Tensor op = event_operator(basis, {0});
    CHECK(op.values() == std::vector<double>{1, 0, 0, 0});
  }
  SUBCASE("always symmetric") {
    Tensor basis({4, 3});
    for (double& v : basis.values()) v = rng.uniform(-2, 2);
    Tensor op = event_operator(basis, {0, 2, 3});
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) CHECK(op.at(i, j) == op.at(j, i));
    }
  }
}

TEST_CASE("interference values") {
  SUBCASE("empty complement mass gives zero") {
    Tensor identity = Tensor::identity(3);
    Tensor zero({3, 3});
    Rng rng(37);
    Tensor state = oracles::random_unit(3, rng);
    Tensor future = event_operator(oracles::random_orthonormal(3, rng), {0});
    CHECK(interference_value(state, identity, zero, future) == 0.0);
  }
  SUBCASE("hand-computed two-dimensional case") {
    Tensor past_basis = Tensor::matrix({{1, 0}, {0, 1}});
    Tensor o_past = event_operator(past_basis, {0});
    Tensor o_past_not = event_operator(past_basis, {1});
    double r2 = std::sqrt(2.0) / 2.0;
    Tensor future_basis = Tensor::matrix({{r2, r2}});
    Tensor o_future = event_operator(future_basis, {0});
    Tensor state = Tensor::from_values({1, 2}, {r2, r2});
    CHECK(interference_value(state, o_past, o_past_not, o_future) == doctest::Approx(0.5));
  }
  SUBCASE("decomposition identity over orthonormal complete splits") {
    // p(future) == |o_f o_p x|^2 + |o_f o_pn x|^2 + eta whenever the past
    // selections split an orthonormal basis exactly.
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t dim = 6;
      Tensor past_basis = oracles::random_orthonormal(dim, rng);
      Tensor future_basis = oracles::random_orthonormal(dim, rng);
      Tensor state = oracles::random_unit(dim, rng);
      Tensor o_past = event_operator(past_basis, {0, 1, 2});
      Tensor o_past_not = event_operator(past_basis, {3, 4, 5});
      Tensor o_future = event_operator(future_basis, {0, 1});

      auto apply = [&](const Tensor& op, const Tensor& v) {
        Tensor out({1, dim});
        for (std::size_t i = 0; i < dim; ++i) {
          double acc = 0.0;
          for (std::size_t j = 0; j < dim; ++j) acc += op.at(i, j) * v.values()[j];
          out.values()[i] = acc;
        }
        return out;
      };
      double p_future = std::pow(lin::norm(apply(o_future, state)), 2);
      double path_occur = std::pow(lin::norm(apply(o_future, apply(o_past, state))), 2);
      double path_not = std::pow(lin::norm(apply(o_future, apply(o_past_not, state))), 2);
      double eta = interference_value(state, o_past, o_past_not, o_future);
      CHECK(std::fabs(p_future - (path_occur + path_not + eta)) < 1e-9);
    }
  }
  SUBCASE("disjoint selections from one orthonormal basis never interfere") {
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
      Tensor basis = oracles::random_orthonormal(6, rng);
      Tensor state = oracles::random_unit(6, rng);
      Tensor o_past = event_operator(basis, {0, 1});
      Tensor o_past_not = event_operator(basis, {4, 5});
      Tensor o_future = event_operator(basis, {2, 3});
      CHECK(std::fabs(interference_value(state, o_past, o_past_not, o_future)) < 1e-12);
    }
  }
}

TEST_CASE("orthogonality penalty") {
  Rng rng(47);
  SUBCASE("orthonormal rows satisfy it exactly") {
    Tensor basis = oracles::random_orthonormal(5, rng);
    CHECK(orthogonality_penalty(basis) == doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("scaled identity hand case") {
    Tensor basis = Tensor::matrix({{2, 0}, {0, 2}});
    CHECK(orthogonality_penalty(basis) == doctest::Approx(3.0 * std::sqrt(2.0)));
  }
  SUBCASE("never negative") {
    for (int trial = 0; trial < 100; ++trial) {
      Tensor basis({3, 4});
      for (double& v : basis.values()) v = rng.uniform(-2, 2);
      CHECK(orthogonality_penalty(basis) >= 0.0);
    }
  }
}
