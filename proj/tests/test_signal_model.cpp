#include <doctest.h>

#include "srake/signal_model.hpp"
#include "test_support.hpp"

using namespace srake;
using srake::testing::brute_force_mai;
using srake::testing::random_instance;

TEST_CASE("collision indicator") {
  // Paths are 0-based here.
  CHECK(collides(0, 0, 2, 2));
  CHECK(collides(2, 0, 0, 2));
  CHECK_FALSE(collides(0, 4, 0, 0));
  CHECK_FALSE(collides(1, 0, 0, 0));
}

TEST_CASE("single user has no MAI") {
  const auto in = random_instance(1, 1, 6, 2);
  CHECK(in.signature.mai.rows() == 6);
  CHECK(in.signature.mai.cols() == 1);
  CHECK(in.signature.mai.isZero(0.0));
  CHECK(in.signature.alpha == in.scenario.taps[0]);
}

TEST_CASE("equal TH codes give diagonal collisions") {
  auto in = random_instance(2, 3, 5, 2);
  in.scenario.th_codes.assign(3, 1);
  const Signature sig = build_signature(in.config, in.scenario);
  for (int l = 0; l < 5; ++l) {
    CHECK(sig.mai(l, 0) == 0.0);
    for (int k = 1; k < 3; ++k) {
      CHECK(sig.mai(l, k) == in.scenario.polarities[0] * in.scenario.polarities[k] * in.scenario.taps[k][l]);
    }
  }
}

TEST_CASE("build_signature matches the triple-loop oracle") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto in = random_instance(seed, 3, 4, 2, 0.1, 4);
    const Eigen::MatrixXd oracle = brute_force_mai(in.scenario, 4);
    CHECK(in.signature.mai == oracle);
    CHECK(in.signature.mai.col(0).isZero(0.0));
  }
}

TEST_CASE("each MAI entry comes from at most one interferer path") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto in = random_instance(seed, 5, 15, 5, 0.1, 5);
    for (int l = 0; l < 15; ++l) {
      for (int k = 1; k < 5; ++k) {
        int hits = 0;
        for (int m = 0; m < 15; ++m) hits += collides(in.scenario.th_codes[0], in.scenario.th_codes[k], l, m);
        CHECK(hits <= 1);
      }
    }
  }
}

TEST_CASE("interferer polarity flip negates its column and keeps the MAI Gram matrix") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto in = random_instance(seed, 4, 8, 3, 0.1, 4);
    Scenario flipped = in.scenario;
    flipped.polarities[2] = -flipped.polarities[2];
    const Signature sig = build_signature(in.config, flipped);
    CHECK(sig.mai.col(2) == -in.signature.mai.col(2));
    CHECK(sig.mai.col(1) == in.signature.mai.col(1));
    const Eigen::VectorXd e = in.config.energy_vector();
    const Eigen::MatrixXd g0 = in.signature.mai * e.asDiagonal() * in.signature.mai.transpose();
    const Eigen::MatrixXd g1 = sig.mai * e.asDiagonal() * sig.mai.transpose();
    CHECK((g0 - g1).norm() == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("build_signature is deterministic") {
  const auto in = random_instance(8, 3, 6, 2);
  CHECK(build_signature(in.config, in.scenario).mai == in.signature.mai);
}

TEST_CASE("build_signature rejects mismatched scenarios") {
  auto in = random_instance(3, 3, 6, 2);
  Scenario bad = in.scenario;
  bad.taps.pop_back();
  CHECK_THROWS_AS(build_signature(in.config, bad), std::invalid_argument);
  bad = in.scenario;
  bad.taps[1].resize(5);
  CHECK_THROWS_AS(build_signature(in.config, bad), std::invalid_argument);
}
