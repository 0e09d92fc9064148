#include <doctest.h>

#include <cmath>
#include <sstream>

#include "srake/config.hpp"
#include "srake/harness.hpp"

using namespace srake;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.base.num_users = 3;
  s.base.num_paths = 10;
  s.base.num_fingers = 3;
  s.base.chips_per_frame = 14;
  s.base.decay = 0.1;
  s.base.log_variance = 0.5;
  s.base.energies = {1.0, 1.0, 1.0};
  s.axis = SweepAxis::ebn0_db;
  s.grid = {5.0, 15.0};
  s.algorithms = {Algorithm::conventional, Algorithm::ga, Algorithm::exhaustive};
  s.ga.n_ipop = 32;
  s.ga.n_pop = 16;
  s.ga.n_good = 8;
  s.ga.n_mut = 8;
  s.ga.n_iter = 10;
  s.realizations = 20;
  s.seed = 99;
  return s;
}

}  // namespace

TEST_CASE("config_at maps Eb/N0 and energy profile") {
  ExperimentSpec s = small_spec();
  SystemConfig c = s.config_at(1);
  CHECK(c.noise_var == doctest::Approx(std::pow(10.0, -1.5)).epsilon(1e-15));
  CHECK(c.th_alphabet == 4);
  CHECK(c.energies == std::vector<double>{1, 1, 1});
  s.profile = EnergyProfile::near_far;
  s.interferer_boost_db = 10.0;
  c = s.config_at(0);
  CHECK(c.energies[0] == 1.0);
  CHECK(c.energies[1] == doctest::Approx(10.0).epsilon(1e-15));

  s.axis = SweepAxis::fingers;
  s.grid = {2, 4};
  s.ebn0_db = 20.0;
  c = s.config_at(1);
  CHECK(c.num_fingers == 4);
  CHECK(c.noise_var == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("single user: every selector agrees with the matched filter") {
  ExperimentSpec s = small_spec();
  s.base.num_users = 1;
  s.base.energies = {1.0};
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto out = run_realization(s, 0, r);
    const SystemConfig cfg = s.config_at(0);
    const Scenario sc = make_scenario(cfg, s.seed, r);
    std::vector<double> e2;
    for (int l = 0; l < 10; ++l) e2.push_back(sc.taps[0][l] * sc.taps[0][l]);
    std::sort(e2.rbegin(), e2.rend());
    const double expected = (e2[0] + e2[1] + e2[2]) / cfg.noise_var;
    for (const auto& sel : out.selections) {
      REQUIRE(sel.has_value());
      CHECK(sel->sinr == doctest::Approx(expected).epsilon(1e-12));
      CHECK(sel->assignment == out.selections[0]->assignment);
    }
  }
}

TEST_CASE("run_realization is deterministic and sandwiched") {
  const ExperimentSpec s = small_spec();
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto a = run_realization(s, 1, r);
    const auto b = run_realization(s, 1, r);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a.selections[i]->assignment == b.selections[i]->assignment);
      CHECK(a.selections[i]->sinr == b.selections[i]->sinr);
    }
    CHECK(a.selections[0]->sinr <= a.selections[1]->sinr);
    CHECK(a.selections[1]->sinr <= a.selections[2]->sinr);
  }
}

TEST_CASE("run_sweep is independent of the worker count") {
  const ExperimentSpec s = small_spec();
  const SweepResult one = run_sweep(s, 1);
  const SweepResult four = run_sweep(s, 4);
  REQUIRE(one.points.size() == 2);
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t a = 0; a < 3; ++a) {
      CHECK(one.points[p].stats[a].samples == four.points[p].stats[a].samples);
      CHECK(one.points[p].stats[a].mean_linear == four.points[p].stats[a].mean_linear);
      CHECK(one.points[p].stats[a].std_error == four.points[p].stats[a].std_error);
    }
  }
}

TEST_CASE("sweep statistics") {
  ExperimentSpec s = small_spec();
  const SweepResult res = run_sweep(s);
  for (const auto& p : res.points) {
    const auto* conv = p.find(Algorithm::conventional);
    const auto* ga = p.find(Algorithm::ga);
    const auto* ex = p.find(Algorithm::exhaustive);
    REQUIRE(conv);
    REQUIRE(ga);
    REQUIRE(ex);
    CHECK(ex->mean_evals == 120.0);  // C(10, 3)
    CHECK(ga->mean_evals <= 192.0);
    for (const auto* st : {conv, ga, ex}) {
      CHECK(st->mean_db == 10.0 * std::log10(st->mean_linear));
      CHECK(st->std_error >= 0.0);
      CHECK(st->realizations == 20);
    }
    CHECK(conv->mean_linear <= ga->mean_linear);
    CHECK(ga->mean_linear <= ex->mean_linear);
  }

  s.realizations = 1;
  const SweepResult a = run_sweep(s);
  const SweepResult b = run_sweep(s);
  CHECK(a.points[0].stats[1].mean_linear == b.points[0].stats[1].mean_linear);
  CHECK(a.points[0].stats[1].std_error == 0.0);

  s.averaging = Averaging::db;
  s.realizations = 20;
  const SweepResult db = run_sweep(s);
  const auto& st = db.points[0].stats[0];
  double mean_db = 0.0;
  for (double v : st.samples) mean_db += 10.0 * std::log10(v) / 20.0;
  CHECK(st.mean_db == doctest::Approx(mean_db).epsilon(1e-14));
  CHECK(st.mean_db == doctest::Approx(10.0 * std::log10(st.mean_linear)).epsilon(1e-14));
}

TEST_CASE("exhaustive is skipped above the enumeration cap") {
  ExperimentSpec s = small_spec();
  s.enumeration_cap = 100;  // C(10, 3) = 120
  s.realizations = 3;
  const SweepResult res = run_sweep(s);
  CHECK(res.points[0].find(Algorithm::exhaustive)->skipped);
  CHECK_FALSE(res.points[0].find(Algorithm::ga)->skipped);
  std::ostringstream out;
  emit(res, out);
  CHECK(out.str().find("# skipped: exhaustive") != std::string::npos);
  std::istringstream in(out.str());
  CHECK(read_csv(in).size() == 4);
}

TEST_CASE("emit") {
  SUBCASE("no algorithms gives a header-only table") {
    ExperimentSpec s = small_spec();
    s.algorithms.clear();
    s.realizations = 2;
    std::ostringstream out;
    emit(run_sweep(s), out);
    CHECK(out.str().find("sweep_value,algorithm,") != std::string::npos);
    std::istringstream in(out.str());
    CHECK(read_csv(in).empty());
  }
  SUBCASE("round trip is exact") {
    ExperimentSpec s = load_spec(std::string(SRAKE_CONFIG_DIR) + "/fig2.cfg");
    s.realizations = 5;
    const SweepResult res = run_sweep(s);
    std::ostringstream out;
    emit(res, out);
    const std::string text = out.str();
    CHECK(text.find("# seed: 2005") != std::string::npos);
    CHECK(text.find("#   system:") != std::string::npos);
    std::istringstream in(text);
    const auto rows = read_csv(in);
    REQUIRE(rows.size() == 3 * 6);
    std::size_t i = 0;
    for (const auto& p : res.points) {
      for (const auto& st : p.stats) {
        const CsvRow& row = rows[i++];
        CHECK(row.sweep_value == p.value);
        CHECK(row.algorithm == to_string(st.algorithm));
        CHECK(row.mean_db == st.mean_db);
        CHECK(row.mean_linear == st.mean_linear);
        CHECK(row.std_error == st.std_error);
        CHECK(row.mean_evals == st.mean_evals);
        CHECK(row.realizations == 5);
      }
    }
  }
  SUBCASE("I/O errors name the path") {
    ExperimentSpec s = small_spec();
    s.realizations = 1;
    CHECK_THROWS_WITH(emit(run_sweep(s), std::filesystem::path("/nonexistent-dir/out.csv")),
                      doctest::Contains("/nonexistent-dir/out.csv"));
  }
}
