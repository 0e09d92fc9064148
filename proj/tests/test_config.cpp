#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "srake/config.hpp"

using namespace srake;

namespace {

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(SRAKE_CONFIG_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("reference configs parse") {
  const ExperimentSpec fig2 = load_spec(std::string(SRAKE_CONFIG_DIR) + "/fig2.cfg");
  CHECK(fig2.base.num_users == 5);
  CHECK(fig2.base.num_paths == 15);
  CHECK(fig2.base.num_fingers == 5);
  CHECK(fig2.base.chips_per_frame == 20);
  CHECK(fig2.base.th_alphabet == 5);
  CHECK(fig2.ga.n_ipop == 32);
  CHECK(fig2.ga.n_pop == 16);
  CHECK(fig2.ga.n_good == 8);
  CHECK(fig2.ga.n_mut == 8);
  CHECK(fig2.ga.n_iter == 10);
  CHECK(fig2.grid == std::vector<double>{0, 4, 8, 12, 16, 20});
  CHECK(fig2.algorithms.size() == 3);

  const ExperimentSpec fig3 = load_spec(std::string(SRAKE_CONFIG_DIR) + "/fig3.cfg");
  CHECK(fig3.axis == SweepAxis::fingers);
  CHECK(fig3.base.num_paths == 50);
  CHECK(fig3.base.chips_per_frame == 75);
  CHECK(fig3.ebn0_db == 20.0);
  CHECK(fig3.ga.n_ipop == 128);
  CHECK(fig3.profile == EnergyProfile::equal);

  const ExperimentSpec fig4 = load_spec(std::string(SRAKE_CONFIG_DIR) + "/fig4.cfg");
  CHECK(fig4.profile == EnergyProfile::near_far);
  CHECK(fig4.config_at(0).energies == std::vector<double>{1, 10, 10, 10, 10});
}

TEST_CASE("config round-trips through its text form") {
  for (const char* name : {"fig2.cfg", "fig3.cfg", "fig4.cfg"}) {
    const ExperimentSpec spec = parse_spec(read_file(name));
    CHECK(parse_spec(to_config_text(spec)) == spec);
  }
}

TEST_CASE("config rejects the no-IFI violation") {
  const std::string text = replace(read_file("fig2.cfg"), "th_alphabet: auto", "th_alphabet: 6");
  try {
    parse_spec(text);
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("no-IFI") != std::string::npos);
    CHECK(e.line() > 0);
  }
}

TEST_CASE("config rejects a population that is not twice the parent count") {
  const std::string text = replace(read_file("fig2.cfg"), "population: 16", "population: 20");
  CHECK_THROWS_WITH_AS(parse_spec(text), doctest::Contains("2 * parents"), ConfigError);
}

TEST_CASE("config rejects unknown keys with their position") {
  const std::string text = replace(read_file("fig2.cfg"), "  decay: 0.1", "  decay: 0.1\n  decya: 0.2");
  try {
    parse_spec(text);
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("system.decya") != std::string::npos);
    CHECK(e.line() == 10);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_spec(read_file("fig2.cfg") + "extra:\n  a: 1\n"), ConfigError);
}

TEST_CASE("config type errors are positioned") {
  const std::string text = replace(read_file("fig2.cfg"), "users: 5", "users: five");
  try {
    parse_spec(text);
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("system.users") != std::string::npos);
    CHECK(e.line() == 4);
  }
}

TEST_CASE("config misc validation") {
  const std::string fig2 = read_file("fig2.cfg");
  CHECK_THROWS_AS(parse_spec(replace(fig2, "[conventional, ga, exhaustive]", "[conventional, magic]")), ConfigError);
  CHECK_THROWS_AS(parse_spec(replace(fig2, "realizations: 500", "realizations: 0")), ConfigError);
  CHECK_THROWS_AS(parse_spec(replace(fig2, "axis: ebn0_db", "axis: bandwidth")), ConfigError);
  CHECK_THROWS_AS(parse_spec("system: [1, 2"), ConfigError);
  CHECK_THROWS_AS(load_spec("/nonexistent/x.cfg"), ConfigError);
  // Empty algorithm list is allowed.
  CHECK(parse_spec(replace(fig2, "[conventional, ga, exhaustive]", "[]")).algorithms.empty());

  const std::string fig3 = read_file("fig3.cfg");
  CHECK_THROWS_AS(parse_spec(replace(fig3, "[2, 3, 4,", "[1, 2, 3, 4,")), ConfigError);  // C(50,1) < 128
  CHECK_THROWS_AS(parse_spec(replace(fig3, "[2, 3, 4,", "[2.5, 3, 4,")), ConfigError);
}
