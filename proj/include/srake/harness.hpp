#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srake/channel.hpp"
#include "srake/selectors.hpp"

namespace srake {

enum class Algorithm { conventional, ga, exhaustive };
enum class SweepAxis { ebn0_db, fingers };
enum class EnergyProfile { equal, near_far };
enum class Averaging { linear, db };

std::string_view to_string(Algorithm a);
std::string_view to_string(SweepAxis a);
std::string_view to_string(EnergyProfile p);
std::string_view to_string(Averaging a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

/// One Monte Carlo study: a base system, a sweep over either Eb/N0 or the
/// finger count, the algorithms to compare and the GA settings.
///
/// Eb/N0 maps to noise as noise_var = E_1 * 10^(-ebn0_db / 10). For the
/// near-far profile the interferers get E_1 * 10^(interferer_boost_db / 10).
struct ExperimentSpec {
  SystemConfig base;
  bool th_alphabet_auto = true;  // N_T = N_c - L at every sweep point
  SweepAxis axis = SweepAxis::ebn0_db;
  std::vector<double> grid;
  double ebn0_db = 20.0;  // fixed value when sweeping fingers
  EnergyProfile profile = EnergyProfile::equal;
  double interferer_boost_db = 10.0;
  std::vector<Algorithm> algorithms;
  GaParams ga;
  int realizations = 500;
  std::uint64_t seed = 1;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  Averaging averaging = Averaging::linear;

  /// Resolved system configuration at one grid point.
  SystemConfig config_at(std::size_t point) const;
  /// Throws std::invalid_argument for any violated invariant.
  void validate() const;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

struct AlgorithmStats {
  Algorithm algorithm = Algorithm::conventional;
  bool skipped = false;
  double mean_linear = 0.0;
  double mean_db = 0.0;
  double std_error = 0.0;  // of the linear mean
  double mean_evals = 0.0;
  int realizations = 0;
  std::vector<double> samples;  // per-realization linear SINR, index order
};

struct SweepPoint {
  double value = 0.0;
  std::vector<AlgorithmStats> stats;  // same order as spec.algorithms

  const AlgorithmStats* find(Algorithm a) const;
};

struct SweepResult {
  ExperimentSpec spec;
  std::vector<SweepPoint> points;
  double elapsed_seconds = 0.0;
};

/// Per-algorithm outcome of one realization; nullopt when skipped.
struct RealizationOutcome {
  std::vector<std::optional<Selection>> selections;  // same order as spec.algorithms
};

/// One channel/code draw (keyed by seed and realization index only, so every
/// grid point and algorithm sees the same scenario) run through every
/// requested selector.
RealizationOutcome run_realization(const ExperimentSpec& spec, std::size_t point, std::uint64_t realization);

/// Runs every grid point over spec.realizations realizations using `jobs`
/// worker threads. Results do not depend on `jobs`.
SweepResult run_sweep(const ExperimentSpec& spec, int jobs = 1);

/// Writes the CSV table with a '#'-prefixed metadata header. Throws
/// std::runtime_error naming the path on I/O failure.
void emit(const SweepResult& result, const std::filesystem::path& path);
void emit(const SweepResult& result, std::ostream& out);

/// One data row of an emitted CSV.
struct CsvRow {
  double sweep_value = 0.0;
  std::string algorithm;
  double mean_db = 0.0;
  double mean_linear = 0.0;
  double std_error = 0.0;
  double mean_evals = 0.0;
  int realizations = 0;
};

std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace srake
