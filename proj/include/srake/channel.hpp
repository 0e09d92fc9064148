#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "srake/rng.hpp"

namespace srake {

/// Scenario constants for one synchronous single-frame IR-UWB link.
///
/// User 0 is the desired user. Paths are tap-spaced (one chip apart) and
/// time-hopping codes live in {0, ..., th_alphabet - 1}.
struct SystemConfig {
  int num_users = 1;        // K
  int num_paths = 1;        // L
  int num_fingers = 1;      // M
  int chips_per_frame = 2;  // N_c
  int th_alphabet = 1;      // N_T, at most N_c - L so frames never overlap
  std::vector<double> energies{1.0};
  double noise_var = 1.0;
  double decay = 0.0;         // lambda
  double log_variance = 0.0;  // sigma^2 of ln|alpha|

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;

  Eigen::VectorXd energy_vector() const {
    return Eigen::Map<const Eigen::VectorXd>(energies.data(), static_cast<Eigen::Index>(energies.size()));
  }
};

/// One random draw of every user's channel and codes.
struct Scenario {
  std::vector<Eigen::VectorXd> taps;  // K vectors of length L
  std::vector<int> th_codes;          // one per user
  std::vector<int> polarities;        // one per user, +1 or -1
};

struct UserCodes {
  std::vector<int> th_codes;
  std::vector<int> polarities;
};

/// Normalized mean tap energy E{|alpha_l|^2} = Omega_0 exp(-decay * l) for a
/// 0-based path index. The profile sums to one over all paths; decay == 0 is
/// the uniform profile 1/L.
double path_energy(int path, double decay, int num_paths);

/// Location parameter mu_l of the lognormal tap magnitude for a 0-based path,
/// chosen so that E{|alpha_l|^2} = path_energy(path).
double mean_profile(int path, double decay, double log_variance, int num_paths);

/// One user's tap vector: independent equiprobable signs times lognormal
/// magnitudes following mean_profile.
Eigen::VectorXd gen_channel(const SystemConfig& config, Rng& rng);

/// Uniform TH codes on the alphabet and equiprobable polarities, one per user.
UserCodes gen_codes(const SystemConfig& config, Rng& rng);

/// Full scenario for one realization. Taps and codes come from separate
/// sub-streams of the master seed.
Scenario make_scenario(const SystemConfig& config, std::uint64_t master_seed, std::uint64_t realization);

}  // namespace srake
