#pragma once

#include <Eigen/Core>

#include "srake/channel.hpp"

namespace srake {

/// Desired-user taps and the L x K multiple-access interference matrix. Row l
/// is the MAI signature seen by finger l; column 0 (desired user) is zero.
struct Signature {
  Eigen::VectorXd alpha;  // desired user's taps
  Eigen::MatrixXd mai;

  int num_paths() const { return static_cast<int>(alpha.size()); }
  int num_users() const { return static_cast<int>(mai.cols()); }
};

/// True when path `other_path` of a user with TH code `other_code` lands on
/// the same chip as path `path` of the desired user (code `desired_code`).
/// Paths are 0-based.
constexpr bool collides(int desired_code, int other_code, int path, int other_path) {
  return desired_code + path == other_code + other_path;
}

/// Builds alpha and S^(MAI) from a scenario. Throws std::invalid_argument on
/// a dimension mismatch with the config.
Signature build_signature(const SystemConfig& config, const Scenario& scenario);

}  // namespace srake
