#include "srake/signal_model.hpp"

#include <stdexcept>

namespace srake {

Signature build_signature(const SystemConfig& config, const Scenario& scenario) {
  const int users = config.num_users;
  const int paths = config.num_paths;
  if (static_cast<int>(scenario.taps.size()) != users || static_cast<int>(scenario.th_codes.size()) != users ||
      static_cast<int>(scenario.polarities.size()) != users) {
    throw std::invalid_argument("scenario user count does not match config");
  }
  for (const auto& t : scenario.taps) {
    if (t.size() != paths) throw std::invalid_argument("scenario tap vector length does not match config paths");
  }

  Signature sig;
  sig.alpha = scenario.taps[0];
  sig.mai = Eigen::MatrixXd::Zero(paths, users);

  const int c1 = scenario.th_codes[0];
  for (int k = 1; k < users; ++k) {
    const double sign = static_cast<double>(scenario.polarities[0] * scenario.polarities[k]);
    const int ck = scenario.th_codes[k];
    for (int l = 0; l < paths; ++l) {
      // At most one path of user k can share the chip of desired path l.
      const int m = c1 + l - ck;
      if (m >= 0 && m < paths) sig.mai(l, k) = sign * scenario.taps[k][m];
    }
  }
  return sig;
}

}  // namespace srake
