#include "srake/channel.hpp"

#include <cmath>
#include <sstream>

namespace srake {

namespace {

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

void SystemConfig::validate() const {
  if (num_users < 1) reject("users must be >= 1");
  if (num_paths < 1) reject("paths must be >= 1");
  if (num_fingers < 1 || num_fingers > num_paths) reject("fingers must satisfy 1 <= fingers <= paths");
  if (th_alphabet < 1) reject("th_alphabet must be >= 1");
  if (th_alphabet > chips_per_frame - num_paths) {
    std::ostringstream os;
    os << "no-IFI constraint violated: th_alphabet (" << th_alphabet << ") must not exceed chips_per_frame - paths ("
       << chips_per_frame - num_paths << ")";
    reject(os.str());
  }
  if (static_cast<int>(energies.size()) != num_users) reject("energies must have one entry per user");
  for (double e : energies) {
    if (!(e > 0.0) || !std::isfinite(e)) reject("energies must be finite and strictly positive");
  }
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) reject("noise_var must be finite and strictly positive");
  if (!(decay >= 0.0) || !std::isfinite(decay)) reject("decay must be finite and >= 0");
  if (!(log_variance >= 0.0) || !std::isfinite(log_variance)) reject("log_variance must be finite and >= 0");
}

double path_energy(int path, double decay, int num_paths) {
  if (num_paths < 1 || path < 0 || path >= num_paths) throw std::out_of_range("path index out of range");
  if (decay == 0.0) return 1.0 / num_paths;
  // expm1 keeps Omega_0 accurate for small decay factors.
  const double omega0 = std::expm1(-decay) / std::expm1(-decay * num_paths);
  return omega0 * std::exp(-decay * path);
}

double mean_profile(int path, double decay, double log_variance, int num_paths) {
  return 0.5 * (std::log(path_energy(path, decay, num_paths)) - 2.0 * log_variance);
}

Eigen::VectorXd gen_channel(const SystemConfig& config, Rng& rng) {
  const int n = config.num_paths;
  const double sigma = std::sqrt(config.log_variance);
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd taps(n);
  for (int l = 0; l < n; ++l) {
    const double sign = coin(rng) ? 1.0 : -1.0;
    const double log_mag = mean_profile(l, config.decay, config.log_variance, n) + sigma * gauss(rng);
    taps[l] = sign * std::exp(log_mag);
  }
  return taps;
}

UserCodes gen_codes(const SystemConfig& config, Rng& rng) {
  std::uniform_int_distribution<int> th(0, config.th_alphabet - 1);
  std::bernoulli_distribution coin(0.5);
  UserCodes codes;
  codes.th_codes.reserve(config.num_users);
  codes.polarities.reserve(config.num_users);
  for (int k = 0; k < config.num_users; ++k) {
    codes.th_codes.push_back(th(rng));
    codes.polarities.push_back(coin(rng) ? 1 : -1);
  }
  return codes;
}

Scenario make_scenario(const SystemConfig& config, std::uint64_t master_seed, std::uint64_t realization) {
  Rng tap_rng = make_stream(master_seed, realization, Stream::taps);
  Rng code_rng = make_stream(master_seed, realization, Stream::codes);
  Scenario s;
  s.taps.reserve(config.num_users);
  for (int k = 0; k < config.num_users; ++k) s.taps.push_back(gen_channel(config, tap_rng));
  UserCodes codes = gen_codes(config, code_rng);
  s.th_codes = std::move(codes.th_codes);
  s.polarities = std::move(codes.polarities);
  return s;
}

}  // namespace srake
