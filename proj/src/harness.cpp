#include "srake/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "srake/config.hpp"
#include "srake/signal_model.hpp"

namespace srake {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::conventional: return "conventional";
    case Algorithm::ga: return "ga";
    case Algorithm::exhaustive: return "exhaustive";
  }
  return "?";
}

std::string_view to_string(SweepAxis a) { return a == SweepAxis::ebn0_db ? "ebn0_db" : "fingers"; }
std::string_view to_string(EnergyProfile p) { return p == EnergyProfile::equal ? "equal" : "near_far"; }
std::string_view to_string(Averaging a) { return a == Averaging::linear ? "linear" : "db"; }

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (Algorithm a : {Algorithm::conventional, Algorithm::ga, Algorithm::exhaustive}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

SystemConfig ExperimentSpec::config_at(std::size_t point) const {
  SystemConfig cfg = base;
  const double value = grid.at(point);
  const double ebn0 = axis == SweepAxis::ebn0_db ? value : ebn0_db;
  if (axis == SweepAxis::fingers) cfg.num_fingers = static_cast<int>(std::lround(value));
  if (th_alphabet_auto) cfg.th_alphabet = cfg.chips_per_frame - cfg.num_paths;

  const double desired = base.energies.empty() ? 1.0 : base.energies.front();
  const double others = profile == EnergyProfile::equal ? desired : desired * std::pow(10.0, interferer_boost_db / 10.0);
  cfg.energies.assign(cfg.num_users, others);
  cfg.energies.front() = desired;
  cfg.noise_var = desired * std::pow(10.0, -ebn0 / 10.0);
  return cfg;
}

void ExperimentSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("sweep grid must not be empty");
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  if (base.energies.empty() || !(base.energies.front() > 0.0)) {
    throw std::invalid_argument("desired user energy must be strictly positive");
  }
  if (!std::isfinite(interferer_boost_db)) throw std::invalid_argument("interferer_boost_db must be finite");
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
      if (algorithms[i] == algorithms[j]) throw std::invalid_argument("algorithm listed twice");
    }
  }
  const bool with_ga = std::find(algorithms.begin(), algorithms.end(), Algorithm::ga) != algorithms.end();
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (!std::isfinite(grid[p])) throw std::invalid_argument("sweep values must be finite");
    if (axis == SweepAxis::fingers && grid[p] != std::round(grid[p])) {
      throw std::invalid_argument("finger-count sweep values must be integers");
    }
    const SystemConfig cfg = config_at(p);
    cfg.validate();
    if (with_ga) ga.validate(cfg.num_paths, cfg.num_fingers);
  }
}

const AlgorithmStats* SweepPoint::find(Algorithm a) const {
  for (const auto& s : stats) {
    if (s.algorithm == a) return &s;
  }
  return nullptr;
}

RealizationOutcome run_realization(const ExperimentSpec& spec, std::size_t point, std::uint64_t realization) {
  const SystemConfig cfg = spec.config_at(point);
  const Scenario scenario = make_scenario(cfg, spec.seed, realization);
  const Signature sig = build_signature(cfg, scenario);
  const SinrObjective objective(sig, cfg.energy_vector(), cfg.noise_var);

  RealizationOutcome out;
  out.selections.reserve(spec.algorithms.size());
  for (Algorithm alg : spec.algorithms) {
    switch (alg) {
      case Algorithm::conventional: {
        Assignment a = conventional_select(objective, cfg.num_fingers);
        const double s = objective(a);
        out.selections.emplace_back(Selection{std::move(a), s, 1});
        break;
      }
      case Algorithm::ga: {
        GaParams params = spec.ga;
        params.seed = derive_seed(spec.seed, realization, Stream::ga, point);
        out.selections.emplace_back(ga_select(objective, cfg.num_fingers, params));
        break;
      }
      case Algorithm::exhaustive:
        if (binomial(cfg.num_paths, cfg.num_fingers) > spec.enumeration_cap) {
          out.selections.emplace_back(std::nullopt);
        } else {
          out.selections.emplace_back(exhaustive_select(objective, cfg.num_fingers, spec.enumeration_cap));
        }
        break;
    }
  }
  return out;
}

namespace {

AlgorithmStats summarize(Algorithm alg, const std::vector<double>& samples, double eval_sum, Averaging averaging) {
  AlgorithmStats st;
  st.algorithm = alg;
  st.realizations = static_cast<int>(samples.size());
  st.samples = samples;
  const double n = static_cast<double>(samples.size());

  std::vector<double> values = samples;
  if (averaging == Averaging::db) {
    for (double& v : values) v = 10.0 * std::log10(v);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  st.std_error = samples.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;

  if (averaging == Averaging::linear) {
    st.mean_linear = mean;
    st.mean_db = 10.0 * std::log10(mean);
  } else {
    st.mean_db = mean;
    st.mean_linear = std::pow(10.0, mean / 10.0);
  }
  st.mean_evals = eval_sum / n;
  return st;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::runtime_error("bad number in CSV: " + std::string(s));
  return v;
}

constexpr std::string_view kCsvHeader = "sweep_value,algorithm,mean_db,mean_linear,std_error,mean_evals,realizations";

}  // namespace

SweepResult run_sweep(const ExperimentSpec& spec, int jobs) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n_points = spec.grid.size();
  const std::size_t n_real = static_cast<std::size_t>(spec.realizations);

  for (std::size_t p = 0; p < n_points; ++p) {
    const SystemConfig cfg = spec.config_at(p);
    const bool wants_exhaustive =
        std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::exhaustive) != spec.algorithms.end();
    if (wants_exhaustive && binomial(cfg.num_paths, cfg.num_fingers) > spec.enumeration_cap) {
      spdlog::info("exhaustive search skipped at {} = {}: C({}, {}) exceeds the enumeration cap of {}",
                   to_string(spec.axis), spec.grid[p], cfg.num_paths, cfg.num_fingers, spec.enumeration_cap);
    }
  }

  std::vector<RealizationOutcome> outcomes(n_points * n_real);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t task = next++; task < outcomes.size(); task = next++) {
      outcomes[task] = run_realization(spec, task / n_real, task % n_real);
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(outcomes.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  SweepResult result;
  result.spec = spec;
  for (std::size_t p = 0; p < n_points; ++p) {
    SweepPoint sp;
    sp.value = spec.grid[p];
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      std::vector<double> samples;
      double evals = 0.0;
      bool skipped = false;
      for (std::size_t r = 0; r < n_real; ++r) {
        const auto& sel = outcomes[p * n_real + r].selections[a];
        if (!sel) {
          skipped = true;
          break;
        }
        samples.push_back(sel->sinr);
        evals += static_cast<double>(sel->eval_count);
      }
      if (skipped) {
        AlgorithmStats st;
        st.algorithm = spec.algorithms[a];
        st.skipped = true;
        sp.stats.push_back(std::move(st));
      } else {
        sp.stats.push_back(summarize(spec.algorithms[a], samples, evals, spec.averaging));
      }
    }
    result.points.push_back(std::move(sp));
  }
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void emit(const SweepResult& result, std::ostream& out) {
  const ExperimentSpec& spec = result.spec;
  out << "# srake finger-selection sweep\n";
  out << "# seed: " << spec.seed << "\n";
  out << "# realizations: " << spec.realizations << "\n";
  out << "# ebn0_mapping: noise_var = E_1 * 10^(-EbN0_dB/10)\n";
  out << "# averaging: " << to_string(spec.averaging)
      << (spec.averaging == Averaging::linear ? " (mean of linear SINR, reported in dB as 10*log10 of the mean)"
                                               : " (mean of per-realization dB values)")
      << "\n";
  out << "# elapsed_seconds: " << format_double(result.elapsed_seconds) << "\n";
  for (const auto& p : result.points) {
    for (const auto& s : p.stats) {
      if (s.skipped) {
        out << "# skipped: " << to_string(s.algorithm) << " at " << to_string(spec.axis) << " = "
            << format_double(p.value) << " (enumeration cap " << spec.enumeration_cap << ")\n";
      }
    }
  }
  out << "# config:\n";
  std::istringstream cfg(to_config_text(spec));
  for (std::string line; std::getline(cfg, line);) out << "#   " << line << "\n";
  out << kCsvHeader << "\n";
  for (const auto& p : result.points) {
    for (const auto& s : p.stats) {
      if (s.skipped) continue;
      out << format_double(p.value) << ',' << to_string(s.algorithm) << ',' << format_double(s.mean_db) << ','
          << format_double(s.mean_linear) << ',' << format_double(s.std_error) << ',' << format_double(s.mean_evals)
          << ',' << s.realizations << "\n";
    }
  }
}

void emit(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit(result, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::vector<CsvRow> rows;
  bool header_seen = false;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      f.push_back(rest.substr(0, pos));
    }
    f.push_back(rest);
    if (f.size() != 7) throw std::runtime_error("CSV row needs 7 fields: " + line);
    CsvRow row;
    row.sweep_value = parse_double(f[0]);
    row.algorithm = std::string(f[1]);
    row.mean_db = parse_double(f[2]);
    row.mean_linear = parse_double(f[3]);
    row.std_error = parse_double(f[4]);
    row.mean_evals = parse_double(f[5]);
    row.realizations = static_cast<int>(parse_double(f[6]));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace srake
