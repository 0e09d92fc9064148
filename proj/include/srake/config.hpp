#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "srake/harness.hpp"

namespace srake {

/// Config rejection with a 1-based source position when one is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses and fully validates an experiment config (YAML syntax). Unknown keys
/// are rejected.
ExperimentSpec parse_spec(const std::string& config_text);
ExperimentSpec load_spec(const std::filesystem::path& path);

/// Serializes a spec back to config syntax; parse_spec(to_config_text(s))
/// reproduces s.
std::string to_config_text(const ExperimentSpec& spec);

}  // namespace srake
