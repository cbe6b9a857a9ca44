#pragma once

#include <map>
#include <string>
#include <vector>

#include "exadam/harness.hpp"

namespace exadam {

/// Flat sections of key = value pairs ([problem], [optimizer], [scheduler],
/// [run], [compare]); `#` and `;` start comments, values may be quoted.
struct ParsedConfig {
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
};

ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

/// Builds a single-run config. Optimizer hyperparameters start from the
/// published defaults for the named optimizer; present keys override.
ExperimentConfig experiment_from_config(const ParsedConfig& cfg);

/// Builds a sweep: one ExperimentConfig per name in [compare] optimizers,
/// sharing everything else.
std::vector<ExperimentConfig> sweep_from_config(const ParsedConfig& cfg);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a truncated file.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace exadam
