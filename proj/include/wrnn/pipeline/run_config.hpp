#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wrnn/pipeline/training.hpp"

namespace wrnn::pipeline {

/// Flat key=value run configuration. Unknown keys are rejected.
struct RunConfig {
  std::string family = "bior3.7";
  int levels = 0;  ///< 0 selects J from the horizon
  int horizon_steps = 288;
  double eta = 0.001;
  double beta = 1.0;
  double clip = 1.0;
  int max_epochs = 5000;
  int patience = 200;
  std::uint64_t seed = 1;
  double train_fraction = 0.70;
  double validation_fraction = 0.15;
  double test_fraction = 0.15;
  std::vector<int> hidden{16, 16};
  bool hidden_from_family = false;
  std::string resample = "none";  ///< none, linear or mean
  std::string irradiance_csv;
  std::string temperature_csv;
  std::string humidity_csv;
  std::string wind_csv;
  int synth_days = 60;
  std::uint64_t synth_seed = 1;

  /// Sets one key. Throws UnknownKey or InvalidArgument.
  void set(std::string_view key, std::string_view value);
  /// Parses "key=value" (used for command line overrides).
  void apply(std::string_view assignment);
  /// All keys in canonical order with their current values.
  std::vector<std::pair<std::string, std::string>> entries() const;
  std::string to_text() const;

  TrainOptions train_options() const;
  /// Hidden sizes actually used for a family.
  std::vector<int> hidden_for(std::string_view family_name) const;
};

/// Parses the file format: one key=value per line, '#' comments, blank
/// lines ignored. Throws IoError, UsageError, UnknownKey, InvalidArgument.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace wrnn::pipeline
