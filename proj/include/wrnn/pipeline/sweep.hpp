#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wrnn/common/error.hpp"
#include "wrnn/pipeline/run_config.hpp"
#include "wrnn/pipeline/training.hpp"
#include "wrnn/timeseries/timeseries.hpp"
#include "wrnn/wavelets/filter_bank.hpp"

namespace wrnn::pipeline {

/// The four aligned input channels.
struct MeteoData {
  TimeSeries irradiance;
  TimeSeries temperature;
  TimeSeries humidity;
  TimeSeries wind;
};

/// Loads the CSVs named in the config, or synthesizes synth_days of data
/// when none is given; applies the configured resampling. Throws
/// MisalignedSeries when the channels do not share start, step and length.
MeteoData load_data(const RunConfig& config);
void check_aligned(const MeteoData& data);

/// Decomposes the three auxiliary channels with the family and builds the
/// input vectors for the configured horizon.
InputVectorSet prepare_vectors(const MeteoData& data, wavelets::Family family,
                               const RunConfig& config);

/// Decompose, assemble and train for one family.
TrainOutcome run_family(const MeteoData& data, wavelets::Family family, const RunConfig& config);

struct SweepEntry {
  std::string family;
  std::optional<TrainReport> report;
  std::optional<ErrorCode> error_code;
  std::string error;  ///< "<Code>: message" when the run failed
};

/// One independent run per family, in parallel; entries sorted by family
/// name. Failures are recorded per entry instead of aborting the sweep.
std::vector<SweepEntry> run_family_sweep(const std::vector<wavelets::Family>& families,
                                         const MeteoData& data, const RunConfig& config);

/// CSV with columns family, 2N, relative_rms_percent, gamma, epochs for the
/// successful entries, sorted by family.
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepEntry>& entries);
void write_report_csv(const std::filesystem::path& path, const std::vector<TrainReport>& reports);

}  // namespace wrnn::pipeline
