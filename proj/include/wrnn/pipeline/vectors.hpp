#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "wrnn/timeseries/timeseries.hpp"
#include "wrnn/wavelets/dwt.hpp"

namespace wrnn::pipeline {

struct ScaleSelection {
  int levels = 0;
  std::set<std::string> kept;  ///< {"aJ", "d1", "d2"}
};

/// J = ceil(log2(horizon / step)); the residue a_J plus the two finest
/// detail bands are kept. Throws InvalidArgument when horizon is not a
/// positive multiple of step, HorizonTooShort when J < 2.
ScaleSelection select_scales(std::int64_t step, std::int64_t horizon);

/// Leading rows skipped so the three delay taps always see real data.
inline constexpr std::size_t kWarmupRows = 3;

/// Network inputs and targets indexed by the row time t0.
struct InputVectorSet {
  std::vector<std::vector<double>> rows;  ///< raw coefficients, 12 per row
  std::vector<double> target;             ///< normalized irradiance at t0 + horizon
  std::vector<double> target_raw;         ///< same, W/m^2
  std::vector<std::int64_t> row_time;     ///< timestamp of t0
  std::vector<std::int64_t> target_time;  ///< timestamp of t0 + horizon
  std::vector<std::string> band_map;      ///< e.g. "temperature:a9[t0/512]"
  ScaleParams target_scale;
  std::int64_t step = 0;
  int horizon_steps = 0;
  int levels = 0;

  std::size_t size() const { return rows.size(); }
};

/// Coefficient index of sample t0 at a given level, clamped to the band.
std::size_t dyadic_index(std::size_t t0, int level, std::size_t band_length);

/// Rows [a_J(t0), d_1(t0), d_2(t0-), d_2(t0+)] for temperature, humidity
/// and wind in that order, where d_2(t0-) and d_2(t0+) sit at floor(t0/4)
/// and floor(t0/4) + 1. Rows run over t0 in [kWarmupRows, length - horizon).
/// The target is irradiance at t0 + horizon mapped to [-1, 1] with the
/// min/max of the irradiance record. Throws MisalignedSeries when the
/// pyramids and irradiance do not describe the same samples or use
/// different level counts, InvalidArgument for fewer than two levels,
/// InsufficientHistory when no row remains.
InputVectorSet build_vectors(const wavelets::CoefficientPyramid& temperature,
                             const wavelets::CoefficientPyramid& humidity,
                             const wavelets::CoefficientPyramid& wind, const TimeSeries& irradiance,
                             int horizon_steps);

/// Per-column max-abs scaling fitted on a leading block of rows.
struct FeatureScaler {
  std::vector<double> scale;

  /// Columns that are zero across the fit rows keep scale 1.
  static FeatureScaler fit(const std::vector<std::vector<double>>& rows, std::size_t count);
  std::vector<double> apply(const std::vector<double>& row) const;
};

}  // namespace wrnn::pipeline
