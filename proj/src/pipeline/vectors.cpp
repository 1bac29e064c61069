#include "wrnn/pipeline/vectors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrnn/common/error.hpp"

namespace wrnn::pipeline {

ScaleSelection select_scales(std::int64_t step, std::int64_t horizon) {
  if (step <= 0 || horizon <= 0 || horizon % step != 0) {
    fail(ErrorCode::InvalidArgument, "horizon must be a positive multiple of the step");
  }
  const std::int64_t ratio = horizon / step;
  int levels = 0;
  while ((std::int64_t{1} << levels) < ratio) ++levels;
  if (levels < 2) {
    fail(ErrorCode::HorizonTooShort, "horizon of " + std::to_string(ratio) +
                                         " steps gives J = " + std::to_string(levels) +
                                         "; two detail levels are needed");
  }
  ScaleSelection s;
  s.levels = levels;
  s.kept = {"a" + std::to_string(levels), "d1", "d2"};
  return s;
}

std::size_t dyadic_index(std::size_t t0, int level, std::size_t band_length) {
  const std::size_t k = t0 >> level;
  return std::min(k, band_length - 1);
}

InputVectorSet build_vectors(const wavelets::CoefficientPyramid& temperature,
                             const wavelets::CoefficientPyramid& humidity,
                             const wavelets::CoefficientPyramid& wind, const TimeSeries& irradiance,
                             int horizon_steps) {
  const wavelets::CoefficientPyramid* channels[3] = {&temperature, &humidity, &wind};
  const char* names[3] = {"temperature", "humidity", "wind_speed"};
  const std::size_t n = irradiance.size();
  const int J = temperature.levels;
  for (const auto* p : channels) {
    if (p->original_length != n) {
      fail(ErrorCode::MisalignedSeries, "pyramid covers " + std::to_string(p->original_length) +
                                            " samples, irradiance has " + std::to_string(n));
    }
    if (p->levels != J) fail(ErrorCode::MisalignedSeries, "pyramids use different level counts");
  }
  if (J < 2) fail(ErrorCode::InvalidArgument, "input vectors need at least two levels");
  if (horizon_steps < 1) fail(ErrorCode::InvalidArgument, "horizon must be at least one step");
  const auto horizon = static_cast<std::size_t>(horizon_steps);
  if (n <= horizon + kWarmupRows) {
    fail(ErrorCode::InsufficientHistory, std::to_string(n) + " samples leave no row for a " +
                                             std::to_string(horizon) + "-step horizon");
  }

  InputVectorSet set;
  set.step = irradiance.step();
  set.horizon_steps = horizon_steps;
  set.levels = J;
  set.target_scale = normalize(irradiance).second;
  const std::string aJ = "a" + std::to_string(J);
  for (const char* name : names) {
    set.band_map.push_back(std::string(name) + ":" + aJ + "[t0>>" + std::to_string(J) + "]");
    set.band_map.push_back(std::string(name) + ":d1[t0>>1]");
    set.band_map.push_back(std::string(name) + ":d2[t0>>2]");
    set.band_map.push_back(std::string(name) + ":d2[(t0>>2)+1]");
  }

  for (std::size_t t0 = kWarmupRows; t0 + horizon < n; ++t0) {
    std::vector<double> row;
    row.reserve(12);
    for (const auto* p : channels) {
      const auto& d1 = p->detail(1);
      const auto& d2 = p->detail(2);
      row.push_back(p->residue[dyadic_index(t0, J, p->residue.size())]);
      row.push_back(d1[dyadic_index(t0, 1, d1.size())]);
      const std::size_t k2 = dyadic_index(t0, 2, d2.size());
      row.push_back(d2[k2]);
      row.push_back(d2[std::min(k2 + 1, d2.size() - 1)]);
    }
    set.rows.push_back(std::move(row));
    const double raw = irradiance[t0 + horizon];
    set.target_raw.push_back(raw);
    set.target.push_back(set.target_scale.apply(raw));
    set.row_time.push_back(irradiance.timestamp(t0));
    set.target_time.push_back(irradiance.timestamp(t0 + horizon));
  }
  return set;
}

FeatureScaler FeatureScaler::fit(const std::vector<std::vector<double>>& rows, std::size_t count) {
  FeatureScaler f;
  if (rows.empty()) return f;
  f.scale.assign(rows.front().size(), 0.0);
  for (std::size_t r = 0; r < std::min(count, rows.size()); ++r) {
    for (std::size_t c = 0; c < f.scale.size(); ++c) f.scale[c] = std::max(f.scale[c], std::abs(rows[r][c]));
  }
  for (double& s : f.scale) {
    if (!(s > 0.0)) s = 1.0;
  }
  return f;
}

std::vector<double> FeatureScaler::apply(const std::vector<double>& row) const {
  if (row.size() != scale.size()) {
    fail(ErrorCode::LengthMismatch, "row width " + std::to_string(row.size()) +
                                        " does not match scaler width " + std::to_string(scale.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) out[c] = row[c] / scale[c];
  return out;
}

}  // namespace wrnn::pipeline
