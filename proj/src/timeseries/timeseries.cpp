#include "wrnn/timeseries/timeseries.hpp"

#include <algorithm>
#include <cmath>

#include "wrnn/common/error.hpp"

namespace wrnn {

std::string_view channel_name(Channel channel) {
  switch (channel) {
    case Channel::irradiance: return "irradiance";
    case Channel::temperature: return "temperature";
    case Channel::humidity: return "humidity";
    case Channel::wind_speed: return "wind_speed";
    case Channel::synthetic: return "synthetic";
  }
  return "synthetic";
}

Channel parse_channel(std::string_view name) {
  for (Channel c : {Channel::irradiance, Channel::temperature, Channel::humidity,
                    Channel::wind_speed, Channel::synthetic}) {
    if (channel_name(c) == name) return c;
  }
  fail(ErrorCode::InvalidArgument, "unknown channel '" + std::string(name) + "'");
}

TimeSeries::TimeSeries(std::int64_t start_epoch, std::int64_t step, std::vector<double> values,
                       Channel channel)
    : start_epoch_(start_epoch), step_(step), values_(std::move(values)), channel_(channel) {
  if (step_ <= 0) fail(ErrorCode::InvalidArgument, "time step must be positive");
  if (values_.empty()) fail(ErrorCode::EmptySeries, "time series has no samples");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      fail(ErrorCode::InvalidArgument, "non-finite sample at index " + std::to_string(k));
    }
  }
}

std::string_view resample_mode_name(ResampleMode mode) {
  return mode == ResampleMode::linear ? "linear" : "mean";
}

TimeSeries resample(const TimeSeries& ts, std::int64_t new_step, ResampleMode mode) {
  if (new_step <= 0) fail(ErrorCode::InvalidArgument, "new step must be positive");
  if (ts.size() < 2) fail(ErrorCode::TooShort, "resampling needs at least two samples");

  const std::int64_t step = ts.step();
  const std::int64_t duration = step * static_cast<std::int64_t>(ts.size() - 1);
  const std::int64_t count = duration / new_step + 1;
  if (count < 2) fail(ErrorCode::StepTooLarge, "new step leaves fewer than two samples");

  const auto v = ts.values();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    const std::int64_t offset = k * new_step;
    if (mode == ResampleMode::linear) {
      const auto i = static_cast<std::size_t>(offset / step);
      const std::int64_t r = offset % step;
      if (r == 0) {
        out.push_back(v[i]);
      } else {
        const double frac = static_cast<double>(r) / static_cast<double>(step);
        out.push_back(v[i] + (v[i + 1] - v[i]) * frac);
      }
    } else {
      // bin [offset, offset + new_step)
      const std::int64_t first = (offset + step - 1) / step;
      const std::int64_t last =
          std::min<std::int64_t>((offset + new_step - 1) / step, ts.size() - 1);
      double sum = 0.0;
      std::int64_t n = 0;
      for (std::int64_t i = first; i <= last; ++i, ++n) sum += v[static_cast<std::size_t>(i)];
      if (n == 0) {
        // upsampling: fall back to the interpolant
        const auto i = static_cast<std::size_t>(offset / step);
        const double frac = static_cast<double>(offset % step) / static_cast<double>(step);
        out.push_back(i + 1 < v.size() ? v[i] + (v[i + 1] - v[i]) * frac : v[i]);
      } else {
        out.push_back(sum / static_cast<double>(n));
      }
    }
  }
  return TimeSeries(ts.start_epoch(), new_step, std::move(out), ts.channel());
}

std::pair<TimeSeries, ScaleParams> normalize(const TimeSeries& ts, double lo, double hi) {
  if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "target range needs lo < hi");
  const auto [min_it, max_it] = std::minmax_element(ts.data().begin(), ts.data().end());
  const double min = *min_it;
  const double max = *max_it;
  if (!(max > min)) fail(ErrorCode::ConstantSeries, "cannot normalize a constant series");

  ScaleParams scale{min, (hi - lo) / (max - min), lo, hi};
  std::vector<double> out(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) out[k] = scale.apply(ts[k]);
  // pin the extremes against rounding in the affine map
  out[static_cast<std::size_t>(min_it - ts.data().begin())] = lo;
  out[static_cast<std::size_t>(max_it - ts.data().begin())] = hi;
  return {TimeSeries(ts.start_epoch(), ts.step(), std::move(out), ts.channel()), scale};
}

TimeSeries denormalize(const TimeSeries& ts, const ScaleParams& scale) {
  std::vector<double> out(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) out[k] = scale.invert(ts[k]);
  return TimeSeries(ts.start_epoch(), ts.step(), std::move(out), ts.channel());
}

}  // namespace wrnn
