#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wrnn {

/// Measurement channels: irradiance [W/m^2], temperature [degC], relative
/// humidity [%], wind speed [km/h], or a generic synthetic signal.
enum class Channel { irradiance, temperature, humidity, wind_speed, synthetic };

std::string_view channel_name(Channel channel);
Channel parse_channel(std::string_view name);

/// Default sampling interval of the meteorological station, seconds.
inline constexpr std::int64_t kDefaultStep = 600;

/// Uniformly sampled scalar signal. Immutable once constructed.
class TimeSeries {
 public:
  /// Throws InvalidArgument for step <= 0 or non-finite samples, EmptySeries
  /// for no samples.
  TimeSeries(std::int64_t start_epoch, std::int64_t step, std::vector<double> values,
             Channel channel = Channel::synthetic);

  std::int64_t start_epoch() const { return start_epoch_; }
  std::int64_t step() const { return step_; }
  std::int64_t timestamp(std::size_t k) const {
    return start_epoch_ + static_cast<std::int64_t>(k) * step_;
  }
  std::int64_t end_epoch() const { return timestamp(values_.size() - 1); }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& data() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  Channel channel() const { return channel_; }

 private:
  std::int64_t start_epoch_;
  std::int64_t step_;
  std::vector<double> values_;
  Channel channel_;
};

/// Affine map x -> lo + gain * (x - offset) onto [lo, hi].
struct ScaleParams {
  double offset = 0.0;
  double gain = 1.0;
  double lo = -1.0;
  double hi = 1.0;

  double apply(double x) const { return lo + gain * (x - offset); }
  double invert(double y) const { return offset + (y - lo) / gain; }
};

enum class ResampleMode {
  linear,  ///< sample the piecewise-linear interpolant on the new grid
  mean,    ///< average the original samples falling in each new bin
};

std::string_view resample_mode_name(ResampleMode mode);

/// Puts the series on a grid of new_step seconds starting at start_epoch.
/// Throws TooShort for fewer than two samples, StepTooLarge when fewer than
/// two output samples would result.
TimeSeries resample(const TimeSeries& ts, std::int64_t new_step,
                    ResampleMode mode = ResampleMode::linear);

/// Maps min -> lo and max -> hi. Throws ConstantSeries.
std::pair<TimeSeries, ScaleParams> normalize(const TimeSeries& ts, double lo = -1.0,
                                             double hi = 1.0);
TimeSeries denormalize(const TimeSeries& ts, const ScaleParams& scale);

/// Reads one channel from a CSV with a header row. Timestamps may be integer
/// epoch seconds or ISO-8601 (autodetected). Empty, "NA" or "NaN" cells are
/// missing samples; gaps of up to kMaxFilledGap steps are filled linearly and
/// longer gaps split the record, keeping the longest segment.
TimeSeries load_csv(const std::filesystem::path& path, Channel channel,
                    std::string_view time_column = "timestamp",
                    std::string_view value_column = "value");

inline constexpr std::size_t kMaxFilledGap = 3;

/// Writes "timestamp,<value_column>" rows with integer epoch seconds.
void save_csv(const TimeSeries& ts, const std::filesystem::path& path,
              std::string_view value_column = "value");

/// Parses "1700000000" or "2007-06-01T10:20:00Z" style timestamps.
std::int64_t parse_timestamp(std::string_view text);

/// Desk-scale stand-in for the station record: 144 samples per day at 600 s,
/// all four channels driven by one seeded weather process so they stay
/// mutually consistent for a given seed.
TimeSeries synth_meteo(int days, std::uint64_t seed, Channel channel);

/// Physical sensor range of the pyranometer, W/m^2.
inline constexpr double kIrradianceMax = 1400.0;

}  // namespace wrnn
