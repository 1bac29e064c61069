#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "wrnn/common/error.hpp"
#include "wrnn/common/random.hpp"
#include "wrnn/timeseries/timeseries.hpp"

namespace wrnn {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSamplesPerDay = 144;
constexpr std::int64_t kSynthStart = 1180656000;  // 2007-06-01T00:00:00Z

// Slow weather state: a few incommensurate oscillations with seeded phases.
// Everything a channel needs is a smooth function of time, so the detail bands
// of the auxiliary channels are dominated by the diurnal cycle.
struct Weather {
  std::array<double, 3> cloud_phase{};
  std::array<double, 2> drift_phase{};
  std::uint64_t noise_seed = 0;

  explicit Weather(std::uint64_t seed) {
    Rng rng(seed);
    for (double& p : cloud_phase) p = rng.uniform(0.0, kTwoPi);
    for (double& p : drift_phase) p = rng.uniform(0.0, kTwoPi);
    noise_seed = rng.next();
  }

  // clear-sky fraction in roughly [0.67, 0.97]
  double cloud(double day) const {
    return 0.82 + 0.07 * std::sin(kTwoPi * day / 11.3 + cloud_phase[0]) +
           0.05 * std::sin(kTwoPi * day / 5.7 + cloud_phase[1]) +
           0.03 * std::sin(kTwoPi * day / 3.1 + cloud_phase[2]);
  }

  // synoptic drift in [-1, 1]
  double drift(double day) const {
    return 0.6 * std::sin(kTwoPi * day / 8.9 + drift_phase[0]) +
           0.4 * std::sin(kTwoPi * day / 4.3 + drift_phase[1]);
  }
};

double diurnal(double hour, double peak_hour) {
  return std::cos(kTwoPi * (hour - peak_hour) / 24.0);
}

}  // namespace

TimeSeries synth_meteo(int days, std::uint64_t seed, Channel channel) {
  if (days < 1) fail(ErrorCode::InvalidArgument, "synth_meteo needs days >= 1");
  const Weather weather(seed);
  Rng noise(weather.noise_seed);
  const std::size_t n = static_cast<std::size_t>(days) * kSamplesPerDay;
  std::vector<double> v(n);

  for (std::size_t k = 0; k < n; ++k) {
    const double day = static_cast<double>(k) / kSamplesPerDay;
    const double hour = 24.0 * (day - std::floor(day));
    const double c = weather.cloud(day);
    const double w = weather.drift(day);
    switch (channel) {
      case Channel::irradiance: {
        // half-sine between 06:00 and 18:00, amplitude fixed per day
        const double sun = std::max(0.0, std::sin(std::numbers::pi * (hour - 6.0) / 12.0));
        const double amplitude = 1150.0 * weather.cloud(std::floor(day) + 0.5);
        const double eps = noise.normal();
        double value = sun > 0.0 ? amplitude * sun + 20.0 * sun * eps : 0.0;
        v[k] = std::clamp(value, 0.0, kIrradianceMax);
        break;
      }
      case Channel::temperature:
        v[k] = 18.0 + 2.5 * w + 6.0 * c * diurnal(hour, 15.0);
        break;
      case Channel::humidity:
        v[k] = std::clamp(62.0 - 8.0 * w - 16.0 * c * diurnal(hour, 13.0), 0.0, 100.0);
        break;
      case Channel::wind_speed:
        v[k] = std::max(3.0, 15.0 + 3.0 * w + 6.0 * c * diurnal(hour, 11.0));
        break;
      case Channel::synthetic:
        v[k] = c * diurnal(hour, 12.0) + 0.2 * w;
        break;
    }
  }
  return TimeSeries(kSynthStart, kDefaultStep, std::move(v), channel);
}

}  // namespace wrnn
