#include "wrnn/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrnn/common/csv.hpp"
#include "wrnn/common/error.hpp"

namespace wrnn::metrics {
namespace {

void check_pair(std::span<const double> pred, std::span<const double> actual, std::size_t min_len) {
  if (pred.size() != actual.size() || pred.size() < min_len) {
    fail(ErrorCode::LengthMismatch, "need two series of equal length >= " + std::to_string(min_len) +
                                        ", got " + std::to_string(pred.size()) + " and " +
                                        std::to_string(actual.size()));
  }
}

double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

double mse(std::span<const double> pred, std::span<const double> actual) {
  check_pair(pred, actual, 1);
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - actual[i];
    s += e * e;
  }
  return s / static_cast<double>(pred.size());
}

double relative_rms(std::span<const double> pred, std::span<const double> actual) {
  check_pair(pred, actual, 2);
  const auto [lo, hi] = std::minmax_element(actual.begin(), actual.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) fail(ErrorCode::ConstantActual, "actual series is constant");
  return 100.0 * std::sqrt(mse(pred, actual)) / range;
}

double correlation(std::span<const double> pred, std::span<const double> actual) {
  check_pair(pred, actual, 2);
  const double mp = mean(pred), ma = mean(actual);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double dp = pred[i] - mp, da = actual[i] - ma;
    sxy += dp * da;
    sxx += dp * dp;
    syy += da * da;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    fail(ErrorCode::ConstantSeries, "correlation is undefined for a constant series");
  }
  return sxy / std::sqrt(sxx * syy);
}

EvalResult evaluate(std::span<const double> pred, std::span<const double> actual) {
  EvalResult r;
  r.relative_rms_percent = relative_rms(pred, actual);
  r.gamma = correlation(pred, actual);
  r.n_samples = pred.size();
  r.mse = mse(pred, actual);
  return r;
}

void mse_trace_export(std::span<const double> trace, const std::filesystem::path& path) {
  if (trace.empty()) fail(ErrorCode::EmptyInput, "empty MSE trace");
  std::vector<std::vector<std::string>> rows;
  rows.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    rows.push_back({std::to_string(i + 1), csv::format_double(trace[i])});
  }
  csv::write(path, {"epoch", "mse"}, rows);
}

}  // namespace wrnn::metrics
