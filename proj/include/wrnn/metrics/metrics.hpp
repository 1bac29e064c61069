#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace wrnn::metrics {

/// Denominator used by relative_rms, echoed in every report.
inline constexpr std::string_view kRmsNormalization = "range of actual";

struct EvalResult {
  double relative_rms_percent = 0.0;
  double gamma = 0.0;
  std::size_t n_samples = 0;
  double mse = 0.0;
};

/// 100 * sqrt(mean((pred - actual)^2)) / (max(actual) - min(actual)).
/// Throws LengthMismatch (unequal or fewer than two samples), ConstantActual.
double relative_rms(std::span<const double> pred, std::span<const double> actual);

/// Pearson correlation. Throws LengthMismatch, ConstantSeries.
double correlation(std::span<const double> pred, std::span<const double> actual);

/// Mean squared error. Throws LengthMismatch (unequal or empty).
double mse(std::span<const double> pred, std::span<const double> actual);

EvalResult evaluate(std::span<const double> pred, std::span<const double> actual);

/// "epoch,mse" CSV with epochs counted from 1. Throws EmptyInput, IoError.
void mse_trace_export(std::span<const double> trace, const std::filesystem::path& path);

}  // namespace wrnn::metrics
