#include "wrnn/pipeline/training.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrnn/common/error.hpp"
#include "wrnn/metrics/metrics.hpp"

namespace wrnn::pipeline {
namespace {

std::vector<std::vector<double>> scale_rows(const InputVectorSet& data, const FeatureScaler& f) {
  std::vector<std::vector<double>> out;
  out.reserve(data.rows.size());
  for (const auto& row : data.rows) out.push_back(f.apply(row));
  return out;
}

// External history for step k: rows k-1, k-2, ... with zeros before the start.
void fill_history(const std::vector<std::vector<double>>& rows, std::size_t k, int taps,
                  std::vector<double>& s) {
  s.clear();
  for (int d = 1; d <= taps; ++d) {
    if (k >= static_cast<std::size_t>(d)) {
      const auto& row = rows[k - static_cast<std::size_t>(d)];
      s.insert(s.end(), row.begin(), row.end());
    } else {
      s.insert(s.end(), rows.front().size(), 0.0);
    }
  }
}

int taps_of(const rnn::Rnn& net, const InputVectorSet& data) {
  const std::size_t width = data.rows.empty() ? 0 : data.rows.front().size();
  if (width == 0 || net.inputs() % static_cast<int>(width) != 0) {
    fail(ErrorCode::LengthMismatch, "network input count " + std::to_string(net.inputs()) +
                                        " is not a multiple of the row width " + std::to_string(width));
  }
  return net.inputs() / static_cast<int>(width);
}

std::vector<double> predict_scaled(rnn::Rnn& net, const std::vector<std::vector<double>>& rows,
                                   int taps) {
  net.reset_state();
  std::vector<double> out(rows.size());
  std::vector<double> s;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    fill_history(rows, k, taps, s);
    out[k] = net.forward(net.input_vector(s))[0];
  }
  return out;
}

double epoch_scaled(rnn::Rnn& net, const std::vector<std::vector<double>>& rows,
                    const std::vector<double>& target, std::size_t end, int taps) {
  net.reset_state();
  std::vector<double> s;
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t k = 0; k < end; ++k) {
    fill_history(rows, k, taps, s);
    const auto u = net.input_vector(s);
    if (k < kWarmupRows) {
      net.advance(u);
      continue;
    }
    const double e = net.rtrl_step(u, target[k]);
    sum += e * e;
    ++counted;
  }
  return counted ? sum / static_cast<double>(counted) : 0.0;
}

double span_mse(const std::vector<double>& pred, const std::vector<double>& target,
                std::size_t begin, std::size_t end) {
  return metrics::mse(std::span(pred).subspan(begin, end - begin),
                      std::span(target).subspan(begin, end - begin));
}

double to_irradiance(const ScaleParams& scale, double y) {
  return std::clamp(scale.invert(y), 0.0, kIrradianceMax);
}

}  // namespace

SplitPoints split_points(std::size_t rows, const SplitFractions& f) {
  if (f.train < 0 || f.validation < 0 || f.test < 0 ||
      std::abs(f.train + f.validation + f.test - 1.0) > 1e-9) {
    fail(ErrorCode::InvalidArgument, "split fractions must be non-negative and sum to 1");
  }
  SplitPoints s;
  s.total = rows;
  s.train_end = static_cast<std::size_t>(std::floor(f.train * static_cast<double>(rows)));
  s.validation_end =
      s.train_end + static_cast<std::size_t>(std::floor(f.validation * static_cast<double>(rows)));
  if (s.train_end <= kWarmupRows || s.validation_end == s.train_end || s.validation_end >= rows) {
    fail(ErrorCode::InsufficientHistory, std::to_string(rows) +
                                             " rows are too few for a train/validation/test split");
  }
  return s;
}

bool EarlyStopping::update(int epoch, double validation_mse) {
  if (validation_mse < best_) {
    best_ = validation_mse;
    best_epoch_ = epoch;
    since_best_ = 0;
    return true;
  }
  ++since_best_;
  return false;
}

std::vector<double> run_network(rnn::Rnn& net, const InputVectorSet& data,
                                const FeatureScaler& features) {
  if (data.rows.empty()) return {};
  return predict_scaled(net, scale_rows(data, features), taps_of(net, data));
}

double train_epoch(rnn::Rnn& net, const InputVectorSet& data, const FeatureScaler& features,
                   std::size_t end) {
  if (data.rows.empty()) fail(ErrorCode::EmptyInput, "no rows to train on");
  return epoch_scaled(net, scale_rows(data, features), data.target, std::min(end, data.size()),
                      taps_of(net, data));
}

TrainOutcome train_early_stopping(const WrnnTopology& topology, const InputVectorSet& data,
                                  const TrainOptions& options, const std::string& family) {
  if (options.max_epochs < 1) fail(ErrorCode::InvalidArgument, "max_epochs must be >= 1");
  topology.validate();
  if (data.rows.empty() || static_cast<int>(data.rows.front().size()) != topology.input_width) {
    fail(ErrorCode::LengthMismatch, "input rows do not match the topology input width");
  }
  const SplitPoints split = split_points(data.size(), options.split);
  const FeatureScaler features = FeatureScaler::fit(data.rows, split.train_end);
  const auto rows = scale_rows(data, features);

  rnn::RnnConfig base;
  base.eta = options.eta;
  base.beta = options.beta;
  base.clip = options.clip;
  base.seed = options.seed;
  rnn::Rnn net = assemble_wrnn(topology, base);
  const int taps = topology.input_delay_taps;

  TrainReport report;
  report.family = family;
  report.hidden = topology.hidden;
  report.neuron_count_2N = topology.hidden.front();

  EarlyStopping stopper(options.patience);
  rnn::Rnn::Matrix best = net.weights();
  try {
    for (int epoch = 1; epoch <= options.max_epochs; ++epoch) {
      const double train_mse = epoch_scaled(net, rows, data.target, split.train_end, taps);
      const auto pred = predict_scaled(net, rows, taps);
      const double val_mse = span_mse(pred, data.target, split.train_end, split.validation_end);
      if (!std::isfinite(train_mse) || !std::isfinite(val_mse)) {
        fail(ErrorCode::Diverged, "non-finite MSE in epoch " + std::to_string(epoch));
      }
      report.mse_trace.push_back(train_mse);
      report.validation_mse_trace.push_back(val_mse);
      report.epochs_run = epoch;
      if (stopper.update(epoch, val_mse)) best = net.weights();
      if (stopper.should_stop()) break;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonFiniteActivation) throw;
    fail(ErrorCode::Diverged, std::string("training diverged: ") + e.what());
  }
  net.set_weights(best);
  report.epochs_to_converge = stopper.best_epoch();
  report.best_validation_mse = stopper.best();

  const auto pred = predict_scaled(net, rows, taps);
  std::vector<double> predicted, actual;
  for (std::size_t k = split.validation_end; k < data.size(); ++k) {
    predicted.push_back(to_irradiance(data.target_scale, pred[k]));
    actual.push_back(data.target_raw[k]);
  }
  const auto eval = metrics::evaluate(predicted, actual);
  report.relative_rms_percent = eval.relative_rms_percent;
  report.gamma = eval.gamma;
  report.test_samples = eval.n_samples;

  net.reset_state();
  return TrainOutcome{std::move(report), TrainedModel{std::move(net), features, data.target_scale, topology}};
}

TimeSeries forecast(const TrainedModel& model, const InputVectorSet& data) {
  if (data.rows.empty()) fail(ErrorCode::EmptyInput, "no rows to forecast from");
  rnn::Rnn net = model.net;
  const auto pred = run_network(net, data, model.features);
  std::vector<double> values;
  values.reserve(pred.size());
  for (double y : pred) values.push_back(to_irradiance(model.target_scale, y));
  return TimeSeries(data.target_time.front(), data.step, std::move(values), Channel::irradiance);
}

}  // namespace wrnn::pipeline
