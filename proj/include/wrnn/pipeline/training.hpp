#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wrnn/pipeline/topology.hpp"
#include "wrnn/pipeline/vectors.hpp"
#include "wrnn/rnn/rtrl.hpp"

namespace wrnn::pipeline {

struct SplitFractions {
  double train = 0.70;
  double validation = 0.15;
  double test = 0.15;
};

/// Chronological row ranges [0, train), [train, validation), [validation, n).
struct SplitPoints {
  std::size_t train_end = 0;
  std::size_t validation_end = 0;
  std::size_t total = 0;
};

/// Throws InvalidArgument when the fractions are negative or do not sum to
/// 1, InsufficientHistory when a part would be empty.
SplitPoints split_points(std::size_t rows, const SplitFractions& f);

/// Tracks the best validation error. patience <= 0 never stops.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience) : patience_(patience) {}

  /// Records one epoch; returns true when it is a strict improvement.
  bool update(int epoch, double validation_mse);
  bool should_stop() const { return patience_ > 0 && since_best_ >= patience_; }
  int best_epoch() const { return best_epoch_; }
  double best() const { return best_; }

 private:
  int patience_;
  int best_epoch_ = 0;
  int since_best_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
};

struct TrainOptions {
  SplitFractions split;
  int max_epochs = 5000;
  int patience = 200;  ///< <= 0 means no early stop
  double eta = 0.001;
  double beta = 1.0;
  double clip = 1.0;
  std::uint64_t seed = 1;
};

/// One row of the family comparison.
struct TrainReport {
  std::string family;
  int neuron_count_2N = 0;  ///< hidden layer width
  std::vector<int> hidden;
  double relative_rms_percent = 0.0;
  double gamma = 0.0;
  int epochs_to_converge = 0;  ///< epoch of the restored weights
  int epochs_run = 0;
  double best_validation_mse = 0.0;
  std::size_t test_samples = 0;
  std::vector<double> mse_trace;             ///< training MSE per epoch
  std::vector<double> validation_mse_trace;  ///< validation MSE per epoch
};

struct TrainedModel {
  rnn::Rnn net;
  FeatureScaler features;
  ScaleParams target_scale;
  WrnnTopology topology;
};

struct TrainOutcome {
  TrainReport report;
  TrainedModel model;
};

/// Network predictions (normalized units) for every row, running from a
/// reset state. Step k sees rows k-1, k-2, k-3 (zeros before the start).
std::vector<double> run_network(rnn::Rnn& net, const InputVectorSet& data,
                                const FeatureScaler& features);

/// One epoch of online RTRL over rows [0, end) from a reset state; the
/// first kWarmupRows steps only advance the sensitivities. Returns the
/// training MSE over the remaining steps.
double train_epoch(rnn::Rnn& net, const InputVectorSet& data, const FeatureScaler& features,
                   std::size_t end);

/// Early-stopped training; the report covers the test split only, with
/// predictions denormalized and clipped to the sensor range. Throws
/// Diverged.
TrainOutcome train_early_stopping(const WrnnTopology& topology, const InputVectorSet& data,
                                  const TrainOptions& options, const std::string& family);

/// Denormalized irradiance forecast for every row, clipped to
/// [0, kIrradianceMax]. The series starts at the first target time.
TimeSeries forecast(const TrainedModel& model, const InputVectorSet& data);

}  // namespace wrnn::pipeline
