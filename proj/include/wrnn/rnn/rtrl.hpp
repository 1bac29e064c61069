#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "wrnn/rnn/activation.hpp"

namespace wrnn::rnn {

struct RnnConfig {
  int p = 1;           ///< external inputs
  int N = 1;           ///< neurons; neuron 0 is the output
  double beta = 1.0;   ///< logistic slope
  double eta = 0.1;    ///< learning rate
  ActivationKind activation = ActivationKind::logistic;
  double clip = 1.0;   ///< bound on max |Δw| per step; 0 disables
  std::uint64_t seed = 1;

  /// Weights per neuron: p inputs, bias, N feedbacks.
  int width() const { return p + N + 1; }
};

/// u = [s(k-1) .. s(k-p), 1, y_1(k-1) .. y_N(k-1)]. Throws LengthMismatch.
std::vector<double> build_input(std::span<const double> s_history, std::span<const double> y_prev,
                                int p, int N);

/// Williams-Zipser network trained by real-time recurrent learning. Every
/// neuron sees the same input vector u; a structural mask pins weights to
/// zero, and only unmasked weights carry sensitivities.
class Rnn {
 public:
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Mask = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  /// Fully connected, every neuron uses cfg.activation. Weights are drawn
  /// uniformly from [-0.5, 0.5] / sqrt(p + N + 1) with cfg.seed.
  explicit Rnn(const RnnConfig& cfg);
  /// Per-neuron activations and an N x (p+N+1) mask. Throws InvalidArgument
  /// on shape errors.
  Rnn(const RnnConfig& cfg, std::vector<Activation> activations, Mask mask);

  const RnnConfig& config() const { return cfg_; }
  void set_learning_rate(double eta) { cfg_.eta = eta; }
  int inputs() const { return cfg_.p; }
  int neurons() const { return cfg_.N; }
  int width() const { return cfg_.width(); }

  const Matrix& weights() const { return W_; }
  /// Throws InvalidArgument for a shape mismatch or a nonzero masked weight.
  void set_weights(const Matrix& W);
  const Mask& mask() const { return mask_; }
  const std::vector<Activation>& activations() const { return act_; }
  std::size_t trainable_count() const { return weight_neuron_.size(); }

  /// Previous outputs y(k-1).
  const std::vector<double>& outputs() const { return y_; }
  double output() const { return y_[0]; }
  std::size_t step() const { return step_; }

  /// Zeroes y_prev and the sensitivities, rewinds the step counter.
  void reset_state();

  /// build_input with this network's previous outputs.
  std::vector<double> input_vector(std::span<const double> s_history) const;

  /// y = act(W u); updates y_prev and the step counter, leaves π alone.
  /// Throws NonFiniteActivation.
  const std::vector<double>& forward(std::span<const double> u);

  /// One RTRL step: forward, advance π, e = teach - y_1, Δw = η e π^1
  /// (clipped), apply. Returns e. Throws NonFiniteActivation.
  double rtrl_step(std::span<const double> u, double teach);

  /// Forward plus π advance without a weight change (e treated as 0).
  void advance(std::span<const double> u);

  /// π^j_{n,l} = ∂y_j / ∂w_{n,l} at the current step; 0 for masked weights.
  double sensitivity(int j, int n, int l) const;

 private:
  void init_structure();
  void propagate(std::span<const double> u, bool track);

  RnnConfig cfg_;
  std::vector<Activation> act_;
  Mask mask_;
  Matrix W_;
  std::vector<double> y_;
  std::vector<double> v_;
  std::size_t step_ = 0;

  // trainable weights in row-major order
  std::vector<int> weight_neuron_;
  std::vector<int> weight_column_;
  std::vector<std::size_t> row_begin_;  // first trainable index of each neuron
  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> index_;  // -1 if masked
  // active feedback edges per neuron: (source neuron m)
  std::vector<std::vector<int>> feedback_;
  Matrix pi_;
  Matrix pi_next_;
};

struct TrainResult {
  Rnn net;
  std::vector<double> mse_trace;
};

/// Runs `epochs` passes of online RTRL over the sequence from a reset state;
/// each input is the external history s(k-1)..s(k-p) for step k. Throws
/// LengthMismatch, InvalidArgument (epochs < 1), Diverged.
TrainResult train_series(const RnnConfig& cfg, const std::vector<std::vector<double>>& inputs,
                         const std::vector<double>& teach, int epochs, std::uint64_t seed);

/// Versioned JSON checkpoint: config, activations, mask and weights.
void save_checkpoint(const std::filesystem::path& path, const Rnn& net);
Rnn load_checkpoint(const std::filesystem::path& path);

}  // namespace wrnn::rnn
