#include "wrnn/rnn/rtrl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrnn/common/error.hpp"
#include "wrnn/common/random.hpp"

namespace wrnn::rnn {

std::vector<double> build_input(std::span<const double> s_history, std::span<const double> y_prev,
                                int p, int N) {
  if (static_cast<int>(s_history.size()) != p || static_cast<int>(y_prev.size()) != N) {
    fail(ErrorCode::LengthMismatch, "input needs " + std::to_string(p) + " external samples and " +
                                        std::to_string(N) + " feedbacks, got " +
                                        std::to_string(s_history.size()) + " and " +
                                        std::to_string(y_prev.size()));
  }
  std::vector<double> u;
  u.reserve(static_cast<std::size_t>(p + N + 1));
  u.insert(u.end(), s_history.begin(), s_history.end());
  u.push_back(1.0);
  u.insert(u.end(), y_prev.begin(), y_prev.end());
  return u;
}

Rnn::Rnn(const RnnConfig& cfg)
    : Rnn(cfg, std::vector<Activation>(static_cast<std::size_t>(std::max(cfg.N, 0)),
                                       Activation{cfg.activation, cfg.beta}),
          Mask::Ones(std::max(cfg.N, 0), std::max(cfg.width(), 0))) {}

Rnn::Rnn(const RnnConfig& cfg, std::vector<Activation> activations, Mask mask)
    : cfg_(cfg), act_(std::move(activations)), mask_(std::move(mask)) {
  if (cfg_.p < 0 || cfg_.N < 1) fail(ErrorCode::InvalidArgument, "network needs p >= 0 and N >= 1");
  if (static_cast<int>(act_.size()) != cfg_.N) {
    fail(ErrorCode::InvalidArgument, "one activation per neuron required");
  }
  if (mask_.rows() != cfg_.N || mask_.cols() != cfg_.width()) {
    fail(ErrorCode::InvalidArgument, "mask must be N x (p+N+1)");
  }
  if (!(cfg_.eta >= 0.0) || !(cfg_.clip >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "learning rate and clip must be non-negative");
  }
  init_structure();
  W_ = Matrix::Zero(cfg_.N, cfg_.width());
  Rng rng(cfg_.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(cfg_.width()));
  for (int i = 0; i < cfg_.N; ++i) {
    for (int l = 0; l < cfg_.width(); ++l) {
      const double w = rng.uniform(-0.5, 0.5) * scale;  // drawn for every slot so masks don't shift the stream
      if (mask_(i, l)) W_(i, l) = w;
    }
  }
  reset_state();
}

void Rnn::init_structure() {
  const int N = cfg_.N, width = cfg_.width();
  index_.setConstant(N, width, -1);
  weight_neuron_.clear();
  weight_column_.clear();
  row_begin_.assign(static_cast<std::size_t>(N) + 1, 0);
  for (int i = 0; i < N; ++i) {
    row_begin_[static_cast<std::size_t>(i)] = weight_neuron_.size();
    for (int l = 0; l < width; ++l) {
      if (!mask_(i, l)) continue;
      index_(i, l) = static_cast<int>(weight_neuron_.size());
      weight_neuron_.push_back(i);
      weight_column_.push_back(l);
    }
  }
  row_begin_[static_cast<std::size_t>(N)] = weight_neuron_.size();
  feedback_.assign(static_cast<std::size_t>(N), {});
  for (int j = 0; j < N; ++j) {
    for (int m = 0; m < N; ++m) {
      if (mask_(j, cfg_.p + 1 + m)) feedback_[static_cast<std::size_t>(j)].push_back(m);
    }
  }
}

void Rnn::set_weights(const Matrix& W) {
  if (W.rows() != W_.rows() || W.cols() != W_.cols()) {
    fail(ErrorCode::InvalidArgument, "weight matrix shape mismatch");
  }
  for (int i = 0; i < W.rows(); ++i) {
    for (int l = 0; l < W.cols(); ++l) {
      if (!mask_(i, l) && W(i, l) != 0.0) {
        fail(ErrorCode::InvalidArgument, "masked weight (" + std::to_string(i) + "," +
                                             std::to_string(l) + ") must be zero");
      }
    }
  }
  W_ = W;
}

void Rnn::reset_state() {
  y_.assign(static_cast<std::size_t>(cfg_.N), 0.0);
  v_.assign(static_cast<std::size_t>(cfg_.N), 0.0);
  pi_ = Matrix::Zero(cfg_.N, static_cast<Eigen::Index>(trainable_count()));
  pi_next_ = pi_;
  step_ = 0;
}

std::vector<double> Rnn::input_vector(std::span<const double> s_history) const {
  return build_input(s_history, y_, cfg_.p, cfg_.N);
}

void Rnn::propagate(std::span<const double> u, bool track) {
  if (static_cast<int>(u.size()) != cfg_.width()) {
    fail(ErrorCode::LengthMismatch, "input vector has " + std::to_string(u.size()) +
                                        " entries, expected " + std::to_string(cfg_.width()));
  }
  const Eigen::Map<const Eigen::VectorXd> uv(u.data(), static_cast<Eigen::Index>(u.size()));
  const Eigen::VectorXd v = W_ * uv;
  std::vector<double> y(static_cast<std::size_t>(cfg_.N));
  for (int i = 0; i < cfg_.N; ++i) {
    const auto si = static_cast<std::size_t>(i);
    y[si] = act_[si](v(i));
    if (!std::isfinite(v(i)) || !std::isfinite(y[si])) {
      fail(ErrorCode::NonFiniteActivation, "neuron " + std::to_string(i) + " produced a non-finite value at step " +
                                               std::to_string(step_));
    }
  }
  if (track) {
    // π_j(k) = φ'(v_j) [ δ_{jn} u_l + Σ_m w_{j,p+1+m} π_m(k-1) ]
    for (int j = 0; j < cfg_.N; ++j) {
      auto row = pi_next_.row(j);
      row.setZero();
      for (int m : feedback_[static_cast<std::size_t>(j)]) {
        row.noalias() += W_(j, cfg_.p + 1 + m) * pi_.row(m);
      }
      for (std::size_t t = row_begin_[static_cast<std::size_t>(j)];
           t < row_begin_[static_cast<std::size_t>(j) + 1]; ++t) {
        row(static_cast<Eigen::Index>(t)) += u[static_cast<std::size_t>(weight_column_[t])];
      }
      row *= act_[static_cast<std::size_t>(j)].derivative(v(j));
    }
    pi_.swap(pi_next_);
  }
  for (int i = 0; i < cfg_.N; ++i) v_[static_cast<std::size_t>(i)] = v(i);
  y_ = std::move(y);
  ++step_;
}

const std::vector<double>& Rnn::forward(std::span<const double> u) {
  propagate(u, false);
  return y_;
}

void Rnn::advance(std::span<const double> u) { propagate(u, true); }

double Rnn::rtrl_step(std::span<const double> u, double teach) {
  propagate(u, true);
  const double e = teach - y_[0];
  if (e == 0.0 || cfg_.eta == 0.0) return e;
  const auto grad = pi_.row(0);
  double scale = cfg_.eta * e;
  if (cfg_.clip > 0.0) {
    const double largest = std::abs(scale) * grad.cwiseAbs().maxCoeff();
    if (largest > cfg_.clip) scale *= cfg_.clip / largest;
  }
  for (std::size_t t = 0; t < weight_neuron_.size(); ++t) {
    W_(weight_neuron_[t], weight_column_[t]) += scale * grad(static_cast<Eigen::Index>(t));
  }
  return e;
}

double Rnn::sensitivity(int j, int n, int l) const {
  const int t = index_(n, l);
  return t < 0 ? 0.0 : pi_(j, t);
}

TrainResult train_series(const RnnConfig& cfg, const std::vector<std::vector<double>>& inputs,
                         const std::vector<double>& teach, int epochs, std::uint64_t seed) {
  if (inputs.size() != teach.size()) {
    fail(ErrorCode::LengthMismatch, std::to_string(inputs.size()) + " inputs for " +
                                        std::to_string(teach.size()) + " targets");
  }
  if (epochs < 1) fail(ErrorCode::InvalidArgument, "epochs must be >= 1");
  if (inputs.empty()) fail(ErrorCode::EmptyInput, "no training samples");
  RnnConfig seeded = cfg;
  seeded.seed = seed;
  TrainResult result{Rnn(seeded), {}};
  Rnn& net = result.net;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    net.reset_state();
    double sum = 0.0;
    try {
      for (std::size_t k = 0; k < inputs.size(); ++k) {
        const double e = net.rtrl_step(net.input_vector(inputs[k]), teach[k]);
        sum += e * e;
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NonFiniteActivation) throw;
      fail(ErrorCode::Diverged, "training diverged in epoch " + std::to_string(epoch + 1) + ": " +
                                    err.what());
    }
    const double mse = sum / static_cast<double>(inputs.size());
    if (!std::isfinite(mse)) {
      fail(ErrorCode::Diverged, "non-finite MSE in epoch " + std::to_string(epoch + 1));
    }
    result.mse_trace.push_back(mse);
  }
  return result;
}

}  // namespace wrnn::rnn
