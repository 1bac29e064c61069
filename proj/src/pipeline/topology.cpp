#include "wrnn/pipeline/topology.hpp"

#include <numeric>
#include <string>

#include "wrnn/common/error.hpp"

namespace wrnn::pipeline {

void WrnnTopology::validate() const {
  if (hidden.size() != 2) {
    fail(ErrorCode::InvalidArgument, "the WRNN needs exactly two hidden layers, got " +
                                         std::to_string(hidden.size()));
  }
  for (int h : hidden) {
    if (h <= 0 || h % 2 != 0) {
      fail(ErrorCode::InvalidArgument, "hidden layer sizes must be positive and even, got " +
                                           std::to_string(h));
    }
  }
  if (input_width <= 0 || input_delay_taps <= 0) {
    fail(ErrorCode::InvalidArgument, "input width and delay taps must be positive");
  }
  if (output != 1 || output_feedback_taps != 1) {
    fail(ErrorCode::InvalidArgument, "one output neuron with one feedback tap is supported");
  }
}

int WrnnTopology::neurons() const {
  return output + std::accumulate(hidden.begin(), hidden.end(), 0);
}

int layer1_first(const WrnnTopology& t) { return t.output; }
int layer2_first(const WrnnTopology& t) { return t.output + t.hidden.at(0); }

rnn::Rnn::Mask wrnn_mask(const WrnnTopology& t) {
  t.validate();
  const int p = t.external_inputs();
  const int N = t.neurons();
  const int bias = p;
  const auto feedback = [&](int m) { return p + 1 + m; };
  const int l1 = layer1_first(t), l2 = layer2_first(t);
  const int h1 = t.hidden[0], h2 = t.hidden[1];

  rnn::Rnn::Mask mask = rnn::Rnn::Mask::Zero(N, p + N + 1);
  for (int i = 0; i < N; ++i) mask(i, bias) = 1;
  for (int i = l1; i < l1 + h1; ++i) {
    for (int l = 0; l < p; ++l) mask(i, l) = 1;
    mask(i, feedback(0)) = 1;
  }
  for (int i = l2; i < l2 + h2; ++i) {
    for (int m = l1; m < l1 + h1; ++m) mask(i, feedback(m)) = 1;
  }
  for (int m = l2; m < l2 + h2; ++m) mask(0, feedback(m)) = 1;
  return mask;
}

std::size_t allowed_weight_count(const WrnnTopology& t) {
  const auto mask = wrnn_mask(t);
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < mask.size(); ++i) count += mask.data()[i] ? 1 : 0;
  return count;
}

rnn::Rnn assemble_wrnn(const WrnnTopology& t, const rnn::RnnConfig& base) {
  t.validate();
  rnn::RnnConfig cfg = base;
  cfg.p = t.external_inputs();
  cfg.N = t.neurons();
  cfg.activation = rnn::ActivationKind::rbf_wavelet;
  std::vector<rnn::Activation> acts(static_cast<std::size_t>(cfg.N),
                                    rnn::Activation{rnn::ActivationKind::rbf_wavelet, cfg.beta});
  acts[0] = rnn::Activation{rnn::ActivationKind::linear, cfg.beta};
  return rnn::Rnn(cfg, std::move(acts), wrnn_mask(t));
}

}  // namespace wrnn::pipeline
