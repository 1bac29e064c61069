#pragma once

#include <cstddef>
#include <vector>

#include "wrnn/rnn/rtrl.hpp"

namespace wrnn::pipeline {

/// Layered WRNN: delayed coefficient vectors feed hidden layer 1, which
/// feeds hidden layer 2, which feeds a single linear output neuron whose
/// previous value is fed back into layer 1.
struct WrnnTopology {
  int input_width = 12;  ///< 4 coefficients x 3 channels
  std::vector<int> hidden{16, 16};
  int output = 1;
  int input_delay_taps = 3;
  int output_feedback_taps = 1;

  /// Throws InvalidArgument unless there are exactly two even, positive
  /// hidden layers, one output and one feedback tap.
  void validate() const;
  int neurons() const;
  int external_inputs() const { return input_width * input_delay_taps; }
};

/// Neuron order inside the recurrent net: 0 is the output, then layer 1,
/// then layer 2.
int layer1_first(const WrnnTopology& t);
int layer2_first(const WrnnTopology& t);

/// Allowed edges: inputs -> layer 1, output feedback -> layer 1,
/// layer 1 -> layer 2, layer 2 -> output, one bias per neuron.
rnn::Rnn::Mask wrnn_mask(const WrnnTopology& t);
std::size_t allowed_weight_count(const WrnnTopology& t);

/// Masked Williams-Zipser realisation: rbf_wavelet hidden neurons, linear
/// output. eta, beta, clip and seed come from base; p and N are derived.
rnn::Rnn assemble_wrnn(const WrnnTopology& t, const rnn::RnnConfig& base);

}  // namespace wrnn::pipeline
