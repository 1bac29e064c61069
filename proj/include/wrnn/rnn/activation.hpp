#pragma once

#include <cmath>
#include <string_view>

namespace wrnn::rnn {

enum class ActivationKind { logistic, rbf_wavelet, linear };

std::string_view activation_name(ActivationKind kind);
ActivationKind parse_activation(std::string_view name);

/// gamma^2 of the base bump f(x) = exp(-gamma^2 x^2), chosen so f(±1) = 0.01.
inline const double kRbfGammaSquared = std::log(100.0);

/// Base radial bump on [-1, 1].
double rbf_base(double x);

/// Odd, 2-periodic wavelet built from two half bumps:
///   r in (-1, 0): +f(2r + 1),  r in (0, 1): -f(2r - 1),
/// with r = x reduced into [-1, 1). Integers map to 0, which keeps the
/// function exactly odd despite the 0.01 jump of the half bumps there.
double rbf_wavelet(double x);
/// Derivative of the smooth branches; at integers both one-sided limits agree.
double rbf_wavelet_derivative(double x);

inline double logistic(double v, double beta) { return 1.0 / (1.0 + std::exp(-beta * v)); }

struct Activation {
  ActivationKind kind = ActivationKind::logistic;
  double beta = 1.0;  ///< logistic slope

  double operator()(double v) const;
  double derivative(double v) const;
};

}  // namespace wrnn::rnn
