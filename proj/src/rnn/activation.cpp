#include "wrnn/rnn/activation.hpp"

#include <string>

#include "wrnn/common/error.hpp"

namespace wrnn::rnn {
namespace {

// x reduced into [-1, 1)
double reduce(double x) { return x - 2.0 * std::floor((x + 1.0) / 2.0); }

double rbf_base_derivative(double x) { return -2.0 * kRbfGammaSquared * x * rbf_base(x); }

}  // namespace

std::string_view activation_name(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::logistic:
      return "logistic";
    case ActivationKind::rbf_wavelet:
      return "rbf_wavelet";
    case ActivationKind::linear:
      return "linear";
  }
  return "?";
}

ActivationKind parse_activation(std::string_view name) {
  if (name == "logistic") return ActivationKind::logistic;
  if (name == "rbf_wavelet") return ActivationKind::rbf_wavelet;
  if (name == "linear") return ActivationKind::linear;
  fail(ErrorCode::InvalidArgument, "unknown activation '" + std::string(name) + "'");
}

double rbf_base(double x) { return std::exp(-kRbfGammaSquared * x * x); }

double rbf_wavelet(double x) {
  const double r = reduce(x);
  if (r < 0.0 && r > -1.0) return rbf_base(2.0 * r + 1.0);
  if (r > 0.0) return -rbf_base(2.0 * r - 1.0);
  return 0.0;
}

double rbf_wavelet_derivative(double x) {
  const double r = reduce(x);
  if (r < 0.0 && r > -1.0) return 2.0 * rbf_base_derivative(2.0 * r + 1.0);
  if (r > 0.0) return -2.0 * rbf_base_derivative(2.0 * r - 1.0);
  // r = 0 (centre) or r = -1 (period edge): one-sided limits coincide
  return 2.0 * rbf_base_derivative(r == 0.0 ? 1.0 : -1.0);
}

double Activation::operator()(double v) const {
  switch (kind) {
    case ActivationKind::logistic:
      return logistic(v, beta);
    case ActivationKind::rbf_wavelet:
      return rbf_wavelet(v);
    case ActivationKind::linear:
      return v;
  }
  return v;
}

double Activation::derivative(double v) const {
  switch (kind) {
    case ActivationKind::logistic: {
      const double y = logistic(v, beta);
      return beta * y * (1.0 - y);
    }
    case ActivationKind::rbf_wavelet:
      return rbf_wavelet_derivative(v);
    case ActivationKind::linear:
      return 1.0;
  }
  return 1.0;
}

}  // namespace wrnn::rnn
