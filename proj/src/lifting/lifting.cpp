#include "wrnn/lifting/lifting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "wrnn/common/error.hpp"

namespace wrnn::lifting {
namespace {

std::ptrdiff_t mirror(std::ptrdiff_t i, std::ptrdiff_t n) {
  const std::ptrdiff_t period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

// Lagrange interpolant through (nodes[k], values[k]) evaluated at t.
double lagrange(std::span<const double> values, std::ptrdiff_t first_node, std::ptrdiff_t t) {
  const auto count = static_cast<std::ptrdiff_t>(values.size());
  double sum = 0.0;
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    double w = 1.0;
    for (std::ptrdiff_t m = 0; m < count; ++m) {
      if (m != k) w *= static_cast<double>(t - first_node - m) / static_cast<double>(k - m);
    }
    sum += w * values[static_cast<std::size_t>(k)];
  }
  return sum;
}

std::pair<std::vector<double>, std::vector<double>> run_forward(std::span<const double> xe,
                                                                std::span<const double> xo,
                                                                const LiftingStage& stage) {
  if (stage.order == StageOrder::predict_then_update) {
    auto d = predict_step(xo, xe, stage);
    auto c = update_step(xe, d, stage);
    return {std::move(c), std::move(d)};
  }
  return update_first_stage(xe, xo, stage);
}

std::vector<double> invert_update_first(std::span<const double> c, std::span<const double> d,
                                        const LiftingStage& stage) {
  if (!stage.P.is_linear() || !stage.U.is_linear()) {
    fail(ErrorCode::NonInvertibleStage, "update-first stages need linear operators to invert");
  }
  const std::size_t ne = c.size(), no = d.size(), n = ne + no;
  // columns of the forward map on the unknowns [x_e; x_o]
  Eigen::MatrixXd F(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<double> xe(ne, 0.0), xo(no, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    double& unit = col < ne ? xe[col] : xo[col - ne];
    unit = 1.0;
    const auto [cc, dd] = update_first_stage(xe, xo, stage);
    for (std::size_t r = 0; r < ne; ++r) F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = cc[r];
    for (std::size_t r = 0; r < no; ++r) F(static_cast<Eigen::Index>(ne + r), static_cast<Eigen::Index>(col)) = dd[r];
    unit = 0.0;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(F);
  qr.setThreshold(1e-12);
  if (qr.rank() < static_cast<Eigen::Index>(n)) {
    fail(ErrorCode::NonInvertibleStage, "update-first stage map is singular (rank " +
                                            std::to_string(qr.rank()) + " of " +
                                            std::to_string(n) + ")");
  }
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < ne; ++r) rhs(static_cast<Eigen::Index>(r)) = c[r];
  for (std::size_t r = 0; r < no; ++r) rhs(static_cast<Eigen::Index>(ne + r)) = d[r];
  const Eigen::VectorXd sol = qr.solve(rhs);
  std::vector<double> even(ne), odd(no);
  for (std::size_t r = 0; r < ne; ++r) even[r] = sol(static_cast<Eigen::Index>(r));
  for (std::size_t r = 0; r < no; ++r) odd[r] = sol(static_cast<Eigen::Index>(ne + r));
  return merge(even, odd);
}

}  // namespace

std::string_view extension_name(Extension e) {
  return e == Extension::symmetric ? "symmetric" : "polynomial";
}

Extension parse_extension(std::string_view name) {
  if (name == "symmetric") return Extension::symmetric;
  if (name == "polynomial") return Extension::polynomial;
  fail(ErrorCode::InvalidArgument, "unknown extension '" + std::string(name) + "'");
}

std::string_view stage_order_name(StageOrder order) {
  return order == StageOrder::predict_then_update ? "predict_then_update" : "update_then_predict";
}

StageOrder parse_stage_order(std::string_view name) {
  if (name == "predict_then_update") return StageOrder::predict_then_update;
  if (name == "update_then_predict") return StageOrder::update_then_predict;
  fail(ErrorCode::InvalidArgument, "unknown stage order '" + std::string(name) + "'");
}

double extended_sample(std::span<const double> src, std::ptrdiff_t i, Extension extension,
                       int degree) {
  const auto n = static_cast<std::ptrdiff_t>(src.size());
  if (i >= 0 && i < n) return src[static_cast<std::size_t>(i)];
  if (extension == Extension::symmetric || degree <= 0) {
    return src[static_cast<std::size_t>(mirror(i, n))];
  }
  const std::ptrdiff_t count = std::min<std::ptrdiff_t>(degree + 1, n);
  const std::ptrdiff_t first = i < 0 ? 0 : n - count;
  return lagrange(src.subspan(static_cast<std::size_t>(first), static_cast<std::size_t>(count)),
                  first, i);
}

bool LiftingOperator::is_zero() const {
  return !nonlinear && std::all_of(taps.begin(), taps.end(), [](double t) { return t == 0.0; });
}

LiftingOperator LiftingOperator::predictor(std::vector<double> taps) {
  LiftingOperator op;
  op.offset = -static_cast<std::ptrdiff_t>((std::max<std::size_t>(taps.size(), 1) - 1) / 2);
  op.taps = std::move(taps);
  return op;
}

LiftingOperator LiftingOperator::updater(std::vector<double> taps) {
  LiftingOperator op;
  op.offset = -static_cast<std::ptrdiff_t>(taps.size() / 2);
  op.taps = std::move(taps);
  return op;
}

LiftingOperator LiftingOperator::custom(Rule rule) {
  LiftingOperator op;
  op.nonlinear = std::move(rule);
  return op;
}

double LiftingOperator::at(std::span<const double> src, std::size_t n) const {
  if (nonlinear) return nonlinear(src, n);
  double sum = 0.0;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (taps[i] == 0.0) continue;
    const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(n) + offset + static_cast<std::ptrdiff_t>(i);
    sum += taps[i] * extended_sample(src, idx, extension, extrapolation_degree);
  }
  return sum;
}

std::vector<double> LiftingOperator::apply(std::span<const double> src, std::size_t count) const {
  if (src.empty()) fail(ErrorCode::EmptyInput, "lifting operator applied to an empty sequence");
  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = at(src, n);
  return out;
}

LiftingStage haar_stage() {
  LiftingStage s;
  s.P = LiftingOperator::predictor({1.0});
  s.U = LiftingOperator::updater({0.5});
  s.n_constraints = 1;
  s.n_tilde = 1;
  return s;
}

std::pair<std::vector<double>, std::vector<double>> split(std::span<const double> x) {
  if (x.size() < 2) fail(ErrorCode::TooShort, "split needs at least two samples");
  std::vector<double> even, odd;
  even.reserve((x.size() + 1) / 2);
  odd.reserve(x.size() / 2);
  for (std::size_t i = 0; i < x.size(); ++i) (i % 2 == 0 ? even : odd).push_back(x[i]);
  return {std::move(even), std::move(odd)};
}

std::vector<double> merge(std::span<const double> even, std::span<const double> odd) {
  if (even.size() != odd.size() && even.size() != odd.size() + 1) {
    fail(ErrorCode::LengthMismatch, "even/odd lengths " + std::to_string(even.size()) + "/" +
                                        std::to_string(odd.size()) + " cannot be merged");
  }
  std::vector<double> x;
  x.reserve(even.size() + odd.size());
  for (std::size_t n = 0; n < even.size(); ++n) {
    x.push_back(even[n]);
    if (n < odd.size()) x.push_back(odd[n]);
  }
  return x;
}

std::vector<double> predict_step(std::span<const double> x_odd, std::span<const double> x_even,
                                 const LiftingStage& stage) {
  if (x_odd.empty() || x_even.empty()) fail(ErrorCode::EmptyInput, "predict step on empty input");
  std::vector<double> d = stage.P.apply(x_even, x_odd.size());
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = x_odd[n] - d[n];
  return d;
}

std::vector<double> update_step(std::span<const double> x_even, std::span<const double> d,
                                const LiftingStage& stage) {
  if (d.empty() || (d.size() != x_even.size() && d.size() + 1 != x_even.size())) {
    fail(ErrorCode::LengthMismatch, "update step: " + std::to_string(x_even.size()) +
                                        " even samples vs " + std::to_string(d.size()) +
                                        " details");
  }
  std::vector<double> c = stage.U.apply(d, x_even.size());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] += x_even[n];
  return c;
}

std::pair<std::vector<double>, std::vector<double>> update_first_stage(
    std::span<const double> x_even, std::span<const double> x_odd, const LiftingStage& stage) {
  if (x_odd.empty() || (x_odd.size() != x_even.size() && x_odd.size() + 1 != x_even.size())) {
    fail(ErrorCode::LengthMismatch, "update-first stage: " + std::to_string(x_even.size()) +
                                        " even vs " + std::to_string(x_odd.size()) + " odd");
  }
  std::vector<double> c = stage.U.apply(x_odd, x_even.size());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] += x_even[n];
  std::vector<double> d = stage.P.apply(x_even, x_odd.size());
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = c[n] - d[n];
  return {std::move(c), std::move(d)};
}

std::pair<std::vector<double>, std::vector<double>> forward_stage(std::span<const double> x,
                                                                  const LiftingStage& stage) {
  const auto [xe, xo] = split(x);
  return run_forward(xe, xo, stage);
}

std::vector<double> inverse_stage(std::span<const double> c, std::span<const double> d,
                                  const LiftingStage& stage) {
  if (d.empty() || (c.size() != d.size() && c.size() != d.size() + 1)) {
    fail(ErrorCode::StageMismatch, "bands of length " + std::to_string(c.size()) + " and " +
                                       std::to_string(d.size()) + " do not form a stage");
  }
  if (stage.order == StageOrder::update_then_predict) return invert_update_first(c, d, stage);
  std::vector<double> even = stage.U.apply(d, c.size());
  for (std::size_t n = 0; n < even.size(); ++n) even[n] = c[n] - even[n];
  std::vector<double> odd = stage.P.apply(even, d.size());
  for (std::size_t n = 0; n < odd.size(); ++n) odd[n] += d[n];
  return merge(even, odd);
}

std::vector<std::string> LiftingPyramid::band_names() const {
  std::vector<std::string> names{"a" + std::to_string(levels)};
  for (int j = 1; j <= levels; ++j) names.push_back("d" + std::to_string(j));
  return names;
}

const std::vector<double>& LiftingPyramid::band(const std::string& name) const {
  if (name == "a" + std::to_string(levels)) return residue;
  for (int j = 1; j <= levels; ++j) {
    if (name == "d" + std::to_string(j)) return details[static_cast<std::size_t>(j - 1)];
  }
  fail(ErrorCode::UnknownBand, "unknown band '" + name + "'");
}

StageBuilder fixed_builder(LiftingStage stage) {
  return [stage = std::move(stage)](std::span<const double>, std::span<const double>, int) {
    return stage;
  };
}

StageBuilder haar_builder() { return fixed_builder(haar_stage()); }

StageBuilder adaptive_builder(AdaptiveOptions options) {
  return [options](std::span<const double> xe, std::span<const double> xo, int) {
    const auto X = design_matrix(xe, xo.size(), options.max_taps, options.n_constraints);
    // short coarse levels may not pin every free direction; take the
    // minimum-norm optimum there
    std::vector<double> p =
        fit_predictor(xo, X, options.n_constraints, FitOptions{.allow_rank_deficient = true});
    LiftingStage s;
    s.P = fitted_predictor(std::move(p), options.n_constraints);
    s.U = LiftingOperator::updater(options.updater);
    s.n_constraints = options.n_constraints;
    s.n_tilde = options.n_tilde;
    return s;
  };
}

LiftingPyramid lifting_forward(std::span<const double> x, int levels, const StageBuilder& builder) {
  if (levels < 1) fail(ErrorCode::BadLevels, "levels must be >= 1");
  if (levels >= 63 || x.size() < (std::size_t{1} << levels)) {
    fail(ErrorCode::TooShort, "signal of length " + std::to_string(x.size()) +
                                  " is too short for " + std::to_string(levels) + " levels");
  }
  LiftingPyramid p;
  p.levels = levels;
  p.original_length = x.size();
  std::vector<double> current(x.begin(), x.end());
  for (int j = 1; j <= levels; ++j) {
    const auto [xe, xo] = split(current);
    LiftingStage stage = builder(xe, xo, j);
    auto [c, d] = run_forward(xe, xo, stage);
    p.details.push_back(std::move(d));
    p.stages.push_back(std::move(stage));
    current = std::move(c);
  }
  p.residue = std::move(current);
  return p;
}

std::vector<double> lifting_inverse(const LiftingPyramid& p) {
  if (p.levels < 1 || p.details.size() != static_cast<std::size_t>(p.levels) ||
      p.stages.size() != static_cast<std::size_t>(p.levels)) {
    fail(ErrorCode::StageMismatch, "pyramid has " + std::to_string(p.stages.size()) +
                                       " stages for " + std::to_string(p.levels) + " levels");
  }
  std::vector<double> current = p.residue;
  for (int j = p.levels; j >= 1; --j) {
    current = inverse_stage(current, p.detail(j), p.stages[static_cast<std::size_t>(j - 1)]);
  }
  if (current.size() != p.original_length) {
    fail(ErrorCode::StageMismatch, "reconstructed " + std::to_string(current.size()) +
                                       " samples, expected " + std::to_string(p.original_length));
  }
  return current;
}

double haar_residue_scale(int level) { return std::pow(2.0, 0.5 * level); }
double haar_detail_scale(int level) { return -std::pow(2.0, 0.5 * level - 1.0); }

}  // namespace wrnn::lifting
