#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "test_util.hpp"
#include "wrnn/common/error.hpp"
#include "wrnn/lifting/lifting.hpp"
#include "wrnn/wavelets/dwt.hpp"

namespace wrnn::lifting {
namespace {

using test::max_abs_diff;
using test::random_signal;
using V = std::vector<double>;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

LiftingStage stage_of(V p, V u, StageOrder order = StageOrder::predict_then_update) {
  LiftingStage s;
  s.order = order;
  s.P = LiftingOperator::predictor(std::move(p));
  s.U = LiftingOperator::updater(std::move(u));
  return s;
}

double sq(const V& v) { return std::inner_product(v.begin(), v.end(), v.begin(), 0.0); }

V residual(const V& y, const std::vector<V>& X, const V& p) {
  V e(y.size());
  for (std::size_t n = 0; n < y.size(); ++n) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += X[n][i] * p[i];
    e[n] = y[n] - s;
  }
  return e;
}

TEST(Split, Examples) {
  auto [e, o] = split(V{1, 2, 3, 4});
  EXPECT_EQ(e, (V{1, 3}));
  EXPECT_EQ(o, (V{2, 4}));
  std::tie(e, o) = split(V{1, 2});
  EXPECT_EQ(e, V{1});
  EXPECT_EQ(o, V{2});
  std::tie(e, o) = split(V{1, 2, 3});
  EXPECT_EQ(e, (V{1, 3}));
  EXPECT_EQ(o, V{2});
  EXPECT_EQ(merge(e, o), (V{1, 2, 3}));
  EXPECT_EQ(code_of([] { split(V{1}); }), ErrorCode::TooShort);
  EXPECT_EQ(code_of([] { merge(V{1}, V{1, 2}); }), ErrorCode::LengthMismatch);
}

TEST(PredictStep, Examples) {
  EXPECT_EQ(predict_step(V{4}, V{2}, haar_stage()), V{2});
  const V odd{3, -1, 7};
  EXPECT_EQ(predict_step(odd, V{5, 6, 8}, stage_of({0.0, 0.0}, {})), odd);

  V x(32);
  std::iota(x.begin(), x.end(), 0.0);
  const auto [e, o] = split(x);
  const V d = predict_step(o, e, stage_of({0.5, 0.5}, {}));
  for (std::size_t n = 0; n + 1 < d.size(); ++n) EXPECT_EQ(d[n], 0.0) << n;
  EXPECT_EQ(code_of([] { predict_step(V{}, V{1}, haar_stage()); }), ErrorCode::EmptyInput);
}

TEST(UpdateStep, Examples) {
  const LiftingStage haar = haar_stage();
  const V d = predict_step(V{4}, V{2}, haar);
  EXPECT_EQ(update_step(V{2}, d, haar), V{3});

  const V even{1, 5, 9};
  EXPECT_EQ(update_step(even, V{4, 2, 1}, stage_of({1}, {0.0})), even);

  const V c(16, 2.5);
  const auto [ce, cd] = forward_stage(c, haar);
  for (double v : ce) EXPECT_EQ(v, 2.5);
  for (double v : cd) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(code_of([&] { update_step(V{1, 2, 3}, V{1}, haar); }), ErrorCode::LengthMismatch);
}

TEST(UpdateFirst, ZeroOperators) {
  const V xe{1, 2, 3}, xo{7, 8, 9};
  const auto [c, d] = update_first_stage(xe, xo, stage_of({0.0}, {0.0}, StageOrder::update_then_predict));
  EXPECT_EQ(c, xe);
  EXPECT_EQ(d, xe);
}

TEST(UpdateFirst, ConstantHandEvaluation) {
  const double k = 4.0;
  const auto [c, d] = forward_stage(V(4, k), stage_of({1}, {0.5}, StageOrder::update_then_predict));
  EXPECT_EQ(c, (V{1.5 * k, 1.5 * k}));
  EXPECT_EQ(d, (V{0.5 * k, 0.5 * k}));
}

TEST(UpdateFirst, CoarseBandIndependentOfPredictor) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const V x = random_signal(rng, 64);
    const V u = random_signal(rng, 3);
    const auto a = forward_stage(x, stage_of(random_signal(rng, 4), u, StageOrder::update_then_predict));
    LiftingStage nonlinear = stage_of({}, u, StageOrder::update_then_predict);
    nonlinear.P = LiftingOperator::custom([](std::span<const double> s, std::size_t n) {
      return std::tanh(s[n]) * 3.0;
    });
    const auto b = forward_stage(x, nonlinear);
    EXPECT_EQ(a.first, b.first);
  }
}

TEST(UpdateFirst, InvertsAndDetectsSingularMaps) {
  Rng rng(6);
  for (std::size_t n : {std::size_t{2}, std::size_t{9}, std::size_t{64}}) {
    const V x = random_signal(rng, n);
    const LiftingStage s = stage_of({1}, {0.5}, StageOrder::update_then_predict);
    const auto [c, d] = forward_stage(x, s);
    EXPECT_LT(max_abs_diff(inverse_stage(c, d, s), x), 1e-12);
  }
  const LiftingStage singular = stage_of({1}, {0.0}, StageOrder::update_then_predict);
  const auto [c, d] = forward_stage(V{1, 2, 3, 4}, singular);
  EXPECT_EQ(code_of([&] { inverse_stage(c, d, singular); }), ErrorCode::NonInvertibleStage);
}

TEST(InverseStage, HaarPair) {
  const auto [c, d] = forward_stage(V{2, 4}, haar_stage());
  EXPECT_EQ(c, V{3});
  EXPECT_EQ(d, V{2});
  EXPECT_EQ(inverse_stage(c, d, haar_stage()), (V{2, 4}));
  EXPECT_EQ(code_of([] { inverse_stage(V{1, 2, 3}, V{1}, haar_stage()); }), ErrorCode::StageMismatch);
}

TEST(InverseStage, NonlinearPredictorAndUpdater) {
  Rng rng(17);
  LiftingStage s;
  // clamped median of three neighbours
  s.P = LiftingOperator::custom([](std::span<const double> src, std::size_t n) {
    const auto at = [&](std::ptrdiff_t i) {
      return extended_sample(src, i, Extension::symmetric, 0);
    };
    double m[3] = {at(static_cast<std::ptrdiff_t>(n) - 1), at(static_cast<std::ptrdiff_t>(n)),
                   at(static_cast<std::ptrdiff_t>(n) + 1)};
    std::sort(m, m + 3);
    return std::clamp(m[1], -0.5, 0.5);
  });
  s.U = LiftingOperator::custom([](std::span<const double> d, std::size_t n) {
    return 0.25 * std::sin(d[std::min(n, d.size() - 1)]);
  });
  for (int trial = 0; trial < 200; ++trial) {
    const V x = random_signal(rng, 20 + static_cast<std::size_t>(trial % 17));
    const auto [c, d] = forward_stage(x, s);
    EXPECT_LT(max_abs_diff(inverse_stage(c, d, s), x), 1e-15);
  }
}

TEST(InverseStage, RandomFourTapStages) {
  Rng rng(1000);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const V x = random_signal(rng, 128);
    const LiftingStage s = stage_of(random_signal(rng, 4), random_signal(rng, 4));
    const auto [c, d] = forward_stage(x, s);
    worst = std::max(worst, max_abs_diff(inverse_stage(c, d, s), x));
  }
  EXPECT_LT(worst, 1e-11);
}

TEST(FitPredictor, SinglePointConstraint) {
  Rng rng(2);
  const V xe = random_signal(rng, 30), xo = random_signal(rng, 30);
  const V p = fit_predictor(xo, design_matrix(xe, xo.size(), 1, 1), 1);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p[0], 1.0, 1e-12);
}

TEST(FitPredictor, OrderZeroConstraintHolds) {
  Rng rng(3);
  for (int M = 1; M <= 6; ++M) {
    for (int N = 1; N <= M; ++N) {
      const V x = random_signal(rng, 101);
      const auto [xe, xo] = split(x);
      const V p = fit_predictor(xo, design_matrix(xe, xo.size(), M, N), N);
      EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12) << M << "," << N;
    }
  }
}

TEST(FitPredictor, PolynomialSuppression) {
  Rng rng(12);
  for (int M = 1; M <= 6; ++M) {
    for (int N = 1; N <= M; ++N) {
      // degree N-1 polynomial on [-1, 1]; odd length exercises the trailing sample
      const V coef = random_signal(rng, static_cast<std::size_t>(N));
      V x(97);
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = -1.0 + 2.0 * static_cast<double>(i) / 96.0;
        double v = 0.0;
        for (auto c = coef.rbegin(); c != coef.rend(); ++c) v = v * t + *c;
        x[i] = v + 0.01 * rng.uniform();  // noise only to make the fit nontrivial
      }
      const auto [xe, xo] = split(x);
      const V p = fit_predictor(xo, design_matrix(xe, xo.size(), M, N), N,
                                FitOptions{.allow_rank_deficient = true});
      // apply the fitted predictor to the clean polynomial
      V clean(97);
      for (std::size_t i = 0; i < clean.size(); ++i) {
        const double t = -1.0 + 2.0 * static_cast<double>(i) / 96.0;
        double v = 0.0;
        for (auto c = coef.rbegin(); c != coef.rend(); ++c) v = v * t + *c;
        clean[i] = v;
      }
      LiftingStage s;
      s.P = fitted_predictor(p, N);
      const auto [ce, co] = split(clean);
      const V d = predict_step(co, ce, s);
      for (double v : d) EXPECT_LT(std::abs(v), 1e-8) << "M=" << M << " N=" << N;
    }
  }
}

TEST(FitPredictor, MatchesKktOracleAndBeatsCubicInterpolation) {
  Rng rng(77);
  const int M = 4, N = 2;
  V x(256);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::sin(0.37 * static_cast<double>(i)) + 0.3 * rng.normal();
  }
  const auto [xe, xo] = split(x);
  const auto X = design_matrix(xe, xo.size(), M, N);
  const V p = fit_predictor(xo, X, N);

  // oracle: Lagrange (KKT) system of the same constrained problem
  const auto A = moment_constraints(M, N);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(M + N, M + N);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M + N);
  for (std::size_t n = 0; n < X.size(); ++n) {
    for (int i = 0; i < M; ++i) {
      rhs(i) += X[n][i] * xo[n];
      for (int k = 0; k < M; ++k) K(i, k) += X[n][i] * X[n][k];
    }
  }
  for (int m = 0; m < N; ++m) {
    for (int i = 0; i < M; ++i) K(M + m, i) = K(i, M + m) = A[m][i];
  }
  rhs(M) = 1.0;
  const Eigen::VectorXd kkt = K.fullPivLu().solve(rhs);
  for (int i = 0; i < M; ++i) EXPECT_NEAR(p[i], kkt(i), 1e-9);

  const double fitted = sq(residual(xo, X, p));
  const double cubic = sq(residual(xo, X, {-1.0 / 16, 9.0 / 16, 9.0 / 16, -1.0 / 16}));
  EXPECT_LE(fitted, cubic);

  // no feasible perturbation improves the fit
  Rng prng(5);
  for (int trial = 0; trial < 200; ++trial) {
    V q = p;
    // the two-dimensional nullspace of {sum p, sum p t}: second differences
    const double a = prng.uniform(-0.1, 0.1), b = prng.uniform(-0.1, 0.1);
    q[0] += a;
    q[1] -= 2 * a - b;
    q[2] += a - 2 * b;
    q[3] += b;
    EXPECT_GE(sq(residual(xo, X, q)), fitted - 1e-12);
  }
}

TEST(FitPredictor, Errors) {
  Rng rng(9);
  const V xe = random_signal(rng, 20), xo = random_signal(rng, 20);
  EXPECT_EQ(code_of([&] { fit_predictor(xo, design_matrix(xe, 20, 2, 1), 3); }),
            ErrorCode::InfeasibleConstraints);
  const V line_e{0, 2, 4, 6, 8, 10, 12, 14}, line_o{1, 3, 5, 7, 9, 11, 13, 15};
  EXPECT_EQ(code_of([&] { fit_predictor(line_o, design_matrix(line_e, 8, 4, 2), 2); }),
            ErrorCode::RankDeficient);
  EXPECT_EQ(code_of([&] { fit_predictor(V{1, 2}, design_matrix(xe, 2, 4, 1), 1); }),
            ErrorCode::RankDeficient);
  // allowed: minimum-norm fallback still honours the constraints
  const V p = fit_predictor(line_o, design_matrix(line_e, 8, 4, 2), 2,
                            FitOptions{.allow_rank_deficient = true});
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
}

TEST(LiftingForward, ConstantHaarHasZeroDetails) {
  const auto p = lifting_forward(V(64, 1.25), 3, haar_builder());
  for (const auto& d : p.details) {
    for (double v : d) EXPECT_EQ(v, 0.0);
  }
  for (double v : p.residue) EXPECT_EQ(v, 1.25);
}

TEST(LiftingForward, HaarMatchesFilterBank) {
  Rng rng(256);
  const auto fb = wavelets::filter_bank(wavelets::Family::haar);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const V x = random_signal(rng, 256);
    const int J = 1 + trial % 8;
    const auto lift = lifting_forward(x, J, haar_builder());
    const auto ref = wavelets::dwt(x, fb, J, wavelets::BoundaryMode::periodic);
    ASSERT_EQ(lift.residue.size(), ref.residue.size());
    for (std::size_t k = 0; k < ref.residue.size(); ++k) {
      worst = std::max(worst, std::abs(haar_residue_scale(J) * lift.residue[k] - ref.residue[k]));
    }
    for (int j = 1; j <= J; ++j) {
      ASSERT_EQ(lift.detail(j).size(), ref.detail(j).size());
      for (std::size_t k = 0; k < ref.detail(j).size(); ++k) {
        worst = std::max(worst, std::abs(haar_detail_scale(j) * lift.detail(j)[k] - ref.detail(j)[k]));
      }
    }
    EXPECT_LT(max_abs_diff(lifting_inverse(lift), x), 1e-12);
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(LiftingForward, AdaptiveBeatsHaarOnPiecewiseLinear) {
  Rng rng(41);
  V x(512);
  double value = 0.0, slope = 0.3;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i % 97 == 0) slope = rng.uniform(-1, 1);
    value += slope;
    x[i] = value;
  }
  const auto haar = lifting_forward(x, 4, haar_builder());
  const auto adaptive = lifting_forward(x, 4, adaptive_builder());
  double e_haar = 0.0, e_adaptive = 0.0;
  for (int j = 1; j <= 4; ++j) {
    e_haar += sq(haar.detail(j));
    e_adaptive += sq(adaptive.detail(j));
  }
  EXPECT_LE(e_adaptive, e_haar);
  EXPECT_LT(max_abs_diff(lifting_inverse(adaptive), x), 1e-9);
}

TEST(LiftingForward, AdaptivePerLevelRefitAndOddLengths) {
  Rng rng(55);
  for (std::size_t n : {std::size_t{37}, std::size_t{200}, std::size_t{513}}) {
    const V x = random_signal(rng, n, 5.0);
    const auto p = lifting_forward(x, 4, adaptive_builder());
    ASSERT_EQ(p.stages.size(), 4u);
    std::size_t len = n;
    for (int j = 1; j <= 4; ++j) {
      EXPECT_EQ(p.detail(j).size(), len / 2);
      len = (len + 1) / 2;
    }
    EXPECT_EQ(p.residue.size(), len);
    EXPECT_NE(p.stages[0].P.taps, p.stages[1].P.taps);
    EXPECT_LT(max_abs_diff(lifting_inverse(p), x), 1e-11 * 5.0 * 16);
  }
}

TEST(LiftingForward, Errors) {
  EXPECT_EQ(code_of([] { lifting_forward(V(7, 1.0), 3, haar_builder()); }), ErrorCode::TooShort);
  EXPECT_EQ(code_of([] { lifting_forward(V(8, 1.0), 0, haar_builder()); }), ErrorCode::BadLevels);
  auto p = lifting_forward(V(8, 1.0), 3, haar_builder());
  p.stages.pop_back();
  EXPECT_EQ(code_of([&] { lifting_inverse(p); }), ErrorCode::StageMismatch);
}

TEST(LiftingIo, RoundTripAndNonlinearRejected) {
  test::TempDir dir("lift");
  Rng rng(8);
  const V x = random_signal(rng, 301);
  const auto p = lifting_forward(x, 3, adaptive_builder());
  write_lifting_pyramid(dir.path(), p);
  const auto q = read_lifting_pyramid(dir.path());
  EXPECT_EQ(q.residue, p.residue);
  EXPECT_EQ(q.details, p.details);
  ASSERT_EQ(q.stages.size(), 3u);
  EXPECT_EQ(q.stages[1].P.taps, p.stages[1].P.taps);
  EXPECT_LT(max_abs_diff(lifting_inverse(q), x), 1e-11);

  auto nl = p;
  nl.stages[0].P = LiftingOperator::custom([](std::span<const double> s, std::size_t n) { return s[n]; });
  EXPECT_EQ(code_of([&] { write_lifting_pyramid(dir / "nl", nl); }), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace wrnn::lifting
