#include <Eigen/Dense>
#include <cmath>

#include "wrnn/common/error.hpp"
#include "wrnn/lifting/lifting.hpp"

namespace wrnn::lifting {
namespace {

std::ptrdiff_t predictor_offset(int taps) { return -static_cast<std::ptrdiff_t>((taps - 1) / 2); }

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

std::vector<std::vector<double>> moment_constraints(int taps, int n_constraints) {
  std::vector<std::vector<double>> A(static_cast<std::size_t>(n_constraints),
                                     std::vector<double>(static_cast<std::size_t>(taps)));
  const std::ptrdiff_t offset = predictor_offset(taps);
  for (int i = 0; i < taps; ++i) {
    const double t = static_cast<double>(offset + i) - 0.5;
    double power = 1.0;
    for (int m = 0; m < n_constraints; ++m) {
      A[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] = power;
      power *= t;
    }
  }
  return A;
}

LiftingOperator fitted_predictor(std::vector<double> taps, int n_constraints) {
  LiftingOperator op = LiftingOperator::predictor(std::move(taps));
  if (n_constraints > 1) {
    op.extension = Extension::polynomial;
    op.extrapolation_degree = n_constraints - 1;
  }
  return op;
}

std::vector<std::vector<double>> design_matrix(std::span<const double> x_even,
                                               std::size_t odd_count, int taps,
                                               int n_constraints) {
  if (taps < 1) fail(ErrorCode::InvalidArgument, "predictor needs at least one tap");
  if (x_even.empty()) fail(ErrorCode::EmptyInput, "design matrix from an empty sequence");
  const LiftingOperator layout =
      fitted_predictor(std::vector<double>(static_cast<std::size_t>(taps), 0.0), n_constraints);
  std::vector<std::vector<double>> X(odd_count, std::vector<double>(static_cast<std::size_t>(taps)));
  for (std::size_t n = 0; n < odd_count; ++n) {
    for (int i = 0; i < taps; ++i) {
      X[n][static_cast<std::size_t>(i)] =
          extended_sample(x_even, static_cast<std::ptrdiff_t>(n) + layout.offset + i,
                          layout.extension, layout.extrapolation_degree);
    }
  }
  return X;
}

std::vector<double> fit_predictor(std::span<const double> x_odd,
                                  const std::vector<std::vector<double>>& X, int n_constraints,
                                  FitOptions options) {
  if (X.empty()) fail(ErrorCode::RankDeficient, "empty design matrix");
  const std::size_t M = X.front().size();
  if (M == 0) fail(ErrorCode::InvalidArgument, "design matrix has no columns");
  if (n_constraints < 0) fail(ErrorCode::InvalidArgument, "negative constraint count");
  if (static_cast<std::size_t>(n_constraints) > M) {
    fail(ErrorCode::InfeasibleConstraints, std::to_string(n_constraints) +
                                               " polynomial constraints need at least as many taps, got " +
                                               std::to_string(M));
  }
  if (x_odd.size() != X.size()) {
    fail(ErrorCode::LengthMismatch, "design matrix has " + std::to_string(X.size()) +
                                        " rows for " + std::to_string(x_odd.size()) + " targets");
  }
  if (X.size() < M && !options.allow_rank_deficient) {
    fail(ErrorCode::RankDeficient, "only " + std::to_string(X.size()) + " rows for " +
                                       std::to_string(M) + " taps");
  }
  const std::size_t N = static_cast<std::size_t>(n_constraints);
  const std::size_t rows = X.size();

  Eigen::MatrixXd Xm(idx(rows), idx(M));
  for (std::size_t r = 0; r < rows; ++r) {
    if (X[r].size() != M) fail(ErrorCode::LengthMismatch, "ragged design matrix");
    for (std::size_t c = 0; c < M; ++c) Xm(idx(r), idx(c)) = X[r][c];
  }
  Eigen::VectorXd y(idx(rows));
  for (std::size_t r = 0; r < rows; ++r) y(idx(r)) = x_odd[r];

  // particular solution p0 and nullspace basis Z of the constraints A p = e0
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(idx(M));
  Eigen::MatrixXd Z = Eigen::MatrixXd::Identity(idx(M), idx(M));
  if (N > 0) {
    const auto rowsA = moment_constraints(static_cast<int>(M), n_constraints);
    Eigen::MatrixXd At(idx(M), idx(N));
    for (std::size_t m = 0; m < N; ++m) {
      for (std::size_t i = 0; i < M; ++i) At(idx(i), idx(m)) = rowsA[m][i];
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(At);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(idx(M), idx(M));
    const Eigen::MatrixXd R = qr.matrixQR().topRows(idx(N)).triangularView<Eigen::Upper>();
    for (std::size_t m = 0; m < N; ++m) {
      if (std::abs(R(idx(m), idx(m))) < 1e-12) {
        fail(ErrorCode::InfeasibleConstraints, "polynomial constraints are dependent");
      }
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(idx(N));
    b(0) = 1.0;
    const Eigen::VectorXd w = R.transpose().triangularView<Eigen::Lower>().solve(b);
    p0 = Q.leftCols(idx(N)) * w;
    Z = Q.rightCols(idx(M - N));
  }
  if (M == N || rows == 0) {
    return std::vector<double>(p0.data(), p0.data() + p0.size());
  }

  const Eigen::MatrixXd B = Xm * Z;
  const Eigen::VectorXd r = y - Xm * p0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double scale = std::max(Xm.norm(), 1e-300);
  const double tol = 1e-10 * scale;
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > tol ? 1 : 0;
  if (rank < static_cast<Eigen::Index>(M - N) && !options.allow_rank_deficient) {
    fail(ErrorCode::RankDeficient, "data determine " + std::to_string(rank) + " of " +
                                       std::to_string(M - N) + " free predictor directions");
  }
  Eigen::VectorXd q = Eigen::VectorXd::Zero(idx(M - N));
  for (Eigen::Index i = 0; i < rank; ++i) {
    q += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(r) / s(i));
  }
  const Eigen::VectorXd p = p0 + Z * q;
  return std::vector<double>(p.data(), p.data() + p.size());
}

}  // namespace wrnn::lifting
