#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wrnn::lifting {

/// How taps that fall outside the source sequence are filled.
///  - symmetric: half-sample mirror, s[-1] = s[0]
///  - polynomial: Lagrange extrapolation through the nearest samples
enum class Extension { symmetric, polynomial };

std::string_view extension_name(Extension e);
Extension parse_extension(std::string_view name);

/// One lifting operator (P or U). Output n is
///   sum_i taps[i] * src[n + offset + i]
/// unless a nonlinear rule is set, in which case nonlinear(src, n) is used.
struct LiftingOperator {
  using Rule = std::function<double(std::span<const double> src, std::size_t n)>;

  std::vector<double> taps;
  std::ptrdiff_t offset = 0;
  Extension extension = Extension::symmetric;
  int extrapolation_degree = 0;  ///< used by Extension::polynomial
  Rule nonlinear;

  bool is_linear() const { return !nonlinear; }
  bool is_zero() const;

  /// Predictor layout: M taps centred on the odd sample between x_e[n] and
  /// x_e[n+1], offset = -floor((M-1)/2).
  static LiftingOperator predictor(std::vector<double> taps);
  /// Updater layout: taps centred on d[n-1], d[n], offset = -floor(M/2).
  static LiftingOperator updater(std::vector<double> taps);
  static LiftingOperator custom(Rule rule);

  double at(std::span<const double> src, std::size_t n) const;
  /// Evaluates outputs 0..count-1. Throws EmptyInput for an empty source.
  std::vector<double> apply(std::span<const double> src, std::size_t count) const;
};

/// Value src[i] for any integer i under the given extension.
double extended_sample(std::span<const double> src, std::ptrdiff_t i, Extension extension,
                       int degree);

enum class StageOrder { predict_then_update, update_then_predict };

std::string_view stage_order_name(StageOrder order);
StageOrder parse_stage_order(std::string_view name);

struct LiftingStage {
  StageOrder order = StageOrder::predict_then_update;
  LiftingOperator P;
  LiftingOperator U;
  int n_constraints = 0;  ///< N: polynomial orders suppressed by P
  int n_tilde = 0;        ///< Ñ: low orders preserved by U
};

/// p = [1], u = [1/2]: details are pair differences, coarse values pair means.
LiftingStage haar_stage();

/// Even samples x[2n] and odd samples x[2n+1]. For odd lengths the trailing
/// sample lands in the even set. Throws TooShort for fewer than two samples.
std::pair<std::vector<double>, std::vector<double>> split(std::span<const double> x);
/// Inverse of split. Throws LengthMismatch unless even has 0 or 1 extra sample.
std::vector<double> merge(std::span<const double> even, std::span<const double> odd);

/// d[n] = x_odd[n] - (P x_even)[n]. Throws EmptyInput.
std::vector<double> predict_step(std::span<const double> x_odd, std::span<const double> x_even,
                                 const LiftingStage& stage);
/// c[n] = x_even[n] + (U d)[n]. Throws LengthMismatch.
std::vector<double> update_step(std::span<const double> x_even, std::span<const double> d,
                                const LiftingStage& stage);
/// Update-first order: c[n] = x_e[n] + (U x_o)[n], d[n] = c[n] - (P x_e)[n],
/// with d one sample shorter than c for odd lengths.
std::pair<std::vector<double>, std::vector<double>> update_first_stage(
    std::span<const double> x_even, std::span<const double> x_odd, const LiftingStage& stage);

/// Forward stage in either order. Returns {c, d}.
std::pair<std::vector<double>, std::vector<double>> forward_stage(std::span<const double> x,
                                                                  const LiftingStage& stage);

/// Reconstructs the samples that produced (c, d). Predict-first stages are
/// inverted step by step and accept nonlinear operators. Update-first stages
/// require linear operators and are inverted by solving the stage's linear
/// map; NonInvertibleStage is thrown when that map is singular. Throws
/// StageMismatch when the band lengths cannot come from a forward stage.
std::vector<double> inverse_stage(std::span<const double> c, std::span<const double> d,
                                  const LiftingStage& stage);

/// Multilevel output: residue c^J, details d^1 (finest) .. d^J, plus the
/// stage used at each level.
struct LiftingPyramid {
  int levels = 0;
  std::size_t original_length = 0;
  std::vector<double> residue;
  std::vector<std::vector<double>> details;
  std::vector<LiftingStage> stages;  ///< stages[j-1] produced level j

  const std::vector<double>& detail(int level) const { return details.at(level - 1); }
  std::vector<std::string> band_names() const;
  const std::vector<double>& band(const std::string& name) const;
};

/// Chooses the stage for one level from that level's even and odd samples.
using StageBuilder = std::function<LiftingStage(std::span<const double> x_even,
                                                std::span<const double> x_odd, int level)>;

StageBuilder fixed_builder(LiftingStage stage);
StageBuilder haar_builder();

struct AdaptiveOptions {
  int n_constraints = 2;     ///< N
  int max_taps = 4;          ///< M
  std::vector<double> updater{0.25, 0.25};
  int n_tilde = 2;
};

/// Refits the predictor on every level by constrained least squares.
StageBuilder adaptive_builder(AdaptiveOptions options = {});

/// Throws BadLevels for levels < 1, TooShort when length(x) < 2^levels.
LiftingPyramid lifting_forward(std::span<const double> x, int levels, const StageBuilder& builder);
/// Throws StageMismatch when the stored stages do not fit the pyramid.
std::vector<double> lifting_inverse(const LiftingPyramid& p);

/// Per-level scaling that maps fixed-Haar lifting bands onto filter-bank Haar
/// bands: a = 2^(j/2) c and d_fb = -2^(j/2 - 1) d.
double haar_residue_scale(int level);
double haar_detail_scale(int level);

/// Fitting of the predictor taps p for x_odd ≈ X_e p.
struct FitOptions {
  /// Return the minimum-norm optimum instead of throwing RankDeficient.
  bool allow_rank_deficient = false;
};

/// Design matrix [X_e]_{n,i} = x_e[n + offset + i] for n < odd_count, with
/// the polynomial extension of degree n_constraints - 1 at the ends. The
/// offset follows LiftingOperator::predictor for taps columns.
std::vector<std::vector<double>> design_matrix(std::span<const double> x_even,
                                               std::size_t odd_count, int taps,
                                               int n_constraints);

/// argmin |x_odd - X p|^2 subject to exact prediction of polynomials of
/// degree < n_constraints at the odd positions. Throws InfeasibleConstraints
/// when taps < n_constraints and RankDeficient when the data cannot pin the
/// free directions (or rows < taps).
std::vector<double> fit_predictor(std::span<const double> x_odd,
                                  const std::vector<std::vector<double>>& X, int n_constraints,
                                  FitOptions options = {});

/// Constraint rows A[m][i] = t_i^m, where t_i is tap i's distance from the
/// predicted odd sample in units of the even grid; the target is e_0.
std::vector<std::vector<double>> moment_constraints(int taps, int n_constraints);

/// Predictor from the fit, with the matching polynomial extension.
LiftingOperator fitted_predictor(std::vector<double> taps, int n_constraints);

/// Directory export: manifest.json with per-level stages plus one CSV per
/// band. Throws InvalidArgument for nonlinear stages.
void write_lifting_pyramid(const std::filesystem::path& dir, const LiftingPyramid& p);
LiftingPyramid read_lifting_pyramid(const std::filesystem::path& dir);

}  // namespace wrnn::lifting
