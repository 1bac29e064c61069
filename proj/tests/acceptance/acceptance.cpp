// Acceptance suite: one pass/fail line per criterion, exit status 0 only when
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "rtrl_oracle.hpp"
#include "test_util.hpp"
#include "wrnn/cli/cli.hpp"
#include "wrnn/common/csv.hpp"
#include "wrnn/lifting/lifting.hpp"
#include "wrnn/metrics/metrics.hpp"
#include "wrnn/pipeline/sweep.hpp"
#include "wrnn/rnn/activation.hpp"
#include "wrnn/rnn/rtrl.hpp"
#include "wrnn/wavelets/dwt.hpp"

namespace {

using namespace wrnn;
using V = std::vector<double>;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string digest;  ///< every numeric result, for the determinism check
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
};

std::string num(double v) { return csv::format_double(v); }

void digest(Outcome& o, double v) { o.digest += num(v) + ";"; }
void digest(Outcome& o, const V& v) {
  for (double x : v) digest(o, x);
  o.digest += "|";
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require(Outcome& o, bool ok, const std::string& why) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + why;
  }
}

// 1. filter bank perfect reconstruction

Outcome perfect_reconstruction() {
  const auto t0 = Clock::now();
  Outcome o;
  Rng rng(101);
  double worst_orth = 0.0, worst_bior = 0.0;
  for (wavelets::Family f : wavelets::comparison_families()) {
    const auto fb = wavelets::filter_bank(f);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const V x = test::random_signal(rng, 256);
      for (auto mode : {wavelets::BoundaryMode::periodic, wavelets::BoundaryMode::symmetric}) {
        const auto p = wavelets::dwt(x, fb, 5, mode);
        worst = std::max(worst, test::max_abs_diff(wavelets::idwt(p, fb), x));
      }
    }
    digest(o, worst);
    (fb.orthogonal ? worst_orth : worst_bior) = std::max(fb.orthogonal ? worst_orth : worst_bior, worst);
  }
  const double t = seconds_since(t0);
  require(o, worst_orth < 1e-9, "orthogonal error " + num(worst_orth));
  require(o, worst_bior < 1e-8, "biorthogonal error " + num(worst_bior));
  require(o, t < 10.0, "runtime " + num(t) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "max err orthogonal %.3g (< 1e-9), biorthogonal %.3g (< 1e-8), %.2f s",
                worst_orth, worst_bior, t);
  o.detail = o.pass ? buf : std::string(buf) + ": " + o.detail;
  return o;
}

// 2. lifting invertibility

lifting::LiftingOperator median_predictor() {
  return lifting::LiftingOperator::custom([](std::span<const double> src, std::size_t n) {
    const auto at = [&](std::ptrdiff_t i) {
      return lifting::extended_sample(src, i, lifting::Extension::symmetric, 0);
    };
    const auto k = static_cast<std::ptrdiff_t>(n);
    double m[3] = {at(k - 1), at(k), at(k + 1)};
    std::sort(m, m + 3);
    return m[1];
  });
}

Outcome lifting_invertibility() {
  const auto t0 = Clock::now();
  Outcome o;
  Rng rng(202);
  double worst_linear = 0.0, worst_nonlinear = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const V x = test::random_signal(rng, 64 + static_cast<std::size_t>(trial % 37));
    lifting::LiftingStage s;
    s.P = lifting::LiftingOperator::predictor(test::random_signal(rng, 4));
    s.U = lifting::LiftingOperator::updater(test::random_signal(rng, 4));
    const auto p = lifting::lifting_forward(x, 3, lifting::fixed_builder(s));
    worst_linear = std::max(worst_linear, test::max_abs_diff(lifting::lifting_inverse(p), x));

    lifting::LiftingStage nl = s;
    nl.P = median_predictor();
    const auto q = lifting::lifting_forward(x, 3, lifting::fixed_builder(nl));
    worst_nonlinear = std::max(worst_nonlinear, test::max_abs_diff(lifting::lifting_inverse(q), x));
  }
  digest(o, worst_linear);
  digest(o, worst_nonlinear);
  const double t = seconds_since(t0);
  require(o, worst_linear < 1e-11, "linear error " + num(worst_linear));
  require(o, worst_nonlinear < 1e-11, "nonlinear error " + num(worst_nonlinear));
  require(o, t < 10.0, "runtime " + num(t) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "max err random 4-tap %.3g, median predictor %.3g (< 1e-11), %.2f s",
                worst_linear, worst_nonlinear, t);
  o.detail = o.pass ? buf : std::string(buf) + ": " + o.detail;
  return o;
}

// 3. Haar lifting against the Haar filter bank

Outcome haar_equivalence() {
  Outcome o;
  Rng rng(303);
  const auto fb = wavelets::filter_bank(wavelets::Family::haar);
  const int J = 6;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const V x = test::random_signal(rng, 256);
    const auto ref = wavelets::dwt(x, fb, J);
    const auto lp = lifting::lifting_forward(x, J, lifting::haar_builder());
    for (std::size_t k = 0; k < ref.residue.size(); ++k) {
      worst = std::max(worst, std::abs(lifting::haar_residue_scale(J) * lp.residue[k] - ref.residue[k]));
    }
    for (int j = 1; j <= J; ++j) {
      for (std::size_t k = 0; k < ref.detail(j).size(); ++k) {
        worst = std::max(worst, std::abs(lifting::haar_detail_scale(j) * lp.detail(j)[k] - ref.detail(j)[k]));
      }
    }
  }
  digest(o, worst);
  require(o, worst < 1e-10, "band error " + num(worst));
  char buf[160];
  std::snprintf(buf, sizeof buf, "max band err %.3g (< 1e-10) over 100 signals, %d levels", worst, J);
  o.detail = o.pass ? buf : std::string(buf) + ": " + o.detail;
  return o;
}

// 4. polynomial suppression by fitted predictors

double poly(const V& coef, double t) {
  double v = 0.0;
  for (auto c = coef.rbegin(); c != coef.rend(); ++c) v = v * t + *c;
  return v;
}

double residual_sq(const V& y, const std::vector<V>& X, const V& p) {
  double s = 0.0;
  for (std::size_t n = 0; n < y.size(); ++n) {
    const double e = y[n] - std::inner_product(p.begin(), p.end(), X[n].begin(), 0.0);
    s += e * e;
  }
  return s;
}

Outcome polynomial_suppression() {
  Outcome o;
  Rng rng(404);
  const int M = 4;
  const std::size_t n = 64;
  // interpolating predictors on taps x_e[k-1..k+2] evaluated half way between x_e[k] and x_e[k+1]
  const std::vector<V> interpolating = {{0, 1, 0, 0}, {0, 0.5, 0.5, 0}, {-0.125, 0.75, 0.375, 0}};
  const V cubic{-1.0 / 16, 9.0 / 16, 9.0 / 16, -1.0 / 16};
  double worst_d = 0.0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  for (int N = 1; N <= 3; ++N) {
    for (int trial = 0; trial < 20; ++trial) {
      const V coef = test::random_signal(rng, static_cast<std::size_t>(N));
      V clean(n), noisy(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        clean[i] = poly(coef, t);
        noisy[i] = clean[i] + 0.2 * std::sin(5.0 * t + trial) + 0.05 * rng.normal();
      }
      const auto [ne, no] = lifting::split(noisy);
      const auto X = lifting::design_matrix(ne, no.size(), M, N);
      const V p = lifting::fit_predictor(no, X, N);

      const auto [ce, co] = lifting::split(clean);
      const auto Xc = lifting::design_matrix(ce, co.size(), M, N);
      const V pc = lifting::fit_predictor(co, Xc, N, lifting::FitOptions{.allow_rank_deficient = true});
      for (const V& taps : {p, pc}) {
        lifting::LiftingStage s;
        s.P = lifting::fitted_predictor(taps, N);
        for (double d : lifting::predict_step(co, ce, s)) worst_d = std::max(worst_d, std::abs(d));
      }

      const double fitted = residual_sq(no, X, p);
      const double fixed = std::min(residual_sq(no, X, interpolating[static_cast<std::size_t>(N - 1)]),
                                    residual_sq(no, X, cubic));
      worst_margin = std::max(worst_margin, fitted - fixed);
      digest(o, p);
      digest(o, fitted);
      digest(o, fixed);
    }
  }
  digest(o, worst_d);
  require(o, worst_d < 1e-8, "detail on polynomial " + num(worst_d));
  require(o, worst_margin <= 0.0, "fitted residual exceeds fixed predictor by " + num(worst_margin));
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "N in {1,2,3}, M=4: max |d| %.3g (< 1e-8), max(fitted - fixed residual) %.3g (<= 0) over 60 signals",
                worst_d, worst_margin);
  o.detail = o.pass ? buf : std::string(buf) + ": " + o.detail;
  return o;
}

// 5. RTRL sensitivities against finite differences

Outcome rtrl_gradient_check() {
  const auto t0 = Clock::now();
  Outcome o;
  double worst_rel = 0.0;
  std::size_t checked = 0, mismatched = 0;
  const test::Big h("1e-20");
  for (rnn::ActivationKind kind : {rnn::ActivationKind::logistic, rnn::ActivationKind::rbf_wavelet}) {
    for (int N : {1, 2, 4}) {
      for (int p : {1, 3}) {
        rnn::RnnConfig cfg;
        cfg.p = p;
        cfg.N = N;
        cfg.activation = kind;
        cfg.eta = 0.0;
        cfg.clip = 0.0;
        cfg.seed = static_cast<std::uint64_t>(500 + 10 * N + p);
        rnn::Rnn net(cfg);
        Rng rng(cfg.seed + 1);
        std::vector<V> s;
        for (int k = 0; k < 5; ++k) s.push_back(test::random_signal(rng, static_cast<std::size_t>(p)));
        // sensitivities after every step
        std::vector<std::vector<double>> pi;
        for (const V& hist : s) {
          net.advance(net.input_vector(hist));
          V snap;
          for (int j = 0; j < N; ++j) {
            for (int n = 0; n < N; ++n) {
              for (int l = 0; l < net.width(); ++l) snap.push_back(net.sensitivity(j, n, l));
            }
          }
          pi.push_back(snap);
        }
        std::vector<std::vector<test::Big>> W(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) {
          for (int c = 0; c < net.width(); ++c) W[static_cast<std::size_t>(i)].push_back(test::Big(net.weights()(i, c)));
        }
        for (int n = 0; n < N; ++n) {
          for (int l = 0; l < net.width(); ++l) {
            auto plus = W, minus = W;
            plus[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)] += h;
            minus[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)] -= h;
            const auto yp = test::oracle_rollout(plus, net.activations(), p, s);
            const auto ym = test::oracle_rollout(minus, net.activations(), p, s);
            for (std::size_t k = 0; k < s.size(); ++k) {
              for (int j = 0; j < N; ++j) {
                const double fd = static_cast<double>((yp[k][static_cast<std::size_t>(j)] -
                                                       ym[k][static_cast<std::size_t>(j)]) /
                                                      (test::Big(2) * h));
                const double got =
                    pi[k][static_cast<std::size_t>((j * N + n) * net.width() + l)];
                if (std::abs(fd) <= 1e-8) continue;
                ++checked;
                const double rel = std::abs(got - fd) / std::abs(fd);
                worst_rel = std::max(worst_rel, rel);
                if (rel > 1e-5) ++mismatched;
                digest(o, got);
              }
            }
          }
        }
      }
    }
  }
  const double t = seconds_since(t0);
  require(o, mismatched == 0, std::to_string(mismatched) + " sensitivities off");
  require(o, checked > 0, "nothing checked");
  require(o, t < 5.0, "runtime " + num(t) + " s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu sensitivities, max rel err %.3g (< 1e-5), %.2f s", checked, worst_rel, t);
  o.detail = o.pass ? buf : std::string(buf) + ": " + o.detail;
  return o;
}

// 6. activation properties

Outcome activation_properties() {
  Outcome o;
  Rng rng(606);
  double worst_odd = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-4.0, 4.0);
    worst_odd = std::max(worst_odd, std::abs(rnn::rbf_wavelet(-x) + rnn::rbf_wavelet(x)));
  }
  // composite Simpson rule with 10^4 intervals
  const int m = 10000;
  const double h = 2.0 / m;
  double integral = rnn::rbf_wavelet(-1.0) + rnn::rbf_wavelet(1.0);
  for (int i = 1; i < m; ++i) integral += rnn::rbf_wavelet(-1.0 + i * h) * (i % 2 ? 4.0 : 2.0);
  integral *= h / 3.0;
  const double half = 0.5;
  const bool logistic_exact = rnn::logistic(0.0, 1.0) == half;
  digest(o, worst_odd);
  digest(o, integral);
  require(o, worst_odd < 1e-12, "odd symmetry " + num(worst_odd));
  require(o, std::abs(integral) < 1e-9, "integral " + num(integral));
  require(o, logistic_exact, "logistic(0) = " + num(rnn::logistic(0.0, 1.0)));
  char buf[200];
  std::snprintf(buf, sizeof buf, "odd symmetry err %.3g (< 1e-12), integral %.3g (< 1e-9), logistic(0) = %s",
                worst_odd, integral, num(rnn::logistic(0.0, 1.0)).c_str());
  o.detail = o.pass ? buf : std::string(buf) + ": " + o.detail;
  return o;
}

// 7. vanishing moments

Outcome vanishing_moments() {
  Outcome o;
  const std::size_t n = 512;
  double worst = 0.0;
  std::string worst_family;
  for (wavelets::Family f : wavelets::comparison_families()) {
    const auto fb = wavelets::filter_bank(f);
    const auto mode = fb.default_boundary();
    const auto L = static_cast<std::ptrdiff_t>(fb.length());
    const std::ptrdiff_t shift = mode == wavelets::BoundaryMode::periodic ? 0 : -(L - 2);
    double fam = 0.0;
    for (int m = 0; m < fb.vanishing_moments; ++m) {
      V x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = std::pow(static_cast<double>(i) / static_cast<double>(n), m);
      const auto p = wavelets::dwt(x, fb, 1, mode);
      std::size_t interior = 0;
      for (std::size_t k = 0; k < p.detail(1).size(); ++k) {
        const std::ptrdiff_t first = 2 * static_cast<std::ptrdiff_t>(k) + shift;
        if (first < 0 || first + L - 1 >= static_cast<std::ptrdiff_t>(n)) continue;
        ++interior;
        fam = std::max(fam, std::abs(p.detail(1)[k]));
      }
      require(o, interior > n / 4, std::string(fb.name()) + " has too few interior coefficients");
    }
    digest(o, fam);
    if (fam >= worst) {
      worst = fam;
      worst_family = std::string(fb.name());
    }
  }
  require(o, worst < 1e-7, "interior detail " + num(worst) + " for " + worst_family);
  char buf[200];
  std::snprintf(buf, sizeof buf, "max interior detail %.3g (< 1e-7), worst family %s", worst,
                worst_family.c_str());
  o.detail = o.pass ? buf : std::string(buf) + ": " + o.detail;
  return o;
}

// 8. synthetic end-to-end surrogate

Outcome surrogate_experiment() {
  const auto t0 = Clock::now();
  Outcome o;
  pipeline::RunConfig cfg;
  cfg.synth_days = 60;
  cfg.synth_seed = 1;
  cfg.family = "bior3.7";
  cfg.levels = 9;
  cfg.horizon_steps = 288;
  cfg.hidden = {16, 16};
  cfg.max_epochs = 5000;
  cfg.patience = 200;
  cfg.seed = 1;
  const auto data = pipeline::load_data(cfg);
  const auto vectors = pipeline::prepare_vectors(data, wavelets::Family::bior3_7, cfg);
  pipeline::WrnnTopology topo;
  topo.hidden = cfg.hidden;
  const auto out = pipeline::train_early_stopping(topo, vectors, cfg.train_options(), cfg.family);
  const auto& r = out.report;

  // the running minimum of the per-epoch MSE never increases
  bool monotone = !r.mse_trace.empty();
  double run_min = std::numeric_limits<double>::infinity(), prev = run_min;
  for (double v : r.mse_trace) {
    run_min = std::min(run_min, v);
    monotone = monotone && run_min <= prev && std::isfinite(v);
    prev = run_min;
  }
  const double best_val = *std::min_element(r.validation_mse_trace.begin(), r.validation_mse_trace.end());
  const TimeSeries fc = pipeline::forecast(out.model, vectors);

  digest(o, r.gamma);
  digest(o, r.relative_rms_percent);
  digest(o, static_cast<double>(r.epochs_to_converge));
  digest(o, static_cast<double>(r.epochs_run));
  digest(o, r.mse_trace);
  digest(o, r.validation_mse_trace);
  digest(o, fc.data());

  const double t = seconds_since(t0);
  require(o, r.gamma >= 0.95, "gamma " + num(r.gamma));
  require(o, r.relative_rms_percent <= 10.0, "relative RMS " + num(r.relative_rms_percent) + " %");
  require(o, monotone, "running minimum of the MSE trace increased");
  require(o, r.best_validation_mse == best_val, "restored weights are not the best validation epoch");
  require(o, t < 300.0, "runtime " + num(t) + " s");
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "test gamma %.4f (>= 0.95), relative RMS %.2f %% (<= 10), best epoch %d of %d, %zu test samples, "
                "%.0f s",
                r.gamma, r.relative_rms_percent, r.epochs_to_converge, r.epochs_run, r.test_samples, t);
  o.detail = o.pass ? buf : std::string(buf) + ": " + o.detail;
  return o;
}

// 9. comparison sweep through the command line

Outcome sweep_plumbing() {
  const auto t0 = Clock::now();
  Outcome o;
  test::TempDir dir("acceptance_sweep");
  std::ostringstream out, err;
  const int code = cli::run({"sweep", "--families", "all", "--set", "synth_days=14", "--set", "max_epochs=50",
                             "--out", dir.path().string()},
                            out, err);
  require(o, code == 0, "exit " + std::to_string(code) + " " + err.str());
  if (code == 0) {
    const auto table = csv::read(dir / "comparison.csv");
    require(o, table.header == std::vector<std::string>{"family", "2N", "relative_rms_percent", "gamma", "epochs"},
            "unexpected header");
    require(o, table.rows.size() == 9, std::to_string(table.rows.size()) + " rows");
    std::vector<std::string> names;
    for (const auto& row : table.rows) {
      names.push_back(row.at(0));
      for (std::size_t c = 1; c < row.size(); ++c) {
        require(o, std::isfinite(csv::parse_double(row[c], "comparison")), "non-finite value for " + row[0]);
      }
    }
    std::vector<std::string> expected;
    for (auto f : wavelets::comparison_families()) expected.emplace_back(wavelets::family_name(f));
    std::sort(expected.begin(), expected.end());
    require(o, names == expected, "family set differs");
    require(o, !std::filesystem::exists(dir / "sweep_errors.csv"), "sweep reported errors");
    o.digest += test::read_text(dir / "comparison.csv");
    for (const auto& name : names) o.digest += test::read_text(dir / ("traces/" + name + "_mse.csv"));
  }
  const double t = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "9 families on 14 synthetic days, 50 epochs each, comparison.csv with columns family,2N,relative_rms_percent,gamma,epochs, %.0f s",
                t);
  o.detail = o.pass ? buf : std::string(buf) + ": " + o.detail;
  return o;
}

Outcome guarded(const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return {false, std::string("threw ") + std::string(error_code_name(e.code())) + ": " + e.what(), "error"};
  } catch (const std::exception& e) {
    return {false, std::string("threw ") + e.what(), "error"};
  }
}

void report(int id, const std::string& name, const Outcome& o) {
  std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "perfect reconstruction", perfect_reconstruction},
      {2, "lifting invertibility", lifting_invertibility},
      {3, "haar lifting equals filter bank", haar_equivalence},
      {4, "polynomial suppression", polynomial_suppression},
      {5, "rtrl gradient check", rtrl_gradient_check},
      {6, "activation properties", activation_properties},
      {7, "vanishing moments", vanishing_moments},
      {8, "synthetic end-to-end surrogate", surrogate_experiment},
      {9, "comparison sweep plumbing", sweep_plumbing},
  };
  bool all = true;
  std::vector<std::string> first_digests;
  for (const auto& c : criteria) {
    const Outcome o = guarded(c.run);
    report(c.id, c.name, o);
    all = all && o.pass;
    first_digests.push_back(o.digest);
  }

  Outcome det;
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome again = guarded(criteria[i].run);
    bytes += again.digest.size();
    if (again.digest != first_digests[i]) {
      det.pass = false;
      det.detail += (det.detail.empty() ? "" : ", ") + std::to_string(criteria[i].id);
    }
  }
  det.detail = det.pass ? "criteria 1-9 rerun with the same seeds: " + std::to_string(bytes) +
                              " bytes of numeric output identical"
                        : "numeric output differs on rerun of criteria " + det.detail;
  report(10, "determinism", det);
  all = all && det.pass;
  return all ? 0 : 1;
}
