#include "wrnn/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "wrnn/common/csv.hpp"
#include "wrnn/common/error.hpp"
#include "wrnn/lifting/lifting.hpp"
#include "wrnn/metrics/metrics.hpp"
#include "wrnn/pipeline/sweep.hpp"
#include "wrnn/wavelets/dwt.hpp"

#ifndef WRNN_VERSION
#define WRNN_VERSION "0.0.0"
#endif

namespace wrnn::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using pipeline::RunConfig;

struct Options {
  std::string verb;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out = ".";
  std::optional<int> days;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> family;
  std::optional<int> levels;
  std::string in;
  std::string column = "value";
  std::string transform = "filterbank";
  std::string boundary;
  std::string model_dir;
  std::string pred;
  std::string actual;
  std::string pred_column = "value";
  std::string actual_column = "value";
  std::string families = "all";
};

/// Everything a verb produced, echoed into the run manifest.
struct RunLog {
  json arguments = json::object();
  std::vector<std::string> outputs;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "run configuration file (key=value) or run_manifest.json");
  sub->add_option("--set", o.overrides, "override one configuration key, key=value")->take_all();
  sub->add_option("--out", o.out, "output directory");
}

RunConfig load_config(const Options& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) {
    if (fs::path(o.config_path).extension() == ".json") {
      std::ifstream in(o.config_path);
      if (!in) fail(ErrorCode::IoError, "cannot open " + o.config_path);
      json m;
      try {
        m = json::parse(in);
      } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, o.config_path + ": " + e.what());
      }
      if (!m.contains("config") || !m["config"].is_object()) {
        fail(ErrorCode::ParseError, o.config_path + ": no config object");
      }
      for (const auto& [k, v] : m["config"].items()) cfg.set(k, v.get<std::string>());
    } else {
      cfg = pipeline::load_run_config(o.config_path);
    }
  }
  return cfg;
}

void apply_overrides(RunConfig& cfg, const Options& o) {
  for (const std::string& s : o.overrides) cfg.apply(s);
}

std::string rel(const fs::path& p, const fs::path& base) {
  return p.lexically_relative(base).generic_string();
}

json config_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.entries()) j[k] = v;
  return j;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot write " + path.string());
  f << j.dump(2) << '\n';
  if (!f) fail(ErrorCode::IoError, "failed writing " + path.string());
}

void write_manifest(const fs::path& dir, const Options& o, const RunConfig& cfg, const RunLog& log,
                    const std::string& status) {
  json m;
  m["format"] = "wrnn-run";
  m["version"] = 1;
  m["verb"] = o.verb;
  m["arguments"] = log.arguments;
  m["config"] = config_json(cfg);
  m["seed"] = cfg.seed;
  m["synth_seed"] = cfg.synth_seed;
  m["rms_normalization"] = std::string(metrics::kRmsNormalization);
  m["versions"] = {{"wrnn", WRNN_VERSION},
                   {"compiler", std::string("gcc ") + __VERSION__},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                 "." + std::to_string(EIGEN_MINOR_VERSION)},
                   {"cli11", CLI11_VERSION},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  m["outputs"] = log.outputs;
  m["status"] = status;
  write_json(dir / "run_manifest.json", m);
}

// synth

void do_synth(const Options& o, RunConfig& cfg, RunLog& log, std::ostream& out) {
  const fs::path dir(o.out);
  for (Channel ch : {Channel::irradiance, Channel::temperature, Channel::humidity, Channel::wind_speed}) {
    const fs::path file = dir / (std::string(channel_name(ch)) + ".csv");
    save_csv(synth_meteo(cfg.synth_days, cfg.synth_seed, ch), file);
    log.outputs.push_back(rel(file, dir));
  }
  out << "synthesized " << cfg.synth_days << " days (seed " << cfg.synth_seed << ") into " << o.out << '\n';
}

// decompose

void do_decompose(const Options& o, RunConfig& cfg, RunLog& log, std::ostream& out) {
  if (o.in.empty()) fail(ErrorCode::UsageError, "decompose needs --in");
  const TimeSeries ts = load_csv(o.in, Channel::synthetic, "timestamp", o.column);
  const int levels = cfg.levels > 0 ? cfg.levels
                                    : pipeline::select_scales(ts.step(), ts.step() * cfg.horizon_steps).levels;
  const fs::path dir(o.out);
  std::vector<std::string> bands;
  if (o.transform == "filterbank") {
    const auto fb = wavelets::filter_bank(cfg.family);
    const auto mode = o.boundary.empty() ? fb.default_boundary() : wavelets::parse_boundary(o.boundary);
    const auto p = wavelets::dwt(ts.values(), fb, levels, mode);
    wavelets::write_pyramid(dir, p);
    bands = p.band_names();
  } else if (o.transform == "lifting-haar" || o.transform == "lifting-adaptive") {
    const auto builder = o.transform == "lifting-haar" ? lifting::haar_builder() : lifting::adaptive_builder();
    const auto p = lifting::lifting_forward(ts.values(), levels, builder);
    lifting::write_lifting_pyramid(dir, p);
    bands = p.band_names();
  } else {
    fail(ErrorCode::InvalidArgument, "unknown transform '" + o.transform +
                                         "' (filterbank, lifting-haar, lifting-adaptive)");
  }
  log.outputs.push_back("manifest.json");
  for (const std::string& b : bands) log.outputs.push_back(b + ".csv");
  out << "decomposed " << ts.size() << " samples into " << levels << " levels (" << o.transform << ")\n";
}

// train and forecast

void write_model(const fs::path& dir, const pipeline::TrainedModel& m, const std::string& family,
                 const pipeline::InputVectorSet& v) {
  rnn::save_checkpoint(dir / "checkpoint.json", m.net);
  json j;
  j["format"] = "wrnn-model";
  j["version"] = 1;
  j["family"] = family;
  j["levels"] = v.levels;
  j["horizon_steps"] = v.horizon_steps;
  j["hidden"] = m.topology.hidden;
  j["feature_scale"] = m.features.scale;
  j["target_scale"] = {{"offset", m.target_scale.offset},
                       {"gain", m.target_scale.gain},
                       {"lo", m.target_scale.lo},
                       {"hi", m.target_scale.hi}};
  j["checkpoint"] = "checkpoint.json";
  write_json(dir / "model.json", j);
}

struct LoadedModel {
  pipeline::TrainedModel model;
  std::string family;
  int levels;
  int horizon_steps;
};

LoadedModel read_model(const fs::path& dir) {
  std::ifstream in(dir / "model.json");
  if (!in) fail(ErrorCode::IoError, "cannot open " + (dir / "model.json").string());
  try {
    const json j = json::parse(in);
    if (j.at("format") != "wrnn-model" || j.at("version") != 1) {
      fail(ErrorCode::ParseError, "model.json: unsupported format");
    }
    pipeline::WrnnTopology topo;
    topo.hidden = j.at("hidden").get<std::vector<int>>();
    topo.validate();
    pipeline::FeatureScaler fsc{j.at("feature_scale").get<std::vector<double>>()};
    const json& t = j.at("target_scale");
    ScaleParams sp{t.at("offset").get<double>(), t.at("gain").get<double>(), t.at("lo").get<double>(),
                   t.at("hi").get<double>()};
    rnn::Rnn net = rnn::load_checkpoint(dir / j.at("checkpoint").get<std::string>());
    if (net.neurons() != topo.neurons()) fail(ErrorCode::ParseError, "checkpoint does not match the topology");
    return {pipeline::TrainedModel{std::move(net), std::move(fsc), sp, topo},
            j.at("family").get<std::string>(), j.at("levels").get<int>(), j.at("horizon_steps").get<int>()};
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("model.json: ") + e.what());
  }
}

std::string summary(const pipeline::TrainReport& r) {
  std::ostringstream s;
  s << r.family << " 2N=" << r.neuron_count_2N << " relative_rms_percent=" << csv::format_double(r.relative_rms_percent)
    << " gamma=" << csv::format_double(r.gamma) << " epochs=" << r.epochs_to_converge << "/" << r.epochs_run;
  return s.str();
}

void do_train(const Options& o, RunConfig& cfg, RunLog& log, std::ostream& out) {
  const fs::path dir(o.out);
  const auto data = pipeline::load_data(cfg);
  const auto family = wavelets::parse_family(cfg.family);
  const auto vectors = pipeline::prepare_vectors(data, family, cfg);
  pipeline::WrnnTopology topo;
  topo.hidden = cfg.hidden_for(cfg.family);
  const auto result = pipeline::train_early_stopping(topo, vectors, cfg.train_options(), cfg.family);
  pipeline::write_report_csv(dir / "report.csv", {result.report});
  metrics::mse_trace_export(result.report.mse_trace, dir / "mse_trace.csv");
  metrics::mse_trace_export(result.report.validation_mse_trace, dir / "validation_mse_trace.csv");
  write_model(dir, result.model, cfg.family, vectors);
  log.outputs = {"report.csv", "mse_trace.csv", "validation_mse_trace.csv", "checkpoint.json", "model.json"};
  out << summary(result.report) << " (relative RMS normalized by " << metrics::kRmsNormalization << ")\n";
}

void do_forecast(const Options& o, RunConfig& cfg, RunLog& log, std::ostream& out) {
  if (o.model_dir.empty()) fail(ErrorCode::UsageError, "forecast needs --model");
  const fs::path dir(o.out);
  LoadedModel m = read_model(o.model_dir);
  cfg.family = m.family;
  cfg.levels = m.levels;
  cfg.horizon_steps = m.horizon_steps;
  cfg.hidden = m.model.topology.hidden;
  const auto data = pipeline::load_data(cfg);
  const auto vectors = pipeline::prepare_vectors(data, wavelets::parse_family(m.family), cfg);
  if (m.model.features.scale.size() != vectors.rows.front().size()) {
    fail(ErrorCode::LengthMismatch, "model feature width does not match the input vectors");
  }
  const TimeSeries f = pipeline::forecast(m.model, vectors);
  save_csv(f, dir / "forecast.csv", "irradiance");
  log.outputs = {"forecast.csv"};
  out << "forecast " << f.size() << " samples, horizon " << m.horizon_steps << " steps\n";
}

// evaluate

void do_evaluate(const Options& o, RunConfig&, RunLog& log, std::ostream& out) {
  if (o.pred.empty() || o.actual.empty()) fail(ErrorCode::UsageError, "evaluate needs --pred and --actual");
  const TimeSeries pred = load_csv(o.pred, Channel::irradiance, "timestamp", o.pred_column);
  const TimeSeries actual = load_csv(o.actual, Channel::irradiance, "timestamp", o.actual_column);
  std::map<std::int64_t, double> by_time;
  for (std::size_t k = 0; k < actual.size(); ++k) by_time[actual.timestamp(k)] = actual[k];
  std::vector<double> p, a;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const auto it = by_time.find(pred.timestamp(k));
    if (it == by_time.end()) continue;
    p.push_back(pred[k]);
    a.push_back(it->second);
  }
  if (p.size() < 2) fail(ErrorCode::LengthMismatch, "predictions and actuals share fewer than two timestamps");
  const auto r = metrics::evaluate(p, a);
  const fs::path dir(o.out);
  csv::write(dir / "evaluation.csv", {"metric", "value"},
             {{"n_samples", std::to_string(r.n_samples)},
              {"relative_rms_percent", csv::format_double(r.relative_rms_percent)},
              {"gamma", csv::format_double(r.gamma)},
              {"mse", csv::format_double(r.mse)},
              {"rms_normalization", std::string(metrics::kRmsNormalization)}});
  log.outputs = {"evaluation.csv"};
  out << "n=" << r.n_samples << " relative_rms_percent=" << csv::format_double(r.relative_rms_percent)
      << " gamma=" << csv::format_double(r.gamma) << " mse=" << csv::format_double(r.mse) << '\n';
}

// sweep

std::vector<wavelets::Family> parse_families(const std::string& list) {
  if (list == "all") return wavelets::comparison_families();
  std::vector<wavelets::Family> out;
  std::stringstream s(list);
  for (std::string item; std::getline(s, item, ',');) {
    if (item.empty()) continue;
    const auto f = wavelets::parse_family(item);
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  if (out.empty()) fail(ErrorCode::UsageError, "--families is empty");
  return out;
}

void do_sweep(const Options& o, RunConfig& cfg, RunLog& log, std::ostream& out) {
  const fs::path dir(o.out);
  const auto families = parse_families(o.families);
  const auto data = pipeline::load_data(cfg);
  const auto entries = pipeline::run_family_sweep(families, data, cfg);
  pipeline::write_sweep_csv(dir / "comparison.csv", entries);
  log.outputs.push_back("comparison.csv");
  fs::create_directories(dir / "traces");
  std::vector<std::vector<std::string>> errors;
  const pipeline::SweepEntry* first_failure = nullptr;
  for (const auto& e : entries) {
    if (e.report) {
      const std::string file = "traces/" + e.family + "_mse.csv";
      metrics::mse_trace_export(e.report->mse_trace, dir / file);
      log.outputs.push_back(file);
      out << summary(*e.report) << '\n';
    } else {
      errors.push_back({e.family, e.error});
      if (!first_failure) first_failure = &e;
      out << e.family << " failed: " << e.error << '\n';
    }
  }
  if (!errors.empty()) {
    csv::write(dir / "sweep_errors.csv", {"family", "error"}, errors);
    log.outputs.push_back("sweep_errors.csv");
    fail(first_failure->error_code.value_or(ErrorCode::InvalidArgument),
         std::to_string(errors.size()) + " of " + std::to_string(entries.size()) + " families failed, first " +
             first_failure->family + ": " + first_failure->error);
  }
}

int exit_code_for(ErrorCode code) {
  switch (error_category(code)) {
    case ErrorCategory::usage:
      return kExitUsage;
    case ErrorCategory::data:
      return kExitData;
    case ErrorCategory::divergence:
      return kExitDivergence;
  }
  return kExitData;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

std::string error_line(ErrorCode code, const std::string& message) {
  return "error:" + std::string(error_category_name(error_category(code))) + ":" +
         std::string(error_code_name(code)) + ": " + one_line(message);
}

}  // namespace

const char* version() { return WRNN_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Wavelet recurrent network irradiance forecasting", "wrnn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", WRNN_VERSION);

  auto* synth = app.add_subcommand("synth", "write seeded synthetic channel CSVs");
  synth->add_option("--days", o.days, "number of days")->check(CLI::PositiveNumber);
  synth->add_option("--seed", o.seed, "generator seed");

  auto* decompose = app.add_subcommand("decompose", "wavelet decomposition of one CSV channel");
  decompose->add_option("--in", o.in, "input CSV")->required();
  decompose->add_option("--column", o.column, "value column");
  decompose->add_option("--family", o.family, "wavelet family");
  decompose->add_option("--levels", o.levels, "decomposition levels")->check(CLI::PositiveNumber);
  decompose->add_option("--transform", o.transform, "filterbank, lifting-haar or lifting-adaptive");
  decompose->add_option("--boundary", o.boundary, "periodic or symmetric (filter bank only)");

  auto* train = app.add_subcommand("train", "train the network with early stopping");
  train->add_option("--family", o.family, "wavelet family");
  train->add_option("--seed", o.seed, "weight initialization seed");

  auto* forecast = app.add_subcommand("forecast", "forecast irradiance with a trained model");
  forecast->add_option("--model", o.model_dir, "directory written by train")->required();

  auto* evaluate = app.add_subcommand("evaluate", "relative RMS and correlation of a forecast");
  evaluate->add_option("--pred", o.pred, "forecast CSV")->required();
  evaluate->add_option("--actual", o.actual, "measured CSV")->required();
  evaluate->add_option("--pred-column", o.pred_column, "forecast value column");
  evaluate->add_option("--actual-column", o.actual_column, "measured value column");

  auto* sweep = app.add_subcommand("sweep", "train every family and write the comparison table");
  sweep->add_option("--families", o.families, "all or a comma separated list");
  sweep->add_option("--seed", o.seed, "weight initialization seed");

  for (CLI::App* sub : {synth, decompose, train, forecast, evaluate, sweep}) add_common(sub, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << WRNN_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_line(ErrorCode::UsageError, e.what()) << '\n';
    return kExitUsage;
  }
  o.verb = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  RunLog log;
  bool out_ready = false;
  const auto finish = [&](int code, const std::string& status) {
    if (out_ready) {
      try {
        write_manifest(o.out, o, cfg, log, status);
      } catch (const Error& e) {
        err << error_line(e.code(), e.what()) << '\n';
        return code == kExitOk ? exit_code_for(e.code()) : code;
      }
    }
    return code;
  };

  try {
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec || !fs::is_directory(o.out)) fail(ErrorCode::IoError, "cannot create output directory " + o.out);
    out_ready = true;

    cfg = load_config(o);
    if (o.days) cfg.set("synth_days", std::to_string(*o.days));
    if (o.seed) cfg.set(o.verb == "synth" ? "synth_seed" : "seed", std::to_string(*o.seed));
    if (o.family) cfg.set("family", *o.family);
    if (o.levels) cfg.set("levels", std::to_string(*o.levels));
    apply_overrides(cfg, o);

    for (const auto* opt : app.get_subcommands().front()->get_options()) {
      if (opt->count() > 0 && !opt->get_lnames().empty()) {
        const std::string name = opt->get_lnames().front();
        if (name == "help") continue;
        const auto values = opt->results();
        log.arguments[name] = values.size() == 1 ? json(values.front()) : json(values);
      }
    }

    if (o.verb == "synth") do_synth(o, cfg, log, out);
    else if (o.verb == "decompose") do_decompose(o, cfg, log, out);
    else if (o.verb == "train") do_train(o, cfg, log, out);
    else if (o.verb == "forecast") do_forecast(o, cfg, log, out);
    else if (o.verb == "evaluate") do_evaluate(o, cfg, log, out);
    else do_sweep(o, cfg, log, out);
  } catch (const Error& e) {
    err << error_line(e.code(), e.what()) << '\n';
    return finish(exit_code_for(e.code()),
                  "error:" + std::string(error_category_name(error_category(e.code()))) + ":" +
                      std::string(error_code_name(e.code())));
  } catch (const std::exception& e) {
    err << error_line(ErrorCode::IoError, e.what()) << '\n';
    return finish(kExitData, "error:data:IoError");
  }
  return finish(kExitOk, "ok");
}

}  // namespace wrnn::cli
