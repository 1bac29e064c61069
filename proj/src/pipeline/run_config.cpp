#include "wrnn/pipeline/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wrnn/common/csv.hpp"
#include "wrnn/common/error.hpp"
#include "wrnn/wavelets/filter_bank.hpp"

namespace wrnn::pipeline {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    fail(ErrorCode::InvalidArgument, std::string(key) + ": '" + std::string(value) + "' is not an integer");
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  try {
    return csv::parse_double(value, std::string(key));
  } catch (const Error& e) {
    fail(ErrorCode::InvalidArgument, e.what());
  }
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(ErrorCode::InvalidArgument, std::string(key) + ": '" + std::string(value) + "' is not a boolean");
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  std::vector<int> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(parse_integer<int>(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, std::string(key) + " is empty");
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (key == "family") {
    (void)wavelets::parse_family(value);
    family = std::string(value);
  } else if (key == "levels") {
    levels = parse_integer<int>(key, value);
    if (levels < 0) fail(ErrorCode::InvalidArgument, "levels must be >= 0");
  } else if (key == "horizon_steps") {
    horizon_steps = parse_integer<int>(key, value);
    if (horizon_steps < 1) fail(ErrorCode::InvalidArgument, "horizon_steps must be >= 1");
  } else if (key == "eta") {
    eta = parse_real(key, value);
    if (!(eta >= 0)) fail(ErrorCode::InvalidArgument, "eta must be >= 0");
  } else if (key == "beta") {
    beta = parse_real(key, value);
    if (!(beta > 0)) fail(ErrorCode::InvalidArgument, "beta must be > 0");
  } else if (key == "clip") {
    clip = parse_real(key, value);
    if (!(clip >= 0)) fail(ErrorCode::InvalidArgument, "clip must be >= 0");
  } else if (key == "max_epochs") {
    max_epochs = parse_integer<int>(key, value);
    if (max_epochs < 1) fail(ErrorCode::InvalidArgument, "max_epochs must be >= 1");
  } else if (key == "patience") {
    patience = parse_integer<int>(key, value);
  } else if (key == "seed") {
    seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "train_fraction") {
    train_fraction = parse_real(key, value);
  } else if (key == "validation_fraction") {
    validation_fraction = parse_real(key, value);
  } else if (key == "test_fraction") {
    test_fraction = parse_real(key, value);
  } else if (key == "hidden") {
    hidden = parse_int_list(key, value);
  } else if (key == "hidden_from_family") {
    hidden_from_family = parse_bool(key, value);
  } else if (key == "resample") {
    if (value != "none" && value != "linear" && value != "mean") {
      fail(ErrorCode::InvalidArgument, "resample must be none, linear or mean");
    }
    resample = std::string(value);
  } else if (key == "irradiance_csv") {
    irradiance_csv = std::string(value);
  } else if (key == "temperature_csv") {
    temperature_csv = std::string(value);
  } else if (key == "humidity_csv") {
    humidity_csv = std::string(value);
  } else if (key == "wind_csv") {
    wind_csv = std::string(value);
  } else if (key == "synth_days") {
    synth_days = parse_integer<int>(key, value);
    if (synth_days < 1) fail(ErrorCode::InvalidArgument, "synth_days must be >= 1");
  } else if (key == "synth_seed") {
    synth_seed = parse_integer<std::uint64_t>(key, value);
  } else {
    fail(ErrorCode::UnknownKey, "unknown config key '" + std::string(key) + "'");
  }
}

void RunConfig::apply(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    fail(ErrorCode::UsageError, "expected key=value, got '" + std::string(assignment) + "'");
  }
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  return {{"family", family},
          {"levels", std::to_string(levels)},
          {"horizon_steps", std::to_string(horizon_steps)},
          {"eta", csv::format_double(eta)},
          {"beta", csv::format_double(beta)},
          {"clip", csv::format_double(clip)},
          {"max_epochs", std::to_string(max_epochs)},
          {"patience", std::to_string(patience)},
          {"seed", std::to_string(seed)},
          {"train_fraction", csv::format_double(train_fraction)},
          {"validation_fraction", csv::format_double(validation_fraction)},
          {"test_fraction", csv::format_double(test_fraction)},
          {"hidden", join(hidden)},
          {"hidden_from_family", hidden_from_family ? "true" : "false"},
          {"resample", resample},
          {"irradiance_csv", irradiance_csv},
          {"temperature_csv", temperature_csv},
          {"humidity_csv", humidity_csv},
          {"wind_csv", wind_csv},
          {"synth_days", std::to_string(synth_days)},
          {"synth_seed", std::to_string(synth_seed)}};
}

std::string RunConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries()) out += k + "=" + v + "\n";
  return out;
}

TrainOptions RunConfig::train_options() const {
  TrainOptions o;
  o.split = {train_fraction, validation_fraction, test_fraction};
  o.max_epochs = max_epochs;
  o.patience = patience;
  o.eta = eta;
  o.beta = beta;
  o.clip = clip;
  o.seed = seed;
  return o;
}

std::vector<int> RunConfig::hidden_for(std::string_view family_name) const {
  if (!hidden_from_family) return hidden;
  const int width = wavelets::filter_bank(family_name).table_neurons;
  return {width, width};
}

RunConfig parse_run_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.find('=') == std::string_view::npos) {
      fail(ErrorCode::UsageError, "config line " + std::to_string(line_no) + ": expected key=value");
    }
    cfg.apply(line);
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace wrnn::pipeline
