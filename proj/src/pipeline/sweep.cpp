#include "wrnn/pipeline/sweep.hpp"

#include <algorithm>
#include <future>

#include "wrnn/common/csv.hpp"
#include "wrnn/common/error.hpp"
#include "wrnn/wavelets/dwt.hpp"

namespace wrnn::pipeline {
namespace {

TimeSeries load_or_synth(const std::string& path, Channel channel, const RunConfig& cfg) {
  TimeSeries ts = path.empty() ? synth_meteo(cfg.synth_days, cfg.synth_seed, channel)
                               : load_csv(path, channel);
  if (cfg.resample == "none" || ts.step() == kDefaultStep) return ts;
  return resample(ts, kDefaultStep, cfg.resample == "mean" ? ResampleMode::mean : ResampleMode::linear);
}

}  // namespace

void check_aligned(const MeteoData& d) {
  for (const TimeSeries* ts : {&d.temperature, &d.humidity, &d.wind}) {
    if (ts->start_epoch() != d.irradiance.start_epoch() || ts->step() != d.irradiance.step() ||
        ts->size() != d.irradiance.size()) {
      fail(ErrorCode::MisalignedSeries,
           std::string(channel_name(ts->channel())) + " does not share start, step and length with irradiance");
    }
  }
}

MeteoData load_data(const RunConfig& cfg) {
  const std::string* paths[4] = {&cfg.irradiance_csv, &cfg.temperature_csv, &cfg.humidity_csv,
                                 &cfg.wind_csv};
  const auto given = std::count_if(paths, paths + 4, [](const std::string* p) { return !p->empty(); });
  if (given != 0 && given != 4) {
    fail(ErrorCode::UsageError, "give all four channel CSVs or none (synthetic data)");
  }
  MeteoData d{load_or_synth(cfg.irradiance_csv, Channel::irradiance, cfg),
              load_or_synth(cfg.temperature_csv, Channel::temperature, cfg),
              load_or_synth(cfg.humidity_csv, Channel::humidity, cfg),
              load_or_synth(cfg.wind_csv, Channel::wind_speed, cfg)};
  check_aligned(d);
  return d;
}

InputVectorSet prepare_vectors(const MeteoData& data, wavelets::Family family, const RunConfig& cfg) {
  check_aligned(data);
  const int levels = cfg.levels > 0
                         ? cfg.levels
                         : select_scales(data.irradiance.step(),
                                         data.irradiance.step() * cfg.horizon_steps)
                               .levels;
  const auto fb = wavelets::filter_bank(family);
  const auto t = wavelets::dwt(data.temperature.values(), fb, levels);
  const auto h = wavelets::dwt(data.humidity.values(), fb, levels);
  const auto w = wavelets::dwt(data.wind.values(), fb, levels);
  return build_vectors(t, h, w, data.irradiance, cfg.horizon_steps);
}

TrainOutcome run_family(const MeteoData& data, wavelets::Family family, const RunConfig& cfg) {
  const InputVectorSet vectors = prepare_vectors(data, family, cfg);
  WrnnTopology topology;
  topology.hidden = cfg.hidden_for(wavelets::family_name(family));
  return train_early_stopping(topology, vectors, cfg.train_options(),
                              std::string(wavelets::family_name(family)));
}

std::vector<SweepEntry> run_family_sweep(const std::vector<wavelets::Family>& families,
                                         const MeteoData& data, const RunConfig& cfg) {
  if (families.empty()) fail(ErrorCode::InvalidArgument, "sweep needs at least one family");
  std::vector<std::future<SweepEntry>> jobs;
  for (wavelets::Family f : families) {
    jobs.push_back(std::async(std::launch::async, [f, &data, &cfg] {
      SweepEntry entry;
      entry.family = std::string(wavelets::family_name(f));
      try {
        entry.report = run_family(data, f, cfg).report;
      } catch (const Error& e) {
        entry.error_code = e.code();
        entry.error = std::string(error_code_name(e.code())) + ": " + e.what();
      } catch (const std::exception& e) {
        entry.error = std::string("InternalError: ") + e.what();
      }
      return entry;
    }));
  }
  std::vector<SweepEntry> entries;
  for (auto& job : jobs) entries.push_back(job.get());
  std::sort(entries.begin(), entries.end(),
            [](const SweepEntry& a, const SweepEntry& b) { return a.family < b.family; });
  return entries;
}

void write_report_csv(const std::filesystem::path& path, const std::vector<TrainReport>& reports) {
  std::vector<TrainReport> sorted = reports;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TrainReport& a, const TrainReport& b) { return a.family < b.family; });
  std::vector<std::vector<std::string>> rows;
  for (const TrainReport& r : sorted) {
    rows.push_back({r.family, std::to_string(r.neuron_count_2N), csv::format_double(r.relative_rms_percent),
                    csv::format_double(r.gamma), std::to_string(r.epochs_to_converge)});
  }
  csv::write(path, {"family", "2N", "relative_rms_percent", "gamma", "epochs"}, rows);
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepEntry>& entries) {
  std::vector<TrainReport> reports;
  for (const SweepEntry& e : entries) {
    if (e.report) reports.push_back(*e.report);
  }
  write_report_csv(path, reports);
}

}  // namespace wrnn::pipeline
