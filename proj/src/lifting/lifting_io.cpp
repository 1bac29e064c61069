#include <fstream>

#include <json.hpp>

#include "wrnn/common/csv.hpp"
#include "wrnn/common/error.hpp"
#include "wrnn/lifting/lifting.hpp"

namespace wrnn::lifting {
namespace {

using Json = nlohmann::ordered_json;

Json operator_json(const LiftingOperator& op, const char* what, int level) {
  if (!op.is_linear()) {
    fail(ErrorCode::InvalidArgument, std::string("level ") + std::to_string(level) + " " + what +
                                         " is nonlinear and cannot be exported");
  }
  return Json{{"taps", op.taps},
              {"offset", op.offset},
              {"extension", std::string(extension_name(op.extension))},
              {"extrapolation_degree", op.extrapolation_degree}};
}

LiftingOperator operator_from(const nlohmann::json& j) {
  LiftingOperator op;
  op.taps = j.at("taps").get<std::vector<double>>();
  op.offset = j.at("offset").get<std::ptrdiff_t>();
  op.extension = parse_extension(j.at("extension").get<std::string>());
  op.extrapolation_degree = j.at("extrapolation_degree").get<int>();
  return op;
}

}  // namespace

void write_lifting_pyramid(const std::filesystem::path& dir, const LiftingPyramid& p) {
  Json stages = Json::array();
  for (std::size_t j = 0; j < p.stages.size(); ++j) {
    const LiftingStage& s = p.stages[j];
    const int level = static_cast<int>(j) + 1;
    stages.push_back(Json{{"level", level},
                          {"order", std::string(stage_order_name(s.order))},
                          {"predictor", operator_json(s.P, "predictor", level)},
                          {"updater", operator_json(s.U, "updater", level)},
                          {"n_constraints", s.n_constraints},
                          {"n_tilde", s.n_tilde}});
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + dir.string());

  Json manifest;
  manifest["format"] = "wrnn-pyramid";
  manifest["version"] = 1;
  manifest["transform"] = "lifting";
  manifest["levels"] = p.levels;
  manifest["original_length"] = p.original_length;
  manifest["odd_length_rule"] = "trailing sample joins the even set";
  manifest["stages"] = stages;
  Json bands = Json::array();
  for (const auto& name : p.band_names()) {
    const auto& band = p.band(name);
    bands.push_back({{"name", name}, {"file", name + ".csv"}, {"length", band.size()}});
    csv::write_band(dir / (name + ".csv"), band);
  }
  manifest["bands"] = bands;

  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

LiftingPyramid read_lifting_pyramid(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json", std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "no manifest.json in " + dir.string());
  try {
    const auto manifest = nlohmann::json::parse(in);
    if (manifest.at("format") != "wrnn-pyramid" || manifest.at("transform") != "lifting") {
      fail(ErrorCode::StageMismatch, "not a lifting pyramid manifest");
    }
    LiftingPyramid p;
    p.levels = manifest.at("levels").get<int>();
    p.original_length = manifest.at("original_length").get<std::size_t>();
    if (p.levels < 1) fail(ErrorCode::StageMismatch, "manifest has no levels");
    for (const auto& s : manifest.at("stages")) {
      LiftingStage stage;
      stage.order = parse_stage_order(s.at("order").get<std::string>());
      stage.P = operator_from(s.at("predictor"));
      stage.U = operator_from(s.at("updater"));
      stage.n_constraints = s.at("n_constraints").get<int>();
      stage.n_tilde = s.at("n_tilde").get<int>();
      p.stages.push_back(std::move(stage));
    }
    p.details.resize(static_cast<std::size_t>(p.levels));
    const std::string residue = "a" + std::to_string(p.levels);
    for (const auto& band : manifest.at("bands")) {
      const auto name = band.at("name").get<std::string>();
      auto values = csv::read_band(dir / band.at("file").get<std::string>());
      if (values.size() != band.at("length").get<std::size_t>()) {
        fail(ErrorCode::StageMismatch, "band " + name + " length disagrees with manifest");
      }
      if (name == residue) {
        p.residue = std::move(values);
      } else {
        (void)p.band(name);  // validates the name
        p.details[static_cast<std::size_t>(std::stoi(name.substr(1)) - 1)] = std::move(values);
      }
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::StageMismatch, std::string("bad lifting manifest: ") + e.what());
  }
}

}  // namespace wrnn::lifting
