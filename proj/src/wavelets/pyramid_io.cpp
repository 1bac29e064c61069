#include <fstream>

#include <json.hpp>

#include "wrnn/common/csv.hpp"
#include "wrnn/common/error.hpp"
#include "wrnn/wavelets/dwt.hpp"

namespace wrnn::wavelets {
using csv::read_band;
using csv::write_band;

void write_pyramid(const std::filesystem::path& dir, const CoefficientPyramid& p) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + dir.string());

  nlohmann::ordered_json manifest;
  manifest["format"] = "wrnn-pyramid";
  manifest["version"] = 1;
  manifest["transform"] = "filter_bank";
  manifest["family"] = std::string(family_name(p.family));
  manifest["levels"] = p.levels;
  manifest["boundary_mode"] = std::string(boundary_name(p.boundary));
  manifest["original_length"] = p.original_length;
  manifest["filter_length"] = p.filter_length;
  auto bands = nlohmann::ordered_json::array();
  for (const auto& name : p.band_names()) {
    const auto& band = p.band(name);
    bands.push_back({{"name", name}, {"file", name + ".csv"}, {"length", band.size()}});
    write_band(dir / (name + ".csv"), band);
  }
  manifest["bands"] = bands;

  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

CoefficientPyramid read_pyramid(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json", std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "no manifest.json in " + dir.string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
    if (manifest.at("format") != "wrnn-pyramid") {
      fail(ErrorCode::InconsistentPyramid, "not a pyramid manifest");
    }
    CoefficientPyramid p;
    p.family = parse_family(manifest.at("family").get<std::string>());
    p.levels = manifest.at("levels").get<int>();
    p.boundary = parse_boundary(manifest.at("boundary_mode").get<std::string>());
    p.original_length = manifest.at("original_length").get<std::size_t>();
    p.filter_length = manifest.at("filter_length").get<std::size_t>();
    if (p.levels < 1) fail(ErrorCode::InconsistentPyramid, "manifest has no levels");
    p.details.resize(static_cast<std::size_t>(p.levels));
    for (const auto& band : manifest.at("bands")) {
      const auto name = band.at("name").get<std::string>();
      auto values = read_band(dir / band.at("file").get<std::string>());
      if (values.size() != band.at("length").get<std::size_t>()) {
        fail(ErrorCode::InconsistentPyramid, "band " + name + " length disagrees with manifest");
      }
      p.band(name) = std::move(values);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InconsistentPyramid, std::string("bad pyramid manifest: ") + e.what());
  }
}

}  // namespace wrnn::wavelets
