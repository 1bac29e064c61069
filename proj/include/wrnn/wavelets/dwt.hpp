#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wrnn/wavelets/filter_bank.hpp"

namespace wrnn::wavelets {

/// Multilevel decomposition: residue a_J plus details d_1 (finest) .. d_J.
struct CoefficientPyramid {
  Family family = Family::haar;
  int levels = 0;
  BoundaryMode boundary = BoundaryMode::periodic;
  std::size_t original_length = 0;
  std::size_t filter_length = 0;
  std::vector<double> residue;
  std::vector<std::vector<double>> details;  ///< details[j-1] is d_j

  const std::vector<double>& detail(int level) const { return details.at(level - 1); }

  /// "aJ" (e.g. "a9") for the residue, "d1".."dJ" for details.
  std::vector<std::string> band_names() const;
  std::string residue_name() const { return "a" + std::to_string(levels); }
  const std::vector<double>& band(const std::string& name) const;
  std::vector<double>& band(const std::string& name);
};

/// Coefficients produced from a band of length n.
std::size_t band_length(std::size_t n, std::size_t filter_length, BoundaryMode mode);

/// Approximation lengths n_0 = original_length, n_1, ..., n_J.
std::vector<std::size_t> level_lengths(std::size_t original_length, std::size_t filter_length,
                                       int levels, BoundaryMode mode);

/// Single analysis step. Returns {approximation, detail}.
std::pair<std::vector<double>, std::vector<double>> analyze(std::span<const double> x,
                                                            const FilterBank& fb,
                                                            BoundaryMode mode);

/// Single synthesis step back to out_length samples.
std::vector<double> synthesize(std::span<const double> approx, std::span<const double> detail,
                               const FilterBank& fb, BoundaryMode mode, std::size_t out_length);

/// Throws BadLevels for levels < 1, TooShort when length(x) < 2^levels.
CoefficientPyramid dwt(std::span<const double> x, const FilterBank& fb, int levels);
CoefficientPyramid dwt(std::span<const double> x, const FilterBank& fb, int levels,
                       BoundaryMode mode);

/// Throws InconsistentPyramid when band lengths do not match the rule.
std::vector<double> idwt(const CoefficientPyramid& p, const FilterBank& fb);

/// Zeroes every band not named in keep. Throws UnknownBand.
CoefficientPyramid threshold_bands(const CoefficientPyramid& p, const std::set<std::string>& keep);

/// Directory export: manifest.json plus one "<band>.csv" (index,value) per band.
void write_pyramid(const std::filesystem::path& dir, const CoefficientPyramid& p);
CoefficientPyramid read_pyramid(const std::filesystem::path& dir);

}  // namespace wrnn::wavelets
