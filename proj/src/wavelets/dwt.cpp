#include "wrnn/wavelets/dwt.hpp"

#include <algorithm>

#include "wrnn/common/error.hpp"

namespace wrnn::wavelets {
namespace {

// Half-sample mirror: ... x1 x0 | x0 x1 ... x_{n-1} | x_{n-1} x_{n-2} ...
std::ptrdiff_t mirror(std::ptrdiff_t i, std::ptrdiff_t n) {
  const std::ptrdiff_t period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

std::ptrdiff_t wrap(std::ptrdiff_t i, std::ptrdiff_t n) {
  i %= n;
  return i < 0 ? i + n : i;
}

// Offset of the first tap of coefficient 0 relative to sample 0.
std::ptrdiff_t symmetric_shift(std::size_t filter_length) {
  return -static_cast<std::ptrdiff_t>(filter_length) + 2;
}

}  // namespace

std::vector<std::string> CoefficientPyramid::band_names() const {
  std::vector<std::string> names{residue_name()};
  for (int j = 1; j <= levels; ++j) names.push_back("d" + std::to_string(j));
  return names;
}

const std::vector<double>& CoefficientPyramid::band(const std::string& name) const {
  return const_cast<CoefficientPyramid*>(this)->band(name);
}

std::vector<double>& CoefficientPyramid::band(const std::string& name) {
  if (name == residue_name()) return residue;
  if (name.size() > 1 && name[0] == 'd') {
    int level = 0;
    try {
      std::size_t used = 0;
      level = std::stoi(name.substr(1), &used);
      if (used != name.size() - 1) level = 0;
    } catch (const std::exception&) {
      level = 0;
    }
    if (level >= 1 && level <= levels && name == "d" + std::to_string(level)) {
      return details[static_cast<std::size_t>(level - 1)];
    }
  }
  fail(ErrorCode::UnknownBand, "unknown band '" + name + "'");
}

std::size_t band_length(std::size_t n, std::size_t filter_length, BoundaryMode mode) {
  if (mode == BoundaryMode::periodic) return (n + 1) / 2;
  return (n + filter_length - 1) / 2;
}

std::vector<std::size_t> level_lengths(std::size_t original_length, std::size_t filter_length,
                                       int levels, BoundaryMode mode) {
  std::vector<std::size_t> lengths{original_length};
  for (int j = 0; j < levels; ++j) lengths.push_back(band_length(lengths.back(), filter_length, mode));
  return lengths;
}

std::pair<std::vector<double>, std::vector<double>> analyze(std::span<const double> x,
                                                            const FilterBank& fb,
                                                            BoundaryMode mode) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const auto L = static_cast<std::ptrdiff_t>(fb.length());
  const std::size_t out = band_length(x.size(), fb.length(), mode);
  std::vector<double> a(out), d(out);

  if (mode == BoundaryMode::periodic) {
    // odd lengths are extended by repeating the last sample
    const std::ptrdiff_t m = n + (n % 2);
    auto sample = [&](std::ptrdiff_t i) { return i < n ? x[static_cast<std::size_t>(i)] : x.back(); };
    for (std::size_t k = 0; k < out; ++k) {
      double sa = 0.0, sd = 0.0;
      for (std::ptrdiff_t j = 0; j < L; ++j) {
        const double v = sample(wrap(2 * static_cast<std::ptrdiff_t>(k) + j, m));
        sa += fb.h[static_cast<std::size_t>(j)] * v;
        sd += fb.g[static_cast<std::size_t>(j)] * v;
      }
      a[k] = sa;
      d[k] = sd;
    }
  } else {
    const std::ptrdiff_t shift = symmetric_shift(fb.length());
    for (std::size_t k = 0; k < out; ++k) {
      double sa = 0.0, sd = 0.0;
      for (std::ptrdiff_t j = 0; j < L; ++j) {
        const double v = x[static_cast<std::size_t>(mirror(2 * static_cast<std::ptrdiff_t>(k) + j + shift, n))];
        sa += fb.h[static_cast<std::size_t>(j)] * v;
        sd += fb.g[static_cast<std::size_t>(j)] * v;
      }
      a[k] = sa;
      d[k] = sd;
    }
  }
  return {std::move(a), std::move(d)};
}

std::vector<double> synthesize(std::span<const double> approx, std::span<const double> detail,
                               const FilterBank& fb, BoundaryMode mode, std::size_t out_length) {
  const auto L = static_cast<std::ptrdiff_t>(fb.length());
  if (approx.size() != detail.size() ||
      approx.size() != band_length(out_length, fb.length(), mode)) {
    fail(ErrorCode::InconsistentPyramid, "band lengths do not match the reconstruction length");
  }
  if (mode == BoundaryMode::periodic) {
    const auto n = static_cast<std::ptrdiff_t>(out_length);
    const std::ptrdiff_t m = n + (n % 2);
    std::vector<double> y(static_cast<std::size_t>(m), 0.0);
    for (std::size_t k = 0; k < approx.size(); ++k) {
      for (std::ptrdiff_t j = 0; j < L; ++j) {
        y[static_cast<std::size_t>(wrap(2 * static_cast<std::ptrdiff_t>(k) + j, m))] +=
            approx[k] * fb.h_dual[static_cast<std::size_t>(j)] +
            detail[k] * fb.g_dual[static_cast<std::size_t>(j)];
      }
    }
    y.resize(out_length);
    return y;
  }
  const std::ptrdiff_t shift = symmetric_shift(fb.length());
  const auto n = static_cast<std::ptrdiff_t>(out_length);
  std::vector<double> y(out_length, 0.0);
  for (std::size_t k = 0; k < approx.size(); ++k) {
    for (std::ptrdiff_t j = 0; j < L; ++j) {
      const std::ptrdiff_t idx = 2 * static_cast<std::ptrdiff_t>(k) + j + shift;
      if (idx < 0 || idx >= n) continue;
      y[static_cast<std::size_t>(idx)] += approx[k] * fb.h_dual[static_cast<std::size_t>(j)] +
                                          detail[k] * fb.g_dual[static_cast<std::size_t>(j)];
    }
  }
  return y;
}

CoefficientPyramid dwt(std::span<const double> x, const FilterBank& fb, int levels) {
  return dwt(x, fb, levels, fb.default_boundary());
}

CoefficientPyramid dwt(std::span<const double> x, const FilterBank& fb, int levels,
                       BoundaryMode mode) {
  if (levels < 1 || levels > 40) fail(ErrorCode::BadLevels, "levels must be in [1, 40]");
  if (x.size() < (std::size_t{1} << levels)) {
    fail(ErrorCode::TooShort, "signal of length " + std::to_string(x.size()) + " is too short for " +
                                  std::to_string(levels) + " levels");
  }
  CoefficientPyramid p;
  p.family = fb.family;
  p.levels = levels;
  p.boundary = mode;
  p.original_length = x.size();
  p.filter_length = fb.length();
  std::vector<double> approx(x.begin(), x.end());
  for (int j = 0; j < levels; ++j) {
    auto [a, d] = analyze(approx, fb, mode);
    p.details.push_back(std::move(d));
    approx = std::move(a);
  }
  p.residue = std::move(approx);
  return p;
}

std::vector<double> idwt(const CoefficientPyramid& p, const FilterBank& fb) {
  if (p.levels < 1 || p.details.size() != static_cast<std::size_t>(p.levels)) {
    fail(ErrorCode::InconsistentPyramid, "pyramid level count does not match its bands");
  }
  if (p.filter_length != 0 && p.filter_length != fb.length()) {
    fail(ErrorCode::InconsistentPyramid, "pyramid was built with a different filter length");
  }
  const auto lengths = level_lengths(p.original_length, fb.length(), p.levels, p.boundary);
  if (p.residue.size() != lengths.back()) {
    fail(ErrorCode::InconsistentPyramid, "residue band has the wrong length");
  }
  std::vector<double> approx = p.residue;
  for (int j = p.levels; j >= 1; --j) {
    const auto& d = p.details[static_cast<std::size_t>(j - 1)];
    if (d.size() != lengths[static_cast<std::size_t>(j)]) {
      fail(ErrorCode::InconsistentPyramid, "detail band d" + std::to_string(j) + " has the wrong length");
    }
    approx = synthesize(approx, d, fb, p.boundary, lengths[static_cast<std::size_t>(j - 1)]);
  }
  return approx;
}

CoefficientPyramid threshold_bands(const CoefficientPyramid& p, const std::set<std::string>& keep) {
  CoefficientPyramid out = p;
  const auto names = p.band_names();
  for (const auto& k : keep) {
    if (std::find(names.begin(), names.end(), k) == names.end()) {
      fail(ErrorCode::UnknownBand, "unknown band '" + k + "'");
    }
  }
  for (const auto& name : names) {
    if (!keep.contains(name)) {
      auto& band = out.band(name);
      std::fill(band.begin(), band.end(), 0.0);
    }
  }
  return out;
}

}  // namespace wrnn::wavelets
