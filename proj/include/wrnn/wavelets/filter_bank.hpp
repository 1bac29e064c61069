#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wrnn::wavelets {

/// First-generation families. The nine comparison families plus Haar, which
/// is the reference for the lifting engine.
enum class Family { haar, bior2_8, bior3_7, bior3_9, coif2, db4, db6, db8, sym4, sym7 };

/// Extension used at the signal ends.
///  - periodic: wrap-around, non-redundant, ceil(n/2) coefficients per band
///  - symmetric: half-sample mirror (x[-1] = x[0]), floor((n+L-1)/2) coefficients
enum class BoundaryMode { periodic, symmetric };

std::string_view family_name(Family family);
/// Accepts "bior3.7", "db4", ... Throws UnknownFamily.
Family parse_family(std::string_view name);
std::string_view boundary_name(BoundaryMode mode);
BoundaryMode parse_boundary(std::string_view name);

/// The nine families compared in the forecasting sweep, in name order.
const std::vector<Family>& comparison_families();

/// Analysis/synthesis quadruple. Coefficients use the orthonormal convention
/// sum(h) = sqrt(2); a refinement equation written with a factor 2 in front
/// of the sum corresponds to h / sqrt(2).
///
/// Analysis is a correlation: a[k] = sum_j h[j] x[2k + j + shift], likewise
/// for g. Synthesis scatters a[k] h_dual[j] + d[k] g_dual[j] back to the same
/// positions. High-pass filters are the alternating flips
///   g[n] = (-1)^n h_dual[L-1-n],  g_dual[n] = (-1)^n h[L-1-n].
struct FilterBank {
  Family family;
  std::vector<double> h;
  std::vector<double> g;
  std::vector<double> h_dual;
  std::vector<double> g_dual;
  /// Polynomial orders annihilated by the analysis high-pass g.
  int vanishing_moments;
  /// Reference neuron count (2N) for the family.
  int table_neurons;
  bool orthogonal;

  std::size_t length() const { return h.size(); }
  std::string_view name() const { return family_name(family); }
  BoundaryMode default_boundary() const {
    return orthogonal ? BoundaryMode::periodic : BoundaryMode::symmetric;
  }
};

/// Throws UnknownFamily for values outside the enum.
FilterBank filter_bank(Family family);
FilterBank filter_bank(std::string_view name);

namespace detail {
extern const std::vector<double> k_haar_lo;
extern const std::vector<double> k_bior2_8_lo, k_bior2_8_dual_lo;
extern const std::vector<double> k_bior3_7_lo, k_bior3_7_dual_lo;
extern const std::vector<double> k_bior3_9_lo, k_bior3_9_dual_lo;
extern const std::vector<double> k_coif2_lo;
extern const std::vector<double> k_db4_lo, k_db6_lo, k_db8_lo;
extern const std::vector<double> k_sym4_lo, k_sym7_lo;
}  // namespace detail

}  // namespace wrnn::wavelets
