#include "wrnn/wavelets/filter_bank.hpp"

#include "wrnn/common/error.hpp"

namespace wrnn::wavelets {
namespace {

std::vector<double> alternating_flip(const std::vector<double>& f) {
  const std::size_t L = f.size();
  std::vector<double> out(L);
  for (std::size_t n = 0; n < L; ++n) out[n] = (n % 2 == 0 ? 1.0 : -1.0) * f[L - 1 - n];
  return out;
}

FilterBank make(Family family, const std::vector<double>& lo, const std::vector<double>& dual_lo,
                int moments, int neurons, bool orthogonal) {
  FilterBank fb{family, lo, alternating_flip(dual_lo), dual_lo, alternating_flip(lo),
                moments, neurons, orthogonal};
  return fb;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::haar: return "haar";
    case Family::bior2_8: return "bior2.8";
    case Family::bior3_7: return "bior3.7";
    case Family::bior3_9: return "bior3.9";
    case Family::coif2: return "coif2";
    case Family::db4: return "db4";
    case Family::db6: return "db6";
    case Family::db8: return "db8";
    case Family::sym4: return "sym4";
    case Family::sym7: return "sym7";
  }
  fail(ErrorCode::UnknownFamily, "unknown wavelet family");
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::haar, Family::bior2_8, Family::bior3_7, Family::bior3_9, Family::coif2,
                   Family::db4, Family::db6, Family::db8, Family::sym4, Family::sym7}) {
    if (family_name(f) == name) return f;
  }
  fail(ErrorCode::UnknownFamily, "unknown wavelet family '" + std::string(name) + "'");
}

std::string_view boundary_name(BoundaryMode mode) {
  return mode == BoundaryMode::periodic ? "periodic" : "symmetric";
}

BoundaryMode parse_boundary(std::string_view name) {
  if (name == "periodic") return BoundaryMode::periodic;
  if (name == "symmetric") return BoundaryMode::symmetric;
  fail(ErrorCode::InvalidArgument, "unknown boundary mode '" + std::string(name) + "'");
}

const std::vector<Family>& comparison_families() {
  static const std::vector<Family> families = {
      Family::bior2_8, Family::bior3_7, Family::bior3_9, Family::coif2, Family::db4,
      Family::db6,     Family::db8,     Family::sym4,    Family::sym7};
  return families;
}

FilterBank filter_bank(Family family) {
  using namespace detail;
  switch (family) {
    case Family::haar: return make(family, k_haar_lo, k_haar_lo, 1, 2, true);
    case Family::bior2_8: return make(family, k_bior2_8_lo, k_bior2_8_dual_lo, 2, 6, false);
    case Family::bior3_7: return make(family, k_bior3_7_lo, k_bior3_7_dual_lo, 3, 10, false);
    case Family::bior3_9: return make(family, k_bior3_9_lo, k_bior3_9_dual_lo, 3, 10, false);
    case Family::coif2: return make(family, k_coif2_lo, k_coif2_lo, 4, 12, true);
    case Family::db4: return make(family, k_db4_lo, k_db4_lo, 4, 8, true);
    case Family::db6: return make(family, k_db6_lo, k_db6_lo, 6, 12, true);
    case Family::db8: return make(family, k_db8_lo, k_db8_lo, 8, 12, true);
    case Family::sym4: return make(family, k_sym4_lo, k_sym4_lo, 4, 12, true);
    case Family::sym7: return make(family, k_sym7_lo, k_sym7_lo, 7, 12, true);
  }
  fail(ErrorCode::UnknownFamily, "unknown wavelet family");
}

FilterBank filter_bank(std::string_view name) { return filter_bank(parse_family(name)); }

}  // namespace wrnn::wavelets
