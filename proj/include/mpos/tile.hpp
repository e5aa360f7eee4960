#pragma once

// Finite approximations of the attractor U: the m^n anchors M^{-n} gamma_[k],
// exact self-similarity checks on them, a Monte Carlo measure diagnostic and
// raster / CSV emission.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "mpos/digits.hpp"

namespace mpos {

constexpr std::uint64_t kDefaultPointBudget = std::uint64_t{1} << 20;

struct TileCloud {
  int depth = 0;
  std::size_t dim = 0;
  /// Row-major: point k occupies points[k*dim .. k*dim+dim).
  std::vector<double> points;
  std::vector<double> box_min;
  std::vector<double> box_max;
  /// Point k is exactly numerators[k] / denominator, denominator = det(M)^depth.
  /// Filled only when requested.
  std::vector<IntVector> numerators;
  BigInt denominator = 1;
  /// Number of points equal to an earlier point.
  std::uint64_t coincident = 0;

  std::uint64_t size() const noexcept { return dim ? points.size() / dim : 0; }
  std::span<const double> point(std::uint64_t k) const { return {points.data() + k * dim, dim}; }
};

/// Throws DepthTooLarge when m^n exceeds `budget`. Takes raw digits so broken
/// sets can be rendered for diagnosis.
TileCloud tile_points(const DilationMatrix& m, std::span<const IntVector> digits, int n,
                      std::uint64_t budget = kDefaultPointBudget, bool keep_exact = false);
inline TileCloud tile_points(const DigitSet& d, int n, std::uint64_t budget = kDefaultPointBudget,
                             bool keep_exact = false) {
  return tile_points(d.matrix(), d.digits(), n, budget, keep_exact);
}

struct SelfSimilarityReport {
  /// {anchors at depth n} = union over s of M^{-1}({anchors at depth n-1} + s).
  bool set_identity = false;
  /// The m^n anchors are pairwise distinct modulo Z^d, so the cells do not stack.
  bool distinct_mod_lattice = false;
  bool passed() const noexcept { return set_identity && distinct_mod_lattice; }
};

/// Exact rational comparison; n >= 1.
SelfSimilarityReport self_similarity_check(const DilationMatrix& m, std::span<const IntVector> digits, int n,
                                           std::uint64_t budget = kDefaultPointBudget);

/// ||M^2 s - sum_{k=0}^{K} M^{-2k} s|| for K = 1 .. max_k, s the first nonzero
/// digit. For the twindragon M^2 = 2I and the residuals are 2^{-K} ||s||.
std::vector<double> series_identity_check(const DilationMatrix& m, std::span<const IntVector> digits,
                                         int max_k = 20);

struct MeasureEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  double radius = 0.0;
  int depth = 0;
};

/// Hit-or-miss Monte Carlo over the depth-n bounding box grown by the radius
/// r = 2 ||M^{-n}|| diam(D). A sample counts as inside when it lies within r
/// of an anchor. Biased upward by roughly the r-neighbourhood of the boundary;
/// use it as a diagnostic only.
MeasureEstimate measure_estimate(const DilationMatrix& m, std::span<const IntVector> digits,
                                 std::uint64_t samples, int depth, std::uint64_t seed,
                                 std::uint64_t budget = kDefaultPointBudget);

/// Row-major width x height grid. Binary occupancy (0/1) by default; with a
/// colour scale c every pixel holds 1 + (scale-c cell index of its last point).
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> pixels;
  double occupancy() const;
};

/// Throws DimensionUnsupported unless d = 2, InvalidArgument on bad sizes.
Raster raster(const TileCloud& cloud, int width, int height, std::optional<int> colour_scale = std::nullopt,
              unsigned radix = 0);

enum class PgmFormat { Ascii, Binary };
void write_pgm(std::ostream& os, const Raster& r, PgmFormat format = PgmFormat::Binary);
/// One point per line, coordinates with 17 significant digits.
void write_points_csv(std::ostream& os, const TileCloud& cloud);

}  // namespace mpos
