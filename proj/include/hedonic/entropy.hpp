#pragma once

#include <Eigen/Core>
#include <array>
#include <map>
#include <span>
#include <string>

#include "hedonic/common.hpp"
#include "hedonic/image.hpp"
#include "hedonic/listing.hpp"

namespace hedonic {

/// Per-pixel local-entropy raster, same shape as its source image, in bits.
using EntropyMap = Eigen::ArrayXXd;

/// Named feature record emitted by the extractors; std::map keeps the
/// column order deterministic.
using FeatureRecord = std::map<std::string, double>;

/// H = -sum p_i log2 p_i with 0*log2(0) = 0. The probabilities must be
/// non-negative and sum to 1 within 1e-9.
double shannon_entropy(std::span<const double> probabilities);

/// Entropy of the 256-bin intensity histogram over each pixel's
/// window x window neighborhood, clamp-to-edge padded so the output has the
/// source dimensions. The window must be odd and >= 3.
EntropyMap local_entropy_map(const GrayImage& img, int window = 9);

/// Mean over every cell of the map.
template <typename Derived>
double global_avg_entropy(const Eigen::ArrayBase<Derived>& map) {
  if (map.size() == 0) throw DomainError("global_avg_entropy: empty map");
  return map.mean();
}

/// Region means over a rows x cols grid; cell (i, j) covers source rows
/// [floor(i*h/rows), floor((i+1)*h/rows)) and the analogous column span.
Eigen::ArrayXXd grid_avg_entropy(const EntropyMap& map, int grid_rows, int grid_cols);

/// The nine 3x3 region means, keyed top-to-bottom, left-to-right.
struct RegionalEntropy {
  double tl, tc, tr, ml, c, mr, bl, bc, br;

  static constexpr std::array<const char*, 9> keys() {
    return {"tl", "tc", "tr", "ml", "c", "mr", "bl", "bc", "br"};
  }
  std::array<double, 9> values() const { return {tl, tc, tr, ml, c, mr, bl, bc, br}; }
};

/// Requires at least a 3x3 map.
RegionalEntropy regional_avg_entropy(const EntropyMap& map);

/// Entropy-weighted centroid. Coordinates are zero-based pixel positions;
/// distance_norm divides by the center-to-corner distance, so a unit value
/// means all mass sits in a corner. An all-zero map degenerates to the exact
/// center with distance 0.
struct CenterOfGravity {
  double x = 0;
  double y = 0;
  double distance_raw = 0;
  double distance_norm = 0;
  bool degenerate = false;
};

CenterOfGravity center_of_gravity(const EntropyMap& map);

/// Per-image entropy feature record: ENT_<type>_avg, the nine (or grid)
/// regional means, and CG_<type>_{x,y,dist}. Satellite names get a _z<zoom>
/// suffix. For a 3x3 grid the regions use the tl..br keys; other grids use
/// r<i>c<j>.
FeatureRecord entropy_features(const ImageAsset& asset, const RgbImage& img, int window = 9,
                               int region_grid = 3);

/// Upper bound of any cell of a `window`-sized local entropy map.
double entropy_upper_bound(int window);

}  // namespace hedonic
