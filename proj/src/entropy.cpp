#include "hedonic/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hedonic {

double shannon_entropy(std::span<const double> probabilities) {
  double sum = 0;
  for (double p : probabilities) {
    if (p < 0) throw DomainError("shannon_entropy: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("shannon_entropy: probabilities sum to " + format_double(sum));
  }
  double h = 0;
  for (double p : probabilities) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

double entropy_upper_bound(int window) {
  const double symbols = std::min(256.0, static_cast<double>(window) * window);
  return std::log2(symbols);
}

EntropyMap local_entropy_map(const GrayImage& img, int window) {
  if (window < 3 || window % 2 == 0) {
    throw DomainError("local_entropy_map: window must be odd and >= 3, got " +
                      std::to_string(window));
  }
  if (img.rows() < 1 || img.cols() < 1) throw DomainError("local_entropy_map: empty image");

  const Eigen::Index h = img.rows();
  const Eigen::Index w = img.cols();
  const int radius = window / 2;
  const int area = window * window;

  // count_log[c] = c * log2(c); the window entropy is
  // log2(area) - sum_b count_log[hist[b]] / area.
  std::vector<double> count_log(static_cast<std::size_t>(area) + 1, 0.0);
  for (int c = 2; c <= area; ++c) count_log[c] = c * std::log2(static_cast<double>(c));
  const double log2_area = std::log2(static_cast<double>(area));

  auto clamp_row = [&](Eigen::Index y) { return std::clamp<Eigen::Index>(y, 0, h - 1); };
  auto clamp_col = [&](Eigen::Index x) { return std::clamp<Eigen::Index>(x, 0, w - 1); };

  EntropyMap out(h, w);
  std::array<std::uint32_t, 256> hist{};
  std::vector<Eigen::Index> rows(window);

  for (Eigen::Index y = 0; y < h; ++y) {
    for (int i = 0; i < window; ++i) rows[i] = clamp_row(y - radius + i);

    // Fresh histogram at the row start, then slide: drop the leftmost
    // sampled column, add the next one on the right. Clamping is monotone,
    // so the column multiset changes by exactly those two samples.
    hist.fill(0);
    for (int i = 0; i < window; ++i) {
      for (int j = 0; j < window; ++j) {
        ++hist[img(rows[i], clamp_col(j - radius))];
      }
    }
    for (Eigen::Index x = 0; x < w; ++x) {
      if (x > 0) {
        const Eigen::Index drop = clamp_col(x - 1 - radius);
        const Eigen::Index add = clamp_col(x + radius);
        for (int i = 0; i < window; ++i) {
          --hist[img(rows[i], drop)];
          ++hist[img(rows[i], add)];
        }
      }
      double occupied = 0;
      for (int b = 0; b < 256; ++b) occupied += count_log[hist[b]];
      out(y, x) = log2_area - occupied / area;
    }
  }
  return out;
}

Eigen::ArrayXXd grid_avg_entropy(const EntropyMap& map, int grid_rows, int grid_cols) {
  if (grid_rows < 1 || grid_cols < 1) throw DomainError("grid_avg_entropy: grid must be positive");
  if (map.rows() < grid_rows || map.cols() < grid_cols) {
    throw DomainError("grid_avg_entropy: map smaller than the region grid");
  }
  const Eigen::Index h = map.rows();
  const Eigen::Index w = map.cols();
  Eigen::ArrayXXd means(grid_rows, grid_cols);
  for (int i = 0; i < grid_rows; ++i) {
    const Eigen::Index r0 = i * h / grid_rows;
    const Eigen::Index r1 = (i + 1) * h / grid_rows;
    for (int j = 0; j < grid_cols; ++j) {
      const Eigen::Index c0 = j * w / grid_cols;
      const Eigen::Index c1 = (j + 1) * w / grid_cols;
      means(i, j) = map.block(r0, c0, r1 - r0, c1 - c0).mean();
    }
  }
  return means;
}

RegionalEntropy regional_avg_entropy(const EntropyMap& map) {
  const auto m = grid_avg_entropy(map, 3, 3);
  return {m(0, 0), m(0, 1), m(0, 2), m(1, 0), m(1, 1), m(1, 2), m(2, 0), m(2, 1), m(2, 2)};
}

CenterOfGravity center_of_gravity(const EntropyMap& map) {
  if (map.size() == 0) throw DomainError("center_of_gravity: empty map");
  const Eigen::Index h = map.rows();
  const Eigen::Index w = map.cols();
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  const double total = map.sum();

  CenterOfGravity cg;
  if (total <= 0) {
    cg.x = cx;
    cg.y = cy;
    cg.degenerate = true;
    return cg;
  }

  // Column/row entropy sums weighted by their zero-based index.
  const Eigen::ArrayXd col_sums = map.colwise().sum();
  const Eigen::ArrayXd row_sums = map.rowwise().sum();
  double sx = 0, sy = 0;
  for (Eigen::Index x = 0; x < w; ++x) sx += col_sums(x) * static_cast<double>(x);
  for (Eigen::Index y = 0; y < h; ++y) sy += row_sums(y) * static_cast<double>(y);
  cg.x = sx / total;
  cg.y = sy / total;
  cg.distance_raw = std::hypot(cg.x - cx, cg.y - cy);
  const double corner = std::hypot(cx, cy);  // center to pixel (0, 0)
  cg.distance_norm = corner > 0 ? cg.distance_raw / corner : 0.0;
  return cg;
}

FeatureRecord entropy_features(const ImageAsset& asset, const RgbImage& img, int window,
                               int region_grid) {
  std::string prefix;
  std::string suffix;
  switch (asset.image_type) {
    case ImageType::indoor: prefix = "ind"; break;
    case ImageType::outdoor: prefix = "out"; break;
    case ImageType::satellite:
      prefix = "sat";
      if (asset.zoom) suffix = "_z" + std::to_string(*asset.zoom);
      break;
  }

  const GrayImage gray = to_grayscale(img);
  const EntropyMap map = local_entropy_map(gray, window);

  FeatureRecord rec;
  rec["ENT_" + prefix + "_avg" + suffix] = global_avg_entropy(map);
  if (region_grid == 3) {
    const RegionalEntropy regions = regional_avg_entropy(map);
    const auto keys = RegionalEntropy::keys();
    const auto values = regions.values();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      rec["ENT_" + prefix + "_" + keys[i] + suffix] = values[i];
    }
  } else {
    const auto means = grid_avg_entropy(map, region_grid, region_grid);
    for (int i = 0; i < region_grid; ++i) {
      for (int j = 0; j < region_grid; ++j) {
        rec["ENT_" + prefix + "_r" + std::to_string(i) + "c" + std::to_string(j) + suffix] =
            means(i, j);
      }
    }
  }
  const CenterOfGravity cg = center_of_gravity(map);
  rec["CG_" + prefix + "_x" + suffix] = cg.x;
  rec["CG_" + prefix + "_y" + suffix] = cg.y;
  rec["CG_" + prefix + "_dist" + suffix] = cg.distance_norm;
  return rec;
}

}  // namespace hedonic
