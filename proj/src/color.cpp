#include "hedonic/color.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hedonic/common.hpp"
#include "hedonic/rng.hpp"

namespace hedonic {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Embedded {
  double x, y, z;
};

Embedded embed(const Hsv& p) {
  const double rad = p.h * kPi / 180.0;
  return {p.s * std::cos(rad), p.s * std::sin(rad), p.v};
}

Hsv unembed(const Embedded& e) {
  Hsv p;
  p.s = std::clamp(std::hypot(e.x, e.y), 0.0, 1.0);
  if (p.s > 0) {
    double deg = std::atan2(e.y, e.x) * 180.0 / kPi;
    if (deg < 0) deg += 360.0;
    if (deg >= 360.0) deg = 0.0;
    p.h = deg;
  }
  p.v = std::clamp(e.z, 0.0, 1.0);
  return p;
}

double dist2(const Embedded& a, const Embedded& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

Hsv rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  const double r = r8 / 255.0, g = g8 / 255.0, b = b8 / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;

  Hsv out;
  out.v = mx;
  out.s = mx > 0 ? delta / mx : 0.0;
  if (delta > 0) {
    double h;
    if (mx == r) {
      h = 60.0 * std::fmod((g - b) / delta, 6.0);
    } else if (mx == g) {
      h = 60.0 * ((b - r) / delta + 2.0);
    } else {
      h = 60.0 * ((r - g) / delta + 4.0);
    }
    if (h < 0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    out.h = h;
  }
  return out;
}

GreenMaskSpec default_green_mask() {
  GreenMaskSpec spec;
  spec.hue_ranges.push_back({60.0, 170.0});
  spec.min_saturation = 0.2;
  spec.min_value = 0.15;
  return spec;
}

bool mask_contains(const GreenMaskSpec& spec, const Hsv& px) {
  if (px.s < spec.min_saturation || px.v < spec.min_value) return false;
  for (const auto& range : spec.hue_ranges) {
    if (px.h >= range.lo && px.h <= range.hi) return true;
  }
  return false;
}

double green_fraction(const RgbImage& img, const GreenMaskSpec& spec) {
  if (img.height() < 1 || img.width() < 1) throw DomainError("green_fraction: empty image");
  if (spec.hue_ranges.empty()) throw DomainError("green_fraction: empty mask spec");
  std::size_t hits = 0;
  for (Eigen::Index y = 0; y < img.height(); ++y) {
    for (Eigen::Index x = 0; x < img.width(); ++x) {
      if (mask_contains(spec, rgb_to_hsv(img.r(y, x), img.g(y, x), img.b(y, x)))) ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(img.height() * img.width());
}

RgbImage apply_green_mask(const RgbImage& img, const GreenMaskSpec& spec) {
  if (spec.hue_ranges.empty()) throw DomainError("apply_green_mask: empty mask spec");
  RgbImage out = img;
  for (Eigen::Index y = 0; y < img.height(); ++y) {
    for (Eigen::Index x = 0; x < img.width(); ++x) {
      if (!mask_contains(spec, rgb_to_hsv(img.r(y, x), img.g(y, x), img.b(y, x)))) {
        out.r(y, x) = 0;
        out.g(y, x) = 0;
        out.b(y, x) = 0;
      }
    }
  }
  return out;
}

ColorPalette kmeans_palette(std::span<const Hsv> pixels, int k, std::uint64_t seed) {
  const std::size_t n = pixels.size();
  if (k < 1) throw DomainError("kmeans_palette: k must be >= 1");
  if (static_cast<std::size_t>(k) > n) {
    throw DomainError("kmeans_palette: k exceeds the sample size");
  }

  std::vector<Embedded> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = embed(pixels[i]);

  // k-means++ seeding: first center uniform, then D^2 sampling.
  Rng rng(seed);
  std::vector<Embedded> centers;
  centers.reserve(k);
  centers.push_back(pts[rng.uniform_index(n)]);
  std::vector<double> d2(n);
  for (int c = 1; c < k; ++c) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = dist2(pts[i], centers[0]);
      for (std::size_t j = 1; j < centers.size(); ++j) best = std::min(best, dist2(pts[i], centers[j]));
      d2[i] = best;
      total += best;
    }
    std::size_t pick;
    if (total > 0) {
      const double r = rng.uniform01() * total;
      double acc = 0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > r) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.uniform_index(n);
    }
    centers.push_back(pts[pick]);
  }

  std::vector<int> assignment(n, 0);
  std::vector<std::size_t> counts(k, 0);
  ColorPalette palette;
  palette.seed = seed;

  for (int iter = 0; iter < 100; ++iter) {
    // Assignment pass; ties go to the lowest cluster index.
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = dist2(pts[i], centers[0]);
      for (int j = 1; j < k; ++j) {
        const double d = dist2(pts[i], centers[j]);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      assignment[i] = best;
      sse += best_d;
    }
    palette.sse_history.push_back(sse);

    // Update pass; an emptied cluster keeps its previous centroid.
    std::vector<Embedded> next(k, Embedded{0, 0, 0});
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      next[assignment[i]].x += pts[i].x;
      next[assignment[i]].y += pts[i].y;
      next[assignment[i]].z += pts[i].z;
      ++counts[assignment[i]];
    }
    double max_shift = 0;
    for (int j = 0; j < k; ++j) {
      if (counts[j] == 0) {
        next[j] = centers[j];
      } else {
        next[j].x /= counts[j];
        next[j].y /= counts[j];
        next[j].z /= counts[j];
      }
      max_shift = std::max(max_shift, std::sqrt(dist2(next[j], centers[j])));
    }
    centers = std::move(next);
    if (max_shift < 1e-6) break;
  }

  // Final counts reflect the assignment against the converged centroids.
  std::fill(counts.begin(), counts.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    double best_d = dist2(pts[i], centers[0]);
    for (int j = 1; j < k; ++j) {
      const double d = dist2(pts[i], centers[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    ++counts[best];
  }

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return counts[a] > counts[b]; });
  for (int idx : order) {
    palette.centroids.push_back(unembed(centers[idx]));
    palette.counts.push_back(counts[idx]);
  }
  return palette;
}

std::vector<Hsv> sample_pixels(const RgbImage& img, std::size_t max_pixels) {
  const std::size_t total = static_cast<std::size_t>(img.height()) * img.width();
  const std::size_t stride = total <= max_pixels ? 1 : (total + max_pixels - 1) / max_pixels;
  std::vector<Hsv> out;
  out.reserve(std::min(total, max_pixels));
  const Eigen::Index w = img.width();
  for (std::size_t i = 0; i < total; i += stride) {
    const Eigen::Index y = static_cast<Eigen::Index>(i / w);
    const Eigen::Index x = static_cast<Eigen::Index>(i % w);
    out.push_back(rgb_to_hsv(img.r(y, x), img.g(y, x), img.b(y, x)));
  }
  return out;
}

MaskDerivation derive_masks(std::span<const ColorPalette> palettes, const MaskDerivationConfig& cfg) {
  if (palettes.empty()) throw DomainError("derive_masks: no palettes supplied");

  std::vector<double> hues;
  for (const auto& palette : palettes) {
    for (const auto& c : palette.centroids) {
      if (c.h >= cfg.green_band.lo && c.h <= cfg.green_band.hi) hues.push_back(c.h);
    }
  }

  MaskDerivation result;
  result.spec.min_saturation = cfg.min_saturation;
  result.spec.min_value = cfg.min_value;
  if (hues.empty()) {
    result.spec.hue_ranges = default_green_mask().hue_ranges;
    result.used_fallback = true;
    return result;
  }

  std::sort(hues.begin(), hues.end());
  std::vector<HueRange> intervals;
  for (double h : hues) {
    const double lo = std::max(0.0, h - cfg.margin_deg);
    const double hi = std::min(359.999, h + cfg.margin_deg);
    if (!intervals.empty() && lo <= intervals.back().hi) {
      intervals.back().hi = std::max(intervals.back().hi, hi);
    } else {
      intervals.push_back({lo, hi});
    }
  }
  result.spec.hue_ranges = std::move(intervals);
  return result;
}

ListingGreenness listing_greenness(std::span<const GreenSample> samples, int satellite_zoom) {
  std::vector<double> outdoor;
  std::vector<double> sat;
  for (const auto& s : samples) {
    if (s.type == ImageType::outdoor) outdoor.push_back(s.fraction);
    if (s.type == ImageType::satellite && s.zoom && *s.zoom == satellite_zoom) {
      sat.push_back(s.fraction);
    }
  }
  // Summation order must not depend on input order.
  auto mean_of = [](std::vector<double>& v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    std::sort(v.begin(), v.end());
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  ListingGreenness g;
  g.green_mask = mean_of(outdoor);
  g.green_sat = mean_of(sat);
  return g;
}

}  // namespace hedonic
