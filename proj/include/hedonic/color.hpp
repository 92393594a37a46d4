#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hedonic/image.hpp"
#include "hedonic/listing.hpp"

namespace hedonic {

/// Hue in degrees [0, 360), saturation and value in [0, 1]. Hue is 0 when
/// saturation is 0.
struct Hsv {
  double h = 0;
  double s = 0;
  double v = 0;
};

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

struct HueRange {
  double lo = 0;  // degrees, lo <= hi, both within [0, 360)
  double hi = 0;
};

/// One or more HSV ranges whose member pixels count as vegetation.
struct GreenMaskSpec {
  std::vector<HueRange> hue_ranges;
  double min_saturation = 0.2;
  double min_value = 0.15;
};

/// Conservative vegetation band; the source ranges are config-overridable.
GreenMaskSpec default_green_mask();

bool mask_contains(const GreenMaskSpec& spec, const Hsv& px);

/// Fraction of pixels whose HSV lies in any of the spec ranges.
double green_fraction(const RgbImage& img, const GreenMaskSpec& spec);

/// Debug view: pixels outside the mask turn black.
RgbImage apply_green_mask(const RgbImage& img, const GreenMaskSpec& spec);

/// K-means dominant-color palette. Clustering runs in the hue-circular
/// embedding (s*cos h, s*sin h, v); centroids are reported back in HSV and
/// sorted by descending cluster population.
struct ColorPalette {
  std::vector<Hsv> centroids;
  std::vector<std::size_t> counts;
  std::uint64_t seed = 0;
  std::vector<double> sse_history;  // SSE after each assignment pass
};

/// Lloyd iterations from k-means++ seeding until the largest centroid shift
/// drops below 1e-6 or 100 iterations pass. Deterministic for a fixed seed.
ColorPalette kmeans_palette(std::span<const Hsv> pixels, int k, std::uint64_t seed);

/// Deterministic-stride subsample of at most `max_pixels` HSV pixels.
std::vector<Hsv> sample_pixels(const RgbImage& img, std::size_t max_pixels = 20000);

struct MaskDerivationConfig {
  HueRange green_band{60.0, 170.0};
  double margin_deg = 20.0;
  double min_saturation = 0.2;
  double min_value = 0.15;
};

struct MaskDerivation {
  GreenMaskSpec spec;
  bool used_fallback = false;  // no green centroids found in the corpus
};

/// Collects palette centroids whose hue falls in the green band, widens each
/// to +/- margin, and unions overlapping intervals. Falls back to the
/// default spec when the corpus has no vegetation.
MaskDerivation derive_masks(std::span<const ColorPalette> palettes,
                            const MaskDerivationConfig& cfg = {});

/// Greenness of one image, tagged with enough context to aggregate.
struct GreenSample {
  ImageType type = ImageType::outdoor;
  std::optional<int> zoom;
  double fraction = 0;
};

struct ListingGreenness {
  std::optional<double> green_mask;  // mean over outdoor images
  std::optional<double> green_sat;   // mean over satellite images at the target zoom
};

/// GREEN_mask averages the outdoor fractions; GREEN_sat averages the
/// satellite fractions at `satellite_zoom`. Absent image sets stay missing.
ListingGreenness listing_greenness(std::span<const GreenSample> samples, int satellite_zoom = 20);

}  // namespace hedonic
