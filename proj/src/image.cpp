#include "hedonic/image.hpp"

#include <cmath>

#include "hedonic/common.hpp"

namespace hedonic {

GrayImage to_grayscale(const RgbImage& img) {
  if (img.height() < 1 || img.width() < 1) throw DomainError("to_grayscale: empty image");
  GrayImage out(img.height(), img.width());
  for (Eigen::Index y = 0; y < img.height(); ++y) {
    for (Eigen::Index x = 0; x < img.width(); ++x) {
      const double luma =
          0.299 * img.r(y, x) + 0.587 * img.g(y, x) + 0.114 * img.b(y, x);
      double v = std::round(luma);
      if (v < 0) v = 0;
      if (v > 255) v = 255;
      out(y, x) = static_cast<std::uint8_t>(v);
    }
  }
  return out;
}

}  // namespace hedonic
