#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace hedonic {

/// Raster plane indexed (row, col) = (y, x).
using ByteImage = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

using GrayImage = ByteImage;

/// 8-bit RGB raster as three planes of equal shape.
struct RgbImage {
  ByteImage r, g, b;

  Eigen::Index height() const { return r.rows(); }
  Eigen::Index width() const { return r.cols(); }

  static RgbImage constant(Eigen::Index h, Eigen::Index w, std::uint8_t cr, std::uint8_t cg,
                           std::uint8_t cb) {
    return {ByteImage::Constant(h, w, cr), ByteImage::Constant(h, w, cg),
            ByteImage::Constant(h, w, cb)};
  }
};

/// ITU-R BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), clamped to [0,255].
/// Throws DomainError on a zero-dimension image.
GrayImage to_grayscale(const RgbImage& img);

}  // namespace hedonic
