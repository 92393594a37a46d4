#pragma once

#include <string>

#include "hedonic/image.hpp"

namespace hedonic {

/// Decodes an 8-bit PNG or JPEG file (dispatch on magic bytes). Throws
/// FormatError when the file is missing or undecodable.
RgbImage read_image(const std::string& path);

void write_png_rgb(const std::string& path, const RgbImage& img);
void write_png_gray(const std::string& path, const GrayImage& img);
void write_jpeg_rgb(const std::string& path, const RgbImage& img, int quality = 90);

}  // namespace hedonic
