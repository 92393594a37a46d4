#include "hedonic/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "hedonic/common.hpp"

namespace hedonic {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

RgbImage from_interleaved(const unsigned char* data, unsigned width, unsigned height) {
  RgbImage img;
  img.r.resize(height, width);
  img.g.resize(height, width);
  img.b.resize(height, width);
  for (unsigned y = 0; y < height; ++y) {
    const unsigned char* row = data + static_cast<std::size_t>(y) * width * 3;
    for (unsigned x = 0; x < width; ++x) {
      img.r(y, x) = row[3 * x];
      img.g(y, x) = row[3 * x + 1];
      img.b(y, x) = row[3 * x + 2];
    }
  }
  return img;
}

std::vector<unsigned char> to_interleaved(const RgbImage& img) {
  const auto h = static_cast<std::size_t>(img.height());
  const auto w = static_cast<std::size_t>(img.width());
  std::vector<unsigned char> buf(h * w * 3);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      buf[(y * w + x) * 3] = img.r(y, x);
      buf[(y * w + x) * 3 + 1] = img.g(y, x);
      buf[(y * w + x) * 3 + 2] = img.b(y, x);
    }
  }
  return buf;
}

RgbImage read_png(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw FormatError("cannot read PNG " + path + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    png_image_free(&image);
    throw FormatError("cannot decode PNG " + path + ": " + image.message);
  }
  return from_interleaved(buffer.data(), image.width, image.height);
}

struct JpegError {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegError*>(cinfo->err);
  std::longjmp(err->jump, 1);
}

RgbImage read_jpeg(const std::string& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw FormatError("cannot open " + path);

  jpeg_decompress_struct cinfo;
  JpegError jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;

  std::vector<unsigned char> buffer;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw FormatError("cannot decode JPEG " + path);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const unsigned width = cinfo.output_width;
  const unsigned height = cinfo.output_height;
  buffer.resize(static_cast<std::size_t>(width) * height * 3);
  while (cinfo.output_scanline < height) {
    unsigned char* row = buffer.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return from_interleaved(buffer.data(), width, height);
}

}  // namespace

RgbImage read_image(const std::string& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw FormatError("cannot open image " + path);
  unsigned char magic[4] = {0, 0, 0, 0};
  const std::size_t got = std::fread(magic, 1, sizeof magic, file.get());
  file.reset();
  if (got >= 4 && magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N' && magic[3] == 'G') {
    return read_png(path);
  }
  if (got >= 2 && magic[0] == 0xFF && magic[1] == 0xD8) {
    return read_jpeg(path);
  }
  throw FormatError("unsupported image format (not PNG/JPEG): " + path);
}

void write_png_rgb(const std::string& path, const RgbImage& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;
  const auto buf = to_interleaved(img);
  if (!png_image_write_to_file(&image, path.c_str(), 0, buf.data(), 0, nullptr)) {
    throw FormatError("cannot write PNG " + path + ": " + image.message);
  }
}

void write_png_gray(const std::string& path, const GrayImage& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.cols());
  image.height = static_cast<png_uint_32>(img.rows());
  image.format = PNG_FORMAT_GRAY;
  std::vector<unsigned char> buf(static_cast<std::size_t>(img.size()));
  for (Eigen::Index y = 0; y < img.rows(); ++y) {
    for (Eigen::Index x = 0; x < img.cols(); ++x) {
      buf[static_cast<std::size_t>(y) * img.cols() + x] = img(y, x);
    }
  }
  if (!png_image_write_to_file(&image, path.c_str(), 0, buf.data(), 0, nullptr)) {
    throw FormatError("cannot write PNG " + path + ": " + image.message);
  }
}

void write_jpeg_rgb(const std::string& path, const RgbImage& img, int quality) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw FormatError("cannot open " + path + " for writing");

  jpeg_compress_struct cinfo;
  JpegError jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_compress(&cinfo);
    throw FormatError("cannot encode JPEG " + path);
  }
  jpeg_create_compress(&cinfo);
  jpeg_stdio_dest(&cinfo, file.get());
  cinfo.image_width = static_cast<JDIMENSION>(img.width());
  cinfo.image_height = static_cast<JDIMENSION>(img.height());
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);

  auto buf = to_interleaved(img);
  while (cinfo.next_scanline < cinfo.image_height) {
    unsigned char* row = buf.data() + static_cast<std::size_t>(cinfo.next_scanline) * img.width() * 3;
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
}

}  // namespace hedonic
