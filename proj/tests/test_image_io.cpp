#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hedonic/image_io.hpp"
#include "hedonic/rng.hpp"
#include "testutil.hpp"

using namespace hedonic;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "hedonic_imageio_test") {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("PNG encode/decode round-trips exactly") {
  TempDir dir;
  Rng rng(1);
  const RgbImage img = testutil::random_rgb(rng, 21, 17);
  const std::string path = (dir.path / "rt.png").string();
  write_png_rgb(path, img);
  const RgbImage back = read_image(path);
  CHECK(back.height() == 21);
  CHECK(back.width() == 17);
  CHECK((back.r == img.r).all());
  CHECK((back.g == img.g).all());
  CHECK((back.b == img.b).all());
}

TEST_CASE("grayscale PNG dump decodes back to the same intensities") {
  TempDir dir;
  Rng rng(2);
  const GrayImage gray = testutil::random_gray(rng, 9, 13);
  const std::string path = (dir.path / "gray.png").string();
  write_png_gray(path, gray);
  const RgbImage back = read_image(path);
  CHECK((back.r == gray).all());
  CHECK((back.g == gray).all());
}

TEST_CASE("JPEG decode is close to the encoded source") {
  TempDir dir;
  const RgbImage img = RgbImage::constant(32, 32, 90, 160, 70);
  const std::string path = (dir.path / "rt.jpg").string();
  write_jpeg_rgb(path, img, 95);
  const RgbImage back = read_image(path);
  CHECK(back.height() == 32);
  CHECK(back.width() == 32);
  // Lossy codec: stay within a small per-channel tolerance on a flat image.
  CHECK(std::abs(static_cast<int>(back.r(16, 16)) - 90) <= 6);
  CHECK(std::abs(static_cast<int>(back.g(16, 16)) - 160) <= 6);
  CHECK(std::abs(static_cast<int>(back.b(16, 16)) - 70) <= 6);
}

TEST_CASE("undecodable files raise FormatError") {
  TempDir dir;
  const std::string path = (dir.path / "broken.png").string();
  std::ofstream(path) << "this is not an image";
  CHECK_THROWS_AS(read_image(path), FormatError);
  CHECK_THROWS_AS(read_image((dir.path / "missing.png").string()), FormatError);

  // PNG magic but truncated body.
  const std::string truncated = (dir.path / "trunc.png").string();
  std::ofstream(truncated, std::ios::binary).write("\x89PNG\r\n\x1a\n\0\0", 10);
  CHECK_THROWS_AS(read_image(truncated), FormatError);
}
