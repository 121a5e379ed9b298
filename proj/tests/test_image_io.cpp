#include "fracinpaint/image_io.hpp"
#include "support.hpp"

#include <doctest.h>
#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace fracinpaint;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "fracinpaint_io_tests";
  fs::create_directories(dir);
  return dir;
}

// Independent PNG writer: raw bytes per row, big-endian samples for 16-bit.
void write_png(const fs::path& path, int width, int height, int depth, int color,
               const std::vector<std::vector<unsigned char>>& rows) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  REQUIRE(fp != nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, depth, color, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (const auto& r : rows) png_write_row(png, r.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

void write_pgm(const fs::path& path, const std::string& header,
               const std::vector<unsigned char>& data) {
  std::ofstream os(path, std::ios::binary);
  os << header;
  os.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

}  // namespace

TEST_CASE("gray ramp survives a png and pgm roundtrip") {
  ImageGrid ramp(7, 300);
  for (Index j = 0; j < 300; ++j) ramp.col(j).setConstant(j / 299.0);
  for (const char* name : {"ramp.png", "ramp.pgm"}) {
    const fs::path p = scratch_dir() / name;
    save_image(ramp, p);
    const ImageGrid back = load_image(p);
    REQUIRE(back.rows() == 7);
    REQUIRE(back.cols() == 300);
    CHECK((back - ramp).abs().maxCoeff() <= 1.0 / 255.0);
    CHECK((back * 255.0 == quantize8(ramp)).all());
  }
}

TEST_CASE("saving clamps to the unit range") {
  ImageGrid g(2, 2);
  g << -0.5, 0.25, 1.0, 7.0;
  const fs::path p = scratch_dir() / "clamp.png";
  save_image(g, p);
  const ImageGrid back = load_image(p);
  CHECK(back(0, 0) == 0.0);
  CHECK(back(0, 1) == doctest::Approx(64.0 / 255.0));
  CHECK(back(1, 0) == 1.0);
  CHECK(back(1, 1) == 1.0);
}

TEST_CASE("16-bit png is normalised by 65535") {
  const fs::path p = scratch_dir() / "deep.png";
  // Samples 0, 65535, 1000, 40000.
  write_png(p, 2, 2, 16, PNG_COLOR_TYPE_GRAY,
            {{0x00, 0x00, 0xFF, 0xFF}, {0x03, 0xE8, 0x9C, 0x40}});
  const ImageGrid g = load_image(p);
  CHECK(g(0, 0) == 0.0);
  CHECK(g(0, 1) == 1.0);
  CHECK(g(1, 0) == doctest::Approx(1000.0 / 65535.0).epsilon(1e-12));
  CHECK(g(1, 1) == doctest::Approx(40000.0 / 65535.0).epsilon(1e-12));
}

TEST_CASE("rgb png is reduced by luminance") {
  const fs::path p = scratch_dir() / "rgb.png";
  write_png(p, 3, 2, 8, PNG_COLOR_TYPE_RGB,
            {{255, 0, 0, 0, 255, 0, 0, 0, 255}, {0, 0, 0, 0, 0, 0, 0, 0, 0}});
  const ImageGrid g = load_image(p);
  CHECK(g(0, 0) == doctest::Approx(0.299));
  CHECK(g(0, 1) == doctest::Approx(0.587));
  CHECK(g(0, 2) == doctest::Approx(0.114));

  const fs::path q = scratch_dir() / "rgba.png";
  write_png(q, 2, 2, 8, PNG_COLOR_TYPE_RGBA,
            {{255, 255, 255, 0, 0, 0, 0, 255}, {0, 0, 0, 0, 0, 0, 0, 0}});
  CHECK(load_image(q)(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("pgm headers with comments and 16-bit samples") {
  const fs::path p = scratch_dir() / "comment.pgm";
  write_pgm(p, "P5\n# made by hand\n2 2\n255\n", {0, 51, 0, 0});
  const ImageGrid g = load_image(p);
  CHECK(g(0, 1) == doctest::Approx(0.2));

  const fs::path q = scratch_dir() / "deep.pgm";
  write_pgm(q, "P5 2 2 65535\n", {0xFF, 0xFF, 0, 0, 0, 0, 0x80, 0x00});
  const ImageGrid d = load_image(q);
  CHECK(d(0, 0) == 1.0);
  CHECK(d(1, 1) == doctest::Approx(32768.0 / 65535.0).epsilon(1e-12));
}

TEST_CASE("unreadable input") {
  CHECK_THROWS_AS(load_image(scratch_dir() / "missing.png"), ImageIoError);
  const fs::path p = scratch_dir() / "junk.png";
  std::ofstream(p) << "not an image";
  CHECK_THROWS_AS(load_image(p), ImageIoError);
  const fs::path q = scratch_dir() / "short.pgm";
  write_pgm(q, "P5\n4 4\n255\n", {1, 2, 3});
  CHECK_THROWS_AS(load_image(q), ImageIoError);
  const fs::path tiny = scratch_dir() / "tiny.pgm";
  write_pgm(tiny, "P5\n1 1\n255\n", {9});
  CHECK_THROWS_AS(load_image(tiny), ImageIoError);
}

TEST_CASE("mask threshold") {
  SUBCASE("all black") {
    const Mask m = mask_from_image(ImageGrid::Zero(4, 4));
    CHECK(m.damaged_count() == 0);
  }
  SUBCASE("all white") {
    CHECK_THROWS(mask_from_image(ImageGrid::Ones(4, 4)));
  }
  SUBCASE("gray levels") {
    ImageGrid g = ImageGrid::Zero(2, 2);
    g(0, 0) = 0.6;
    g(0, 1) = 0.5;
    const Mask m = mask_from_image(g);
    CHECK(m.damaged()(0, 0));
    CHECK_FALSE(m.damaged()(0, 1));
  }
  SUBCASE("from file") {
    const fs::path p = scratch_dir() / "mask.pgm";
    write_pgm(p, "P5\n2 2\n255\n", {0, 200, 100, 255});
    const Mask m = load_mask(p);
    CHECK(m.damaged_count() == 2);
    CHECK(m.damaged()(0, 1));
    CHECK(m.damaged()(1, 1));
  }
}
