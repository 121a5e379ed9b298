#include "fracinpaint/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace fracinpaint {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

// --- PGM (P5) -------------------------------------------------------------

// Skips whitespace and '#' comments, then reads an unsigned integer.
long read_pnm_int(std::istream& in) {
  int c = in.peek();
  while (c != EOF) {
    if (std::isspace(c)) {
      in.get();
    } else if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else {
      break;
    }
    c = in.peek();
  }
  long value = -1;
  if (!(in >> value) || value < 0) throw ImageIoError("malformed PGM header");
  return value;
}

ImageGrid load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string());
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5') {
    throw ImageIoError(path.string() + ": only binary PGM (P5) is supported");
  }
  const long width = read_pnm_int(in);
  const long height = read_pnm_int(in);
  const long maxval = read_pnm_int(in);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) {
    throw ImageIoError(path.string() + ": invalid PGM dimensions or maxval");
  }
  in.get();  // single whitespace before the raster

  const bool wide = maxval > 255;
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<unsigned char> raw(count * (wide ? 2 : 1));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw ImageIoError(path.string() + ": truncated PGM raster");
  }

  ImageGrid img(height, width);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = wide ? (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1] : raw[i];
    img.data()[i] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return img;
}

void save_pgm(const ImageGrid& q, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError("cannot write " + path.string());
  out << "P5\n" << q.cols() << ' ' << q.rows() << "\n255\n";
  std::vector<unsigned char> raw(static_cast<std::size_t>(q.size()));
  for (Index i = 0; i < q.size(); ++i) raw[i] = static_cast<unsigned char>(q.data()[i]);
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw ImageIoError("failed writing " + path.string());
}

// --- PNG ------------------------------------------------------------------

ImageGrid load_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw ImageIoError("cannot open " + path.string());
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw ImageIoError(path.string() + ": not a PNG or PGM file");
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw ImageIoError("libpng: out of memory");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw ImageIoError("libpng: out of memory");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(path.string() + ": corrupt PNG");
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_png(png, info, PNG_TRANSFORM_EXPAND | PNG_TRANSFORM_STRIP_ALPHA, nullptr);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int channels = png_get_channels(png, info);
  png_bytepp rows = png_get_rows(png, info);

  ImageGrid img(height, width);
  const double maxval = depth == 16 ? 65535.0 : 255.0;
  const int bytes = depth == 16 ? 2 : 1;
  auto sample = [&](png_bytep row, png_uint_32 x, int ch) {
    const png_bytep p = row + (static_cast<std::size_t>(x) * channels + ch) * bytes;
    const unsigned v = bytes == 2 ? (static_cast<unsigned>(p[0]) << 8) | p[1] : p[0];
    return static_cast<double>(v) / maxval;
  };
  for (png_uint_32 y = 0; y < height; ++y) {
    for (png_uint_32 x = 0; x < width; ++x) {
      img(y, x) = channels >= 3 ? 0.299 * sample(rows[y], x, 0) + 0.587 * sample(rows[y], x, 1) +
                                      0.114 * sample(rows[y], x, 2)
                                : sample(rows[y], x, 0);
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

void save_png(const ImageGrid& q, const std::filesystem::path& path) {
  std::vector<png_byte> raw(static_cast<std::size_t>(q.size()));
  for (Index i = 0; i < q.size(); ++i) raw[i] = static_cast<png_byte>(q.data()[i]);
  std::vector<png_bytep> rows(static_cast<std::size_t>(q.rows()));
  for (Index y = 0; y < q.rows(); ++y) rows[y] = raw.data() + y * q.cols();

  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw ImageIoError("cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw ImageIoError("libpng: out of memory");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw ImageIoError("libpng: out of memory");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw ImageIoError("failed writing " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(q.cols()), static_cast<png_uint_32>(q.rows()),
               8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

ImageGrid quantize8(const ImageGrid& image) {
  return (image.max(0.0).min(1.0) * 255.0).round();
}

ImageGrid load_image(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw ImageIoError("cannot open " + path.string());
  char magic[2] = {0, 0};
  probe.read(magic, 2);
  probe.close();
  ImageGrid img = (magic[0] == 'P' && magic[1] == '5') ? load_pgm(path) : load_png(path);
  if (img.rows() < 2 || img.cols() < 2) {
    throw ImageIoError(path.string() + ": image must be at least 2x2");
  }
  return img;
}

void save_image(const ImageGrid& image, const std::filesystem::path& path) {
  if (!all_finite(image)) throw ImageIoError("save_image: image has nonfinite values");
  const ImageGrid q = quantize8(image);
  if (lower_extension(path) == ".pgm") {
    save_pgm(q, path);
  } else {
    save_png(q, path);
  }
}

Mask mask_from_image(const ImageGrid& image) { return Mask((image > 0.5).eval()); }

Mask load_mask(const std::filesystem::path& path) { return mask_from_image(load_image(path)); }

}  // namespace fracinpaint
