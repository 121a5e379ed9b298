#pragma once

#include "fracinpaint/fields.hpp"
#include "fracinpaint/grid.hpp"

#include <filesystem>
#include <stdexcept>

namespace fracinpaint {

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads 8- or 16-bit PNG or binary PGM (P5) into [0,1] intensities.
/// Colour PNGs are reduced with luminance 0.299 R + 0.587 G + 0.114 B;
/// alpha channels are ignored.
ImageGrid load_image(const std::filesystem::path& path);

/// Clamps to [0,1] and writes an 8-bit grayscale image. The format follows the
/// extension: .pgm writes binary P5, anything else PNG.
void save_image(const ImageGrid& image, const std::filesystem::path& path);

/// Pixels brighter than 0.5 (after normalisation) are damaged.
Mask mask_from_image(const ImageGrid& image);
Mask load_mask(const std::filesystem::path& path);

/// 8-bit quantisation used by save_image: round(clamp(v) * 255).
ImageGrid quantize8(const ImageGrid& image);

}  // namespace fracinpaint
