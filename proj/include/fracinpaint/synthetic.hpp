#pragma once

#include "fracinpaint/fields.hpp"
#include "fracinpaint/grid.hpp"

#include <cstdint>

namespace fracinpaint::synthetic {

/// 0.1 + 0.8 r(x) r(y) with raised cosines r(s) = (1 - cos(2 pi s / L)) / 2,
/// sampled at cell centres. Smooth under both Neumann and periodic extension.
ImageGrid smooth_bump(Index rows, Index cols);

/// Two-tone vertical bands (0.2 / 0.8), `bands` bands across the width.
ImageGrid stripes(Index rows, Index cols, int bands = 4);

/// Linear gradient from 0.1 at the left edge to 0.9 at the right edge.
ImageGrid ramp(Index rows, Index cols);

/// Diagonal ramp with a bright disc and a darker rectangle: smooth regions
/// separated by edges. Deterministic.
ImageGrid piecewise_smooth(Index rows, Index cols);

/// Uniform random values in [lo, hi] from a fixed seed.
ImageGrid random_image(Index rows, Index cols, std::uint64_t seed, double lo = 0.0,
                       double hi = 1.0);

/// Centred axis-aligned box covering approximately `area_fraction` of the image.
Mask box_mask(Index rows, Index cols, double area_fraction);

/// Copy of `image` with damaged pixels overwritten by `fill`.
ImageGrid apply_damage(const ImageGrid& image, const Mask& mask, double fill = 0.0);

}  // namespace fracinpaint::synthetic
