#pragma once

#include "codedlf/lf_core.hpp"
#include "codedlf/raster.hpp"

namespace codedlf {

struct DenseView {
  GrayImage image;
  // 1 where the pixel lies between the first and last known sample of its row;
  // 0 for clamped extrapolation.
  BinaryRaster coverage;
};

// Minimum knots per row for the cubic pass.
inline constexpr int kMinRowKnots = 4;

// Two-pass fill of a sparse view.
//  1. Rows with >= 4 known samples: cubic Hermite through the knots with
//     Catmull-Rom (central difference) tangents on the actual knot spacing,
//     nearest-knot extension outside the first/last knot.
//  2. Remaining rows: linear interpolation between the nearest filled rows
//     above and below (copy when only one side exists).
// Knot values are kept exactly; output is clamped to [0, 1].
// Throws kInsufficientData when no row has 4 known samples.
DenseView densify(const SparseView& sv);

// A view with every pixel known and covered.
DenseView dense_from_image(const GrayImage& image);

}  // namespace codedlf
