#pragma once

// Planar scenes seen by a rectified stereo pair have affine disparity maps.
// This header holds that mapping, a cheap local matcher, the 3-point affine
// fit, and the disparity-driven projection of the left view onto the right.

#include <array>
#include <span>

#include "codedlf/raster.hpp"
#include "codedlf/sparse_interp.hpp"

namespace codedlf {

struct Calibration {
  double baseline_m = 0.01;
  double focal_px = 1000.0;
  double principal_u = 0.0;
  double principal_v = 0.0;

  // Throws kInvalidArgument on a non-positive baseline/focal length or a
  // principal point outside a width x height image.
  void validate(int width, int height) const;

  static Calibration centered(int width, int height, double baseline_m = 0.01,
                              double focal_px = 1000.0);

  friend bool operator==(const Calibration&, const Calibration&) = default;
};

// c = a*x + b*y + z in camera coordinates.
struct Plane3D {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
};

// d(u, v) = alpha*u + beta*v + gamma, in pixels.
struct AffineDisparity {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double operator()(double u, double v) const noexcept { return alpha * u + beta * v + gamma; }

  friend bool operator==(const AffineDisparity&, const AffineDisparity&) = default;
};

struct DisparityProbe {
  int u = 0;
  int v = 0;
  double d = 0.0;
  // Mean absolute difference per window pixel at the integer optimum.
  double cost = 0.0;
};

struct SearchRange {
  int min = -32;
  int max = 32;
};

inline constexpr int kDefaultWindow = 17;

AffineDisparity plane_to_affine(const Plane3D& plane, const Calibration& calib);

// Dense disparity of a constant-coefficient map, handy for diagnostics.
DisparityMap render_affine(const AffineDisparity& disp, int width, int height);

// Finds d in [search.min, search.max] minimizing the SAD between the right
// window centred at (u, v) and the left window centred at (u + d, v), then
// refines by a parabola through the costs around the integer optimum.
// Throws kOutOfBounds when a window leaves either image and kAmbiguousMatch
// when every candidate costs the same.
DisparityProbe local_disparity(const DenseView& left, const DenseView& right, int u, int v,
                               int window = kDefaultWindow, SearchRange search = {});

// Exact affine interpolation of three probes. Throws kDegenerateProbes for
// (near-)collinear positions.
AffineDisparity fit_affine_from_probes(std::span<const DisparityProbe, 3> probes);

// out(u, v) = left(u + disp(u, v), v), linearly interpolated along the row.
// Pixels whose source falls outside the image, or on uncovered left pixels,
// are marked uncovered.
DenseView warp_left_to_right(const DenseView& left, const AffineDisparity& disp);

// Same warp with an arbitrary per-pixel disparity map.
DenseView warp_left_to_right(const DenseView& left, const DisparityMap& disp);

}  // namespace codedlf
