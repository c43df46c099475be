#include "codedlf/stereo_geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace codedlf {
namespace {

struct Sample {
  double value;
  bool covered;
};

// Linear interpolation along a row; nullopt-like flag when x is outside.
Sample sample_row(std::span<const double> row, std::span<const std::uint8_t> cover, double x) {
  const double last = static_cast<double>(row.size() - 1);
  if (!(x >= 0.0) || x > last) {
    const double xc = std::clamp(std::isfinite(x) ? x : 0.0, 0.0, last);
    return {row[static_cast<std::size_t>(std::lround(xc))], false};
  }
  const auto x0 = static_cast<std::size_t>(std::floor(x));
  const double f = x - static_cast<double>(x0);
  if (f == 0.0) return {row[x0], cover[x0] != 0};
  return {(1.0 - f) * row[x0] + f * row[x0 + 1], cover[x0] != 0 && cover[x0 + 1] != 0};
}

template <typename DisparityAt>
DenseView warp_impl(const DenseView& left, DisparityAt disparity_at) {
  const int width = left.image.width();
  const int height = left.image.height();
  DenseView out{GrayImage(width, height, 0.0), BinaryRaster(width, height, 0)};
  for (int v = 0; v < height; ++v) {
    const auto src = left.image.row(v);
    const auto src_cover = left.coverage.row(v);
    auto dst = out.image.row(v);
    auto dst_cover = out.coverage.row(v);
    for (int u = 0; u < width; ++u) {
      const Sample s = sample_row(src, src_cover, u + disparity_at(u, v));
      dst[static_cast<std::size_t>(u)] = s.value;
      dst_cover[static_cast<std::size_t>(u)] = s.covered ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

void Calibration::validate(int width, int height) const {
  require(baseline_m > 0.0 && std::isfinite(baseline_m), ErrorKind::kInvalidArgument,
          "baseline must be positive");
  require(focal_px > 0.0 && std::isfinite(focal_px), ErrorKind::kInvalidArgument,
          "focal length must be positive");
  require(principal_u >= 0.0 && principal_u <= width - 1 && principal_v >= 0.0 &&
              principal_v <= height - 1,
          ErrorKind::kInvalidArgument, "principal point must lie inside the image");
}

Calibration Calibration::centered(int width, int height, double baseline_m, double focal_px) {
  return {baseline_m, focal_px, 0.5 * (width - 1), 0.5 * (height - 1)};
}

AffineDisparity plane_to_affine(const Plane3D& plane, const Calibration& calib) {
  require(plane.c != 0.0 && std::isfinite(plane.c), ErrorKind::kDegeneratePlane,
          "plane passes through the optical center (c = 0)");
  const double k = calib.baseline_m / plane.c;
  return {plane.a * k, plane.b * k,
          k * (calib.focal_px - plane.a * calib.principal_u - plane.b * calib.principal_v)};
}

DisparityMap render_affine(const AffineDisparity& disp, int width, int height) {
  DisparityMap map(width, height);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) map(u, v) = disp(u, v);
  }
  return map;
}

DisparityProbe local_disparity(const DenseView& left, const DenseView& right, int u, int v,
                               int window, SearchRange search) {
  require_same_shape(left.image, right.image, "local_disparity views");
  require(window >= 5 && window % 2 == 1, ErrorKind::kInvalidArgument,
          "matching window must be odd and at least 5");
  require(search.min <= search.max, ErrorKind::kInvalidArgument, "empty search range");
  const int half = window / 2;
  const int width = left.image.width();
  const int height = left.image.height();
  require(v - half >= 0 && v + half < height && u - half >= 0 && u + half < width &&
              u + search.min - half >= 0 && u + search.max + half < width,
          ErrorKind::kOutOfBounds,
          "matching window at (" + std::to_string(u) + ", " + std::to_string(v) +
              ") exceeds the image for the search range");

  const std::size_t n = static_cast<std::size_t>(search.max - search.min + 1);
  std::vector<double> costs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int d = search.min + static_cast<int>(i);
    double sad = 0.0;
    for (int y = v - half; y <= v + half; ++y) {
      const auto r = right.image.row(y);
      const auto l = left.image.row(y);
      for (int x = u - half; x <= u + half; ++x) {
        sad += std::abs(r[static_cast<std::size_t>(x)] - l[static_cast<std::size_t>(x + d)]);
      }
    }
    costs[i] = sad / static_cast<double>(window * window);
  }

  const auto [lo_it, hi_it] = std::minmax_element(costs.begin(), costs.end());
  require(*hi_it - *lo_it > 1e-12 * (1.0 + *hi_it), ErrorKind::kAmbiguousMatch,
          "flat matching cost at (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  const auto best = static_cast<std::size_t>(lo_it - costs.begin());

  double offset = 0.0;
  // A zero-cost match is already a global minimum.
  if (best > 0 && best + 1 < n && costs[best] > 0.0) {
    const double cm = costs[best - 1];
    const double c0 = costs[best];
    const double cp = costs[best + 1];
    const double denom = cm - 2.0 * c0 + cp;
    if (denom > 0.0) offset = 0.5 * (cm - cp) / denom;
  }
  return {u, v, search.min + static_cast<double>(best) + offset, costs[best]};
}

AffineDisparity fit_affine_from_probes(std::span<const DisparityProbe, 3> probes) {
  // Solve relative to the first probe so the 2x2 system stays well scaled.
  const double u0 = probes[0].u;
  const double v0 = probes[0].v;
  const double du1 = probes[1].u - u0;
  const double dv1 = probes[1].v - v0;
  const double du2 = probes[2].u - u0;
  const double dv2 = probes[2].v - v0;
  const double det = du1 * dv2 - du2 * dv1;
  const double scale = std::max({1.0, du1 * du1 + dv1 * dv1, du2 * du2 + dv2 * dv2});
  require(std::abs(det) >= 1e-9 * scale, ErrorKind::kDegenerateProbes,
          "probe positions are collinear");

  const double dd1 = probes[1].d - probes[0].d;
  const double dd2 = probes[2].d - probes[0].d;
  AffineDisparity out;
  out.alpha = (dd1 * dv2 - dd2 * dv1) / det;
  out.beta = (du1 * dd2 - du2 * dd1) / det;
  out.gamma = probes[0].d - out.alpha * u0 - out.beta * v0;
  return out;
}

DenseView warp_left_to_right(const DenseView& left, const AffineDisparity& disp) {
  return warp_impl(left, [&](int u, int v) { return disp(u, v); });
}

DenseView warp_left_to_right(const DenseView& left, const DisparityMap& disp) {
  require_same_shape(left.image, disp, "warp view vs disparity map");
  return warp_impl(left, [&](int u, int v) { return disp(u, v); });
}

}  // namespace codedlf
