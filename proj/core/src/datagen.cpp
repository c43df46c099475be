#include "codedlf/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "codedlf/netpbm.hpp"
#include "codedlf/parallel.hpp"
#include "codedlf/rng.hpp"

namespace codedlf {
namespace {

constexpr std::uint64_t kTextureStream = 0x7465787475726500ULL;
constexpr std::uint64_t kMaskStream = 0x6D61736B00000000ULL;
constexpr std::uint64_t kSceneStream = 0x7363656E65000000ULL;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double draw(RngStream& rng, Interval range) { return rng.uniform(range.lo, range.hi); }

// Ray/cylinder intersection depth for the normalized ray slope k across the
// curved direction. NaN when the ray misses.
double cylinder_depth(const CylinderScene& c, double k) {
  const double axis = c.convex ? c.center_depth_m + c.radius_m : c.center_depth_m - c.radius_m;
  const double q = k * k + 1.0;
  const double disc = axis * axis - q * (axis * axis - c.radius_m * c.radius_m);
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double root = std::sqrt(disc);
  return c.convex ? (axis - root) / q : (axis + root) / q;
}

DisparityMap cylinder_disparity(const CylinderScene& c, const Calibration& calib, int width,
                                int height, int stride = 1) {
  const int w = (width + stride - 1) / stride;
  const int h = (height + stride - 1) / stride;
  DisparityMap d(w, h);
  const double bf = calib.baseline_m * calib.focal_px;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double u = x * stride;
      const double v = y * stride;
      const double k = c.vertical_axis ? (u - calib.principal_u) / calib.focal_px
                                       : (v - calib.principal_v) / calib.focal_px;
      const double z = cylinder_depth(c, k);
      require(std::isfinite(z) && z > 0.0, ErrorKind::kInvalidSpec,
              "cylinder surface does not cover the field of view");
      d(x, y) = bf / z;
    }
  }
  return d;
}

double smooth_dome(double rx, double ry) {
  const double r2 = rx * rx + ry * ry;
  return r2 >= 1.0 ? 0.0 : std::pow(1.0 - r2, 1.5);
}

double gauss(double dx, double dy, double sx, double sy) {
  return std::exp(-0.5 * (dx * dx / (sx * sx) + dy * dy / (sy * sy)));
}

DisparityMap face_disparity(const FaceProxyScene& f, const Calibration& calib, int width,
                            int height) {
  const AffineDisparity base = plane_to_affine(f.base, calib);
  const double cx = f.center_x * width;
  const double cy = f.center_y * height;
  DisparityMap bumps(width, height);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      const double dx = u - cx;
      const double dy = v - cy;
      bumps(u, v) = f.dome_weight * smooth_dome(dx / (0.32 * width), dy / (0.42 * height)) +
                    f.nose_weight * gauss(dx, dy - 0.04 * height, 0.05 * width, 0.08 * height) +
                    f.brow_weight * gauss(dx, dy + 0.12 * height, 0.14 * width, 0.03 * height);
    }
  }
  const auto [lo, hi] = std::minmax_element(bumps.pixels().begin(), bumps.pixels().end());
  const double lo_v = *lo;
  const double span = *hi - *lo;
  require(span > 0.0, ErrorKind::kInvalidSpec, "face proxy has no relief");
  DisparityMap d(width, height);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      d(u, v) = base(u, v) + f.contrast_px * (bumps(u, v) - lo_v) / span;
    }
  }
  return d;
}

DisparityMap layered_disparity(const LayeredScene& l, const Calibration& calib, int width,
                               int height) {
  require(l.near_depth_m > 0.0 && l.far_depth_m > 0.0, ErrorKind::kInvalidSpec,
          "layer depths must be positive");
  const double bf = calib.baseline_m * calib.focal_px;
  DisparityMap d(width, height);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      const double rx = (u - l.center_x * width) / (l.radius_x * width);
      const double ry = (v - l.center_y * height) / (l.radius_y * height);
      d(u, v) = bf / (rx * rx + ry * ry <= 1.0 ? l.near_depth_m : l.far_depth_m);
    }
  }
  return d;
}

// Largest ray slope across the curved direction of the cylinder.
double max_ray_slope(const Calibration& calib, int width, int height, bool vertical_axis) {
  if (vertical_axis) {
    return std::max(calib.principal_u, width - 1 - calib.principal_u) / calib.focal_px;
  }
  return std::max(calib.principal_v, height - 1 - calib.principal_v) / calib.focal_px;
}

// Radius whose disparity deviates from its best-fit plane by `target` pixels,
// or the tightest admissible radius when the target is out of reach.
double cylinder_radius_for_deviation(CylinderScene c, const Calibration& calib, int width,
                                     int height, double target) {
  const double k = max_ray_slope(calib, width, height, c.vertical_axis);
  const double s = std::sqrt(k * k + 1.0);
  const double r_min =
      1.001 * (c.convex ? k * c.center_depth_m / (s - k) : k * c.center_depth_m / (s + k));
  const auto deviation = [&](double r) {
    c.radius_m = r;
    return max_plane_deviation(cylinder_disparity(c, calib, width, height, 4));
  };
  double lo = std::log(r_min);
  double hi = std::log(100.0);
  if (deviation(r_min) <= target) return r_min;
  // Deviation falls monotonically with the radius.
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (deviation(std::exp(mid)) > target ? lo : hi) = mid;
  }
  return std::exp(hi);
}

}  // namespace

std::string_view to_string(SceneKind kind) {
  switch (kind) {
    case SceneKind::kPlane: return "plane";
    case SceneKind::kCylinder: return "cylinder";
    case SceneKind::kFaceProxy: return "face_proxy";
    case SceneKind::kLayered: return "layered";
  }
  return "unknown";
}

SceneKind scene_kind_from_string(std::string_view name) {
  for (SceneKind k :
       {SceneKind::kPlane, SceneKind::kCylinder, SceneKind::kFaceProxy, SceneKind::kLayered}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorKind::kFormat, "unknown scene kind '" + std::string(name) + "'");
}

SceneKind SceneSpec::kind() const {
  return std::visit(Overloaded{[](const PlaneScene&) { return SceneKind::kPlane; },
                               [](const CylinderScene&) { return SceneKind::kCylinder; },
                               [](const FaceProxyScene&) { return SceneKind::kFaceProxy; },
                               [](const LayeredScene&) { return SceneKind::kLayered; }},
                    geometry);
}

DisparityMap scene_disparity(const SceneSpec& spec) {
  spec.calib.validate(spec.width, spec.height);
  const int w = spec.width;
  const int h = spec.height;
  DisparityMap d = std::visit(
      Overloaded{
          [&](const PlaneScene& p) {
            return render_affine(plane_to_affine(p.plane, spec.calib), w, h);
          },
          [&](const CylinderScene& c) { return cylinder_disparity(c, spec.calib, w, h); },
          [&](const FaceProxyScene& f) { return face_disparity(f, spec.calib, w, h); },
          [&](const LayeredScene& l) { return layered_disparity(l, spec.calib, w, h); }},
      spec.geometry);
  for (double v : d.pixels()) {
    require(v > 0.0, ErrorKind::kInvalidSpec, "scene surface must lie in front of the camera");
    require(v <= spec.max_disparity_px, ErrorKind::kInvalidSpec,
            "scene disparity exceeds the declared maximum");
  }
  return d;
}

StereoRender render_stereo(const SceneSpec& spec, std::uint64_t seed) {
  StereoRender out;
  out.gt_disparity = scene_disparity(spec);
  if (spec.texture.file.empty()) {
    out.left = procedural_texture(spec.width, spec.height, seed, spec.texture.params);
  } else {
    out.left = netpbm::read_pgm(spec.texture.file);
    require(out.left.width() == spec.width && out.left.height() == spec.height,
            ErrorKind::kInvalidSpec, "texture file dimensions differ from the scene");
  }
  const DenseView right = warp_left_to_right(dense_from_image(out.left), out.gt_disparity);
  out.right = right.image;
  out.clamped = BinaryRaster(spec.width, spec.height, 0);
  auto clamped = out.clamped.pixels();
  const auto cover = right.coverage.pixels();
  for (std::size_t i = 0; i < clamped.size(); ++i) clamped[i] = cover[i] != 0 ? 0 : 1;
  return out;
}

double max_plane_deviation(const DisparityMap& disparity) {
  // Least squares on centred coordinates; the design is a full grid so the
  // u and v columns are orthogonal after centring.
  const double cu = 0.5 * (disparity.width() - 1);
  const double cv = 0.5 * (disparity.height() - 1);
  double suu = 0, svv = 0, sud = 0, svd = 0, sd = 0;
  for (int v = 0; v < disparity.height(); ++v) {
    for (int u = 0; u < disparity.width(); ++u) {
      const double du = u - cu;
      const double dv = v - cv;
      const double d = disparity(u, v);
      suu += du * du;
      svv += dv * dv;
      sud += du * d;
      svd += dv * d;
      sd += d;
    }
  }
  const double n = static_cast<double>(disparity.size());
  const double alpha = suu > 0 ? sud / suu : 0.0;
  const double beta = svv > 0 ? svd / svv : 0.0;
  const double mean = sd / n;
  double worst = 0.0;
  for (int v = 0; v < disparity.height(); ++v) {
    for (int u = 0; u < disparity.width(); ++u) {
      const double fit = mean + alpha * (u - cu) + beta * (v - cv);
      worst = std::max(worst, std::abs(disparity(u, v) - fit));
    }
  }
  return worst;
}

void DatasetSpec::validate() const {
  require(width >= 64 && height >= 64, ErrorKind::kInvalidArgument,
          "dataset images must be at least 64x64");
  require(size() <= 10'000'000, ErrorKind::kInvalidArgument, "dataset counts are implausibly large");
  require(transmittance > 0.0 && transmittance < 1.0, ErrorKind::kInvalidArgument,
          "transmittance must lie in (0, 1)");
  require(scenes.layered_fraction >= 0.0 && scenes.layered_fraction <= 1.0,
          ErrorKind::kInvalidArgument, "layered fraction must lie in [0, 1]");
  calib.validate(width, height);
}

std::string capture_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "cap%05zu", index);
  return buf;
}

Label label_at(const DatasetSpec& spec, std::size_t index) {
  require(index < spec.size(), ErrorKind::kInvalidArgument, "capture index out of range");
  if (index < spec.n_genuine) return Label::kGenuine3d;
  if (index < spec.n_genuine + spec.n_flat) return Label::kSpoofFlat;
  return Label::kSpoofCurved;
}

LabeledCapture capture_from_scene(const SceneSpec& scene, Label label, std::uint64_t texture_seed,
                                  std::uint64_t mask_seed, double transmittance,
                                  MaskProjection projection) {
  StereoRender r = render_stereo(scene, texture_seed);
  // Views reach the sensor as 8-bit levels.
  const GrayImage left = quantize_8bit(r.left);
  const GrayImage right = quantize_8bit(r.right);
  LabeledCapture cap;
  cap.mask = generate_mask(scene.width, scene.height, transmittance, projection, mask_seed);
  cap.coded = encode(left, right, cap.mask);
  cap.label = label;
  cap.gt_disparity = std::move(r.gt_disparity);
  cap.provenance.scene = scene;
  cap.provenance.texture_seed = texture_seed;
  cap.provenance.mask_seed = mask_seed;
  return cap;
}

LabeledCapture make_capture(const DatasetSpec& spec, std::size_t index) {
  spec.validate();
  const Label label = label_at(spec, index);
  const std::size_t class_index =
      label == Label::kGenuine3d   ? index
      : label == Label::kSpoofFlat ? index - spec.n_genuine
                                   : index - spec.n_genuine - spec.n_flat;

  const CounterRng root(spec.master_seed);
  const std::uint64_t texture_seed = root.split(kTextureStream).bits(class_index);
  const std::uint64_t mask_seed = root.split(kMaskStream).bits(index);
  RngStream rng(root.split(kSceneStream).split(index));
  const SceneDistributions& dist = spec.scenes;

  SceneSpec scene;
  scene.texture.params = spec.texture;
  scene.calib = spec.calib;
  scene.width = spec.width;
  scene.height = spec.height;
  scene.max_disparity_px = spec.max_disparity_px;

  switch (label) {
    case Label::kSpoofFlat: {
      PlaneScene p;
      p.plane.a = draw(rng, dist.plane_slope);
      p.plane.b = draw(rng, dist.plane_slope);
      p.plane.c = draw(rng, dist.flat_depth_m);
      scene.geometry = p;
      break;
    }
    case Label::kSpoofCurved: {
      CylinderScene c;
      c.center_depth_m = draw(rng, dist.curved_depth_m);
      c.vertical_axis = rng.bernoulli(0.5);
      c.convex = rng.bernoulli(0.5);
      const double target = draw(rng, dist.curved_deviation_px);
      c.radius_m = cylinder_radius_for_deviation(c, spec.calib, spec.width, spec.height, target);
      scene.geometry = c;
      break;
    }
    case Label::kGenuine3d: {
      const bool layered = rng.uniform() < dist.layered_fraction;
      const double contrast = draw(rng, dist.genuine_contrast_px);
      if (layered) {
        LayeredScene l;
        l.far_depth_m = draw(rng, dist.genuine_depth_m);
        const double bf = spec.calib.baseline_m * spec.calib.focal_px;
        l.near_depth_m = bf / (bf / l.far_depth_m + contrast);
        l.center_x = rng.uniform(0.45, 0.55);
        l.center_y = rng.uniform(0.45, 0.55);
        l.radius_x = rng.uniform(0.25, 0.35);
        l.radius_y = rng.uniform(0.3, 0.4);
        scene.geometry = l;
      } else {
        FaceProxyScene f;
        f.base.a = draw(rng, dist.plane_slope);
        f.base.b = draw(rng, dist.plane_slope);
        f.base.c = draw(rng, dist.genuine_depth_m);
        f.contrast_px = contrast;
        f.dome_weight = rng.uniform(0.6, 1.0);
        f.nose_weight = rng.uniform(0.3, 0.8);
        f.brow_weight = rng.uniform(0.1, 0.5);
        f.center_x = rng.uniform(0.45, 0.55);
        f.center_y = rng.uniform(0.45, 0.55);
        scene.geometry = f;
      }
      break;
    }
  }

  LabeledCapture cap = capture_from_scene(scene, label, texture_seed, mask_seed,
                                          spec.transmittance, spec.projection);
  cap.id = capture_id(index);
  cap.provenance.master_seed = spec.master_seed;
  cap.provenance.index = index;
  cap.provenance.class_index = class_index;
  return cap;
}

std::vector<LabeledCapture> make_dataset(const DatasetSpec& spec, int jobs) {
  spec.validate();
  std::vector<LabeledCapture> out(spec.size());
  parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = make_capture(spec, i); });
  return out;
}

}  // namespace codedlf
