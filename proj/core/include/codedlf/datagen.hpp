#pragma once

// Synthetic labeled stereo captures: genuine 3D scenes (face-like bump
// surfaces, layered depth) and flat/curved print re-captures, encoded through
// a fresh coding mask each.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "codedlf/antispoof.hpp"
#include "codedlf/lf_core.hpp"
#include "codedlf/stereo_geom.hpp"
#include "codedlf/texture.hpp"

namespace codedlf {

enum class SceneKind { kPlane, kCylinder, kFaceProxy, kLayered };

std::string_view to_string(SceneKind kind);
SceneKind scene_kind_from_string(std::string_view name);

struct PlaneScene {
  Plane3D plane;
};

// Partial cylinder whose axis crosses the optical axis.
struct CylinderScene {
  double radius_m = 0.3;
  // Depth of the surface on the optical axis.
  double center_depth_m = 0.6;
  // Axis parallel to the image columns (curvature along u) when true.
  bool vertical_axis = true;
  // Bulging toward the camera when true.
  bool convex = true;
};

// Base plane plus smooth bumps (face oval, nose, brow ridge) expressed in
// disparity and scaled so the bump field spans contrast_px. Depth follows as
// B * f / d.
struct FaceProxyScene {
  Plane3D base;
  double contrast_px = 8.0;
  double dome_weight = 1.0;
  double nose_weight = 1.0;
  double brow_weight = 0.5;
  // Face centre, relative to the image size.
  double center_x = 0.5;
  double center_y = 0.5;
};

// Fronto-parallel foreground ellipse at near_depth over a background at far_depth.
struct LayeredScene {
  double near_depth_m = 0.5;
  double far_depth_m = 0.8;
  double center_x = 0.5;
  double center_y = 0.5;
  double radius_x = 0.3;
  double radius_y = 0.35;
};

using SceneGeometry = std::variant<PlaneScene, CylinderScene, FaceProxyScene, LayeredScene>;

struct TextureSource {
  // Empty path: procedural texture keyed by the render seed.
  std::filesystem::path file;
  TextureParams params;
};

struct SceneSpec {
  SceneGeometry geometry;
  TextureSource texture;
  Calibration calib;
  int width = 512;
  int height = 512;
  double max_disparity_px = 32.0;

  SceneKind kind() const;
};

struct StereoRender {
  GrayImage left;
  GrayImage right;
  DisparityMap gt_disparity;
  // 1 where the right view sampled outside the left image and was clamped.
  BinaryRaster clamped;
};

// Ground-truth disparity of the scene surface for the right-from-left
// convention right(u, v) = left(u + d(u, v), v).
DisparityMap scene_disparity(const SceneSpec& spec);

// left = texture; right(u, v) = left(u + d(u, v), v) with linear sampling.
// Throws kInvalidSpec when |d| exceeds spec.max_disparity_px.
StereoRender render_stereo(const SceneSpec& spec, std::uint64_t seed);

// Largest |d - plane| for the least-squares plane through a disparity map.
double max_plane_deviation(const DisparityMap& disparity);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Parameter distributions used by make_dataset. Every constant is a knob.
struct SceneDistributions {
  Interval plane_slope{-0.15, 0.15};
  Interval flat_depth_m{0.4, 1.0};
  Interval genuine_depth_m{0.55, 1.0};
  Interval genuine_contrast_px{6.0, 12.0};
  double layered_fraction = 0.25;
  Interval curved_depth_m{0.45, 0.7};
  // Target max deviation of the cylinder disparity from its best-fit plane.
  Interval curved_deviation_px{2.0, 4.0};
};

struct DatasetSpec {
  std::size_t n_genuine = 0;
  std::size_t n_flat = 0;
  std::size_t n_curved = 0;
  int width = 512;
  int height = 512;
  Calibration calib = Calibration::centered(512, 512);
  std::uint64_t master_seed = 0;
  double transmittance = 0.5;
  MaskProjection projection{};
  TextureParams texture{};
  SceneDistributions scenes{};
  double max_disparity_px = 32.0;

  std::size_t size() const { return n_genuine + n_flat + n_curved; }
  void validate() const;
};

struct CaptureProvenance {
  SceneSpec scene;
  std::uint64_t master_seed = 0;
  std::size_t index = 0;
  // Index within the label class; captures sharing it share a texture.
  std::size_t class_index = 0;
  std::uint64_t texture_seed = 0;
  std::uint64_t mask_seed = 0;
};

struct LabeledCapture {
  std::string id;
  CodedImage coded;
  CodingMask mask;
  Label label = Label::kGenuine3d;
  // Diagnostics only; never an input to scoring.
  DisparityMap gt_disparity;
  CaptureProvenance provenance;
};

std::string capture_id(std::size_t index);

// Label of capture `index`: genuine first, then flat, then curved.
Label label_at(const DatasetSpec& spec, std::size_t index);

// Capture `index`, a pure function of (spec, index).
LabeledCapture make_capture(const DatasetSpec& spec, std::size_t index);

LabeledCapture capture_from_scene(const SceneSpec& scene, Label label, std::uint64_t texture_seed,
                                  std::uint64_t mask_seed, double transmittance,
                                  MaskProjection projection);

std::vector<LabeledCapture> make_dataset(const DatasetSpec& spec, int jobs = 1);

}  // namespace codedlf
