#include <gtest/gtest.h>

#include <cmath>

#include "codedlf/antispoof.hpp"
#include "codedlf/datagen.hpp"
#include "codedlf/rng.hpp"
#include "codedlf/texture.hpp"

namespace codedlf {
namespace {

constexpr int kSize = 512;

SceneSpec base_scene() {
  SceneSpec s;
  s.width = s.height = kSize;
  s.calib = Calibration::centered(kSize, kSize);
  return s;
}

SceneSpec plane_scene(double a, double b, double c) {
  SceneSpec s = base_scene();
  s.geometry = PlaneScene{{a, b, c}};
  return s;
}

SceneSpec layered_scene(double far_m, double contrast_px) {
  SceneSpec s = base_scene();
  const double bf = s.calib.baseline_m * s.calib.focal_px;
  LayeredScene l;
  l.far_depth_m = far_m;
  l.near_depth_m = bf / (bf / far_m + contrast_px);
  s.geometry = l;
  return s;
}

double pipeline_score(const SceneSpec& scene, std::uint64_t texture_seed, std::uint64_t mask_seed) {
  const auto cap = capture_from_scene(scene, Label::kGenuine3d, texture_seed, mask_seed, 0.5,
                                      MaskProjection::independent());
  return flatness_score(cap.coded, cap.mask, AntiSpoofConfig{}).score;
}

TEST(Classify, Polarity) {
  FlatnessScore s;
  s.score = 0.001;
  EXPECT_EQ(classify(s, 0.01).label, Label::kSpoofFlat);
  s.score = 0.05;
  EXPECT_EQ(classify(s, 0.01).label, Label::kGenuine3d);
  s.score = 0.01;
  const auto d = classify(s, 0.01);
  EXPECT_EQ(d.label, Label::kSpoofFlat);
  EXPECT_EQ(d.threshold_used, 0.01);
  EXPECT_THROW(classify(s, -1.0), Error);
}

TEST(Labels, RoundTripNames) {
  for (Label l : {Label::kGenuine3d, Label::kSpoofFlat, Label::kSpoofCurved})
    EXPECT_EQ(label_from_string(to_string(l)), l);
  EXPECT_EQ(to_string(Label::kSpoofFlat), "spoof_flat");
  EXPECT_THROW(label_from_string("mask_3d"), Error);
  EXPECT_FALSE(is_attack(Label::kGenuine3d));
  EXPECT_TRUE(is_attack(Label::kSpoofCurved));
}

TEST(AntiSpoofConfig, Validate) {
  AntiSpoofConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.threshold = -0.1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.probe_points = {{{0.1, 0.1}, {0.5, 0.5}, {0.9, 0.9}}};
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.window = 4;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(ProbePixels, DefaultTriangle) {
  const auto px = probe_pixels(AntiSpoofConfig{}, 512, 512);
  EXPECT_EQ(px[0], (std::array<int, 2>{153, 153}));
  EXPECT_EQ(px[1], (std::array<int, 2>{358, 153}));
  EXPECT_EQ(px[2], (std::array<int, 2>{256, 383}));
}

TEST(FlatnessScore, IdenticalViewsScoreZero) {
  const auto view = dense_from_image(procedural_texture(256, 256, 4));
  const auto s = flatness_score(view, view, AntiSpoofConfig{});
  EXPECT_LT(s.score, 1e-6);
  for (const auto& p : s.probes) EXPECT_NEAR(p.d, 0.0, 1e-9);
  EXPECT_GT(s.covered_fraction, 0.99);
}

TEST(FlatnessScore, FlatSceneScoresLow) {
  const double s = pipeline_score(plane_scene(0.08, -0.05, 0.7), 1, 2);
  EXPECT_LT(s, 0.02);
}

TEST(FlatnessScore, DeepSceneScoresAboveFlat) {
  const double flat = pipeline_score(plane_scene(0.0, 0.0, 0.7), 3, 4);
  const double deep = pipeline_score(layered_scene(0.7, 8.0), 3, 4);
  EXPECT_GT(deep, flat);
}

TEST(FlatnessScore, FlatSceneNearInterpolationFloor) {
  const SceneSpec scene = plane_scene(-0.1, 0.06, 0.55);
  const StereoRender r = render_stereo(scene, 21);
  const auto mask = generate_mask(kSize, kSize, 0.5, MaskProjection::independent(), 22);
  const auto ci = encode(r.left, r.right, mask);
  const auto sm = sparse_masks(mask);
  const auto right = densify(extract_sparse_view(ci, sm.sm1));
  // Floor: how far the densified right view is from the true right view.
  double sum = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      if (!right.coverage(x, y) || r.clamped(x, y)) continue;
      sum += std::abs(right.image(x, y) - r.right(x, y));
      ++n;
    }
  }
  const double floor = sum / static_cast<double>(n);
  const auto s = flatness_score(ci, mask, AntiSpoofConfig{});
  EXPECT_GT(floor, 0.0);
  EXPECT_LT(s.score, 5.0 * floor);
}

TEST(FlatnessScore, ScalesLinearlyWithIntensity) {
  const StereoRender r = render_stereo(layered_scene(0.8, 9.0), 5);
  const auto mask = generate_mask(kSize, kSize, 0.5, MaskProjection::independent(), 6);
  const double s = 0.5;
  GrayImage l2 = r.left, r2 = r.right;
  for (auto& p : l2.pixels()) p *= s;
  for (auto& p : r2.pixels()) p *= s;
  const auto full = flatness_score(encode(r.left, r.right, mask), mask, AntiSpoofConfig{});
  const auto half = flatness_score(encode(l2, r2, mask), mask, AntiSpoofConfig{});
  EXPECT_NEAR(half.score, s * full.score, 1e-12);
  const double t = 0.9 * full.score;
  EXPECT_EQ(classify(full, t).label, classify(half, s * t).label);
}

TEST(FlatnessScore, Deterministic) {
  const auto cap = capture_from_scene(plane_scene(0.02, 0.03, 0.6), Label::kSpoofFlat, 8, 9, 0.5,
                                      MaskProjection::independent());
  const auto a = flatness_score(cap.coded, cap.mask, AntiSpoofConfig{});
  const auto b = flatness_score(cap.coded, cap.mask, AntiSpoofConfig{});
  EXPECT_EQ(a.score, b.score);
  EXPECT_EQ(a.fitted, b.fitted);
}

TEST(FlatnessScore, ShiftedMaskWorks) {
  const auto cap = capture_from_scene(plane_scene(0.0, 0.05, 0.6), Label::kSpoofFlat, 10, 11, 0.5,
                                      MaskProjection::shifted(3));
  EXPECT_LT(flatness_score(cap.coded, cap.mask, AntiSpoofConfig{}).score, 0.02);
}

TEST(FlatnessScore, UntexturedCaptureCannotBeScored) {
  const GrayImage flat(128, 128, 0.5);
  const auto mask = generate_mask(128, 128, 0.5, MaskProjection::independent(), 1);
  EXPECT_THROW(flatness_score(encode(flat, flat, mask), mask, AntiSpoofConfig{}), Error);
}

TEST(FlatnessScore, MaskMismatch) {
  const auto mask = generate_mask(128, 128, 0.5, MaskProjection::independent(), 1);
  const auto other = generate_mask(96, 128, 0.5, MaskProjection::independent(), 1);
  const GrayImage v(128, 128, 0.5);
  EXPECT_THROW(flatness_score(encode(v, v, mask), other, AntiSpoofConfig{}), Error);
}

TEST(FlatnessScore, DeepBeatsFlatAcrossPairs) {
  RngStream rng(1234);
  int wins = 0;
  constexpr int kPairs = 50;
  for (int i = 0; i < kPairs; ++i) {
    const double depth = rng.uniform(0.55, 0.9);
    const double contrast = rng.uniform(8.0, 12.0);
    const auto seed = static_cast<std::uint64_t>(1000 + i);
    const double flat = pipeline_score(plane_scene(0.0, 0.0, depth), seed, seed);
    const double deep = pipeline_score(layered_scene(depth, contrast), seed, seed);
    wins += deep > flat;
  }
  EXPECT_GE(wins, 48);
}

}  // namespace
}  // namespace codedlf
