#pragma once

// Reconstruction-free liveness check on a coded capture: assume the scene is
// flat, fit an affine disparity map from three local matches, project the
// left sparse view onto the right one and measure how badly that fails.

#include <array>
#include <string_view>

#include "codedlf/lf_core.hpp"
#include "codedlf/stereo_geom.hpp"

namespace codedlf {

// Position as a fraction of (width - 1, height - 1).
struct RelativePoint {
  double x = 0.0;
  double y = 0.0;
};

struct AntiSpoofConfig {
  std::array<RelativePoint, 3> probe_points{{{0.3, 0.3}, {0.7, 0.3}, {0.5, 0.75}}};
  int window = kDefaultWindow;
  SearchRange search{};
  // Scores at or below this are rejected as flat.
  double threshold = 0.0;

  void validate() const;
};

struct FlatnessScore {
  // Mean |projected left - right| over pixels covered in both dense views.
  double score = 0.0;
  double covered_fraction = 0.0;
  std::array<DisparityProbe, 3> probes{};
  AffineDisparity fitted{};
};

enum class Label { kGenuine3d, kSpoofFlat, kSpoofCurved };

std::string_view to_string(Label label);
// Throws kFormat for an unknown name.
Label label_from_string(std::string_view name);
inline bool is_attack(Label label) { return label != Label::kGenuine3d; }

struct Decision {
  Label label = Label::kGenuine3d;
  FlatnessScore score;
  double threshold_used = 0.0;
};

std::array<std::array<int, 2>, 3> probe_pixels(const AntiSpoofConfig& cfg, int width, int height);

// Flatness score of a pair of dense views (left = view0, right = view1).
FlatnessScore flatness_score(const DenseView& left, const DenseView& right,
                             const AntiSpoofConfig& cfg);

// Full pipeline from the coded image: sparse masks, free reconstruction of both
// views, densify, then the dense-view score above. Errors from densify and the
// probe stage propagate; callers treat them as "cannot score".
FlatnessScore flatness_score(const CodedImage& ci, const CodingMask& mask,
                             const AntiSpoofConfig& cfg);

// spoof_flat iff score <= threshold.
Decision classify(const FlatnessScore& score, double threshold);

}  // namespace codedlf
