#include "codedlf/antispoof.hpp"

#include <cmath>
#include <string>

#include "codedlf/sparse_interp.hpp"

namespace codedlf {

void AntiSpoofConfig::validate() const {
  require(window >= 5 && window % 2 == 1, ErrorKind::kInvalidArgument,
          "window must be odd and at least 5");
  require(search.min <= search.max, ErrorKind::kInvalidArgument, "empty search range");
  require(threshold >= 0.0, ErrorKind::kInvalidArgument, "threshold must be non-negative");
  for (const auto& p : probe_points) {
    require(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0, ErrorKind::kInvalidArgument,
            "probe points must be relative coordinates in [0, 1]");
  }
  const auto& [p0, p1, p2] = probe_points;
  const double cross = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
  require(std::abs(cross) > 1e-9, ErrorKind::kInvalidArgument, "probe points are collinear");
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kGenuine3d: return "genuine_3d";
    case Label::kSpoofFlat: return "spoof_flat";
    case Label::kSpoofCurved: return "spoof_curved";
  }
  return "unknown";
}

Label label_from_string(std::string_view name) {
  for (Label l : {Label::kGenuine3d, Label::kSpoofFlat, Label::kSpoofCurved}) {
    if (to_string(l) == name) return l;
  }
  fail(ErrorKind::kFormat, "unknown label '" + std::string(name) + "'");
}

std::array<std::array<int, 2>, 3> probe_pixels(const AntiSpoofConfig& cfg, int width, int height) {
  std::array<std::array<int, 2>, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = {static_cast<int>(std::lround(cfg.probe_points[i].x * (width - 1))),
              static_cast<int>(std::lround(cfg.probe_points[i].y * (height - 1)))};
  }
  return out;
}

FlatnessScore flatness_score(const DenseView& left, const DenseView& right,
                             const AntiSpoofConfig& cfg) {
  cfg.validate();
  require_same_shape(left.image, right.image, "flatness_score views");
  const int width = left.image.width();
  const int height = left.image.height();

  FlatnessScore out;
  const auto pixels = probe_pixels(cfg, width, height);
  for (std::size_t i = 0; i < 3; ++i) {
    out.probes[i] = local_disparity(left, right, pixels[i][0], pixels[i][1], cfg.window, cfg.search);
  }
  out.fitted = fit_affine_from_probes(out.probes);

  const DenseView projected = warp_left_to_right(left, out.fitted);
  const auto a = projected.image.pixels();
  const auto b = right.image.pixels();
  const auto ca = projected.coverage.pixels();
  const auto cb = right.coverage.pixels();
  double sum = 0.0;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ca[i] != 0 && cb[i] != 0) {
      sum += std::abs(a[i] - b[i]);
      ++covered;
    }
  }
  require(covered > 0, ErrorKind::kInsufficientData, "no pixel is covered by both views");
  out.score = sum / static_cast<double>(covered);
  out.covered_fraction = static_cast<double>(covered) / static_cast<double>(a.size());
  return out;
}

FlatnessScore flatness_score(const CodedImage& ci, const CodingMask& mask,
                             const AntiSpoofConfig& cfg) {
  require_same_shape(ci.image, mask.phi0, "coded image vs mask");
  const SparseMaskPair sm = sparse_masks(mask);
  const DenseView left = densify(extract_sparse_view(ci, sm.sm0));
  const DenseView right = densify(extract_sparse_view(ci, sm.sm1));
  return flatness_score(left, right, cfg);
}

Decision classify(const FlatnessScore& score, double threshold) {
  require(threshold >= 0.0, ErrorKind::kInvalidArgument, "threshold must be non-negative");
  return {score.score <= threshold ? Label::kSpoofFlat : Label::kGenuine3d, score, threshold};
}

}  // namespace codedlf
