#pragma once

// Text formats shared by the library and the CLI: JSON documents for
// calibration, anti-spoofing config, mask sidecars and reports; CSV for
// per-capture scores, ROC points and histograms; raw float32 disparity.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codedlf/antispoof.hpp"
#include "codedlf/lf_core.hpp"
#include "codedlf/metrics.hpp"
#include "codedlf/stereo_geom.hpp"

namespace codedlf {

// {"baseline_m", "focal_px", "principal_u", "principal_v"}
std::string calibration_to_json(const Calibration& calib);
Calibration calibration_from_json(std::string_view text);

// {"probe_points": [[x, y] x3], "window", "search_min", "search_max", "threshold"}
// Missing keys keep their defaults.
std::string antispoof_config_to_json(const AntiSpoofConfig& cfg);
AntiSpoofConfig antispoof_config_from_json(std::string_view text);

struct MaskSidecar {
  MaskProjection projection;
  double transmittance = 0.5;
  std::uint64_t seed = 0;
};

// {"mode": "independent" | "shifted", "shift_px", "transmittance", "seed"}
std::string mask_sidecar_to_json(const CodingMask& mask);
MaskSidecar mask_sidecar_from_json(std::string_view text);

struct ScoreRow {
  std::string capture_id;
  Label label = Label::kGenuine3d;
  double score = 0.0;
  double covered_fraction = 0.0;
  std::array<double, 3> probe_d{};
};

struct FailureRow {
  std::string capture_id;
  std::string label;
  std::string error_kind;
  std::string message;
};

inline constexpr std::string_view kScoresHeader =
    "capture_id,label,score,covered_fraction,probe_d1,probe_d2,probe_d3";

ScoreRow make_score_row(std::string capture_id, Label label, const FlatnessScore& score);
void write_scores_csv(std::ostream& out, const std::vector<ScoreRow>& rows);
std::vector<ScoreRow> read_scores_csv(std::istream& in);
void write_failures_csv(std::ostream& out, const std::vector<FailureRow>& rows);

// Shortest decimal that round-trips the double.
std::string format_double(double v);

struct ReportContext {
  std::optional<HoldoutResult> holdout;
  std::optional<HoldoutOptions> holdout_options;
  // Free-form provenance copied into the report (seed, label filter, ...).
  std::vector<std::pair<std::string, std::string>> notes;
};

// {"eer", "threshold", "acer", "auc", "genuine_count", "spoof_count", ...}
std::string report_to_json(const EvalReport& report, const ReportContext& context = {});
void write_roc_csv(std::ostream& out, const EvalReport& report);
void write_histogram_csv(std::ostream& out, const Histogram& histogram);

// Raw little-endian float32 raster at `path` plus a JSON header next to it
// (same stem, .json) with dims and the disparity convention.
void write_disparity(const std::filesystem::path& path, const DisparityMap& map);
DisparityMap read_disparity(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace codedlf
