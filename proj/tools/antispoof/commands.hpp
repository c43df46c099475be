#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "antispoof/run_config.hpp"
#include "codedlf/metrics.hpp"
#include "codedlf/serialization.hpp"

namespace codedlf::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

struct GenSummary {
  std::size_t captures = 0;
  std::filesystem::path root;
};

// Generates the dataset described by cfg into `root`.
GenSummary cmd_gen(const RunConfig& cfg, const std::filesystem::path& root);

struct ScoreSummary {
  std::vector<ScoreRow> rows;
  std::vector<FailureRow> failures;
};

// Scores every manifest entry of `dataset`, writing scores.csv and
// failures.csv into `out_dir`. Per-capture errors become failure rows.
ScoreSummary cmd_score(const RunConfig& cfg, const std::filesystem::path& dataset,
                       const std::filesystem::path& out_dir);

// Scores one capture from a coded image and a mask directory.
FlatnessScore score_capture(const std::filesystem::path& coded, const std::filesystem::path& mask_dir,
                            const AntiSpoofConfig& cfg);

// Scores from either a scores CSV (header row) or one number per line.
std::vector<double> read_score_list(const std::filesystem::path& path);

ThresholdCalibration cmd_calibrate(const std::filesystem::path& genuine_csv,
                                   const std::filesystem::path& spoof_csv);

enum class SplitMode { kHoldout, kAll };

struct EvaluateOptions {
  SplitMode split = SplitMode::kHoldout;
  HoldoutOptions holdout;
  // Attack labels counted as spoofs; empty means all attack labels.
  std::set<Label> attacks;
};

struct EvaluateSummary {
  EvalReport report;
  std::optional<HoldoutResult> holdout;
  std::string report_json;
};

// Writes report.json, roc.csv and hist.csv into `out_dir`.
EvaluateSummary cmd_evaluate(const std::filesystem::path& scores_csv,
                             const EvaluateOptions& options, const std::filesystem::path& out_dir);

// Text summary of an evaluate output directory, with ASCII histograms.
std::string cmd_report(const std::filesystem::path& eval_dir);

}  // namespace codedlf::cli
