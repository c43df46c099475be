#pragma once

// Presentation-attack-detection metrics for a scalar score where attacks
// score low. A capture is accepted as genuine iff score > threshold.
//   APCER(t): fraction of attacks with score > t
//   BPCER(t): fraction of genuine captures with score <= t

#include <cstdint>
#include <span>
#include <vector>

namespace codedlf {

struct ErrorRates {
  double apcer = 0.0;
  double bpcer = 0.0;

  double acer() const noexcept { return 0.5 * (apcer + bpcer); }
};

ErrorRates error_rates(std::span<const double> genuine, std::span<const double> spoof,
                       double threshold);

struct ThresholdCalibration {
  double threshold = 0.0;
  double eer = 0.0;
};

// Chooses t minimizing |APCER - BPCER| among the midpoints between
// consecutive distinct pooled scores (plus the largest score). Ties go to the
// smaller t. eer is the mean of APCER and BPCER at t.
ThresholdCalibration calibrate_threshold(std::span<const double> genuine,
                                         std::span<const double> spoof);

struct RocPoint {
  double threshold = 0.0;
  double apcer = 0.0;
  // 1 - BPCER
  double genuine_accept = 0.0;
};

struct Histogram {
  double lo = 0.0;
  double bin_width = 0.0;
  std::vector<std::uint32_t> genuine;
  std::vector<std::uint32_t> spoof;
};

inline constexpr int kHistogramBins = 50;

struct EvalReport {
  std::size_t genuine_count = 0;
  std::size_t spoof_count = 0;
  // Ascending in both coordinates, from (0, 0) to (1, 1).
  std::vector<RocPoint> roc;
  double auc = 0.0;
  double threshold = 0.0;
  double eer = 0.0;
  double acer = 0.0;
  Histogram histogram;
};

EvalReport evaluate(std::span<const double> genuine, std::span<const double> spoof);

Histogram histogram(std::span<const double> genuine, std::span<const double> spoof,
                    int bins = kHistogramBins);

struct HoldoutOptions {
  int repeats = 50;
  double test_fraction = 0.25;
  std::uint64_t seed = 0;
};

struct HoldoutResult {
  double mean_acer = 0.0;
  double stddev_acer = 0.0;
  double mean_threshold = 0.0;
  // Per class, after balancing.
  std::size_t train_per_class = 0;
  std::size_t test_per_class = 0;
  std::vector<double> acers;
};

// Repeated random split: both classes are subsampled to the smaller class
// size, a test_fraction share of each goes to test, the EER threshold is
// calibrated on train and ACER is measured on test.
HoldoutResult holdout_acer(std::span<const double> genuine, std::span<const double> spoof,
                           const HoldoutOptions& options);

}  // namespace codedlf
