#include "codedlf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "codedlf/error.hpp"
#include "codedlf/rng.hpp"

namespace codedlf {
namespace {

void require_both(std::span<const double> genuine, std::span<const double> spoof) {
  require(!genuine.empty(), ErrorKind::kInvalidArgument, "no genuine scores");
  require(!spoof.empty(), ErrorKind::kInvalidArgument, "no spoof scores");
}

std::vector<double> sorted(std::span<const double> xs) {
  std::vector<double> out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Count of sorted values <= t.
double count_at_or_below(const std::vector<double>& xs, double t) {
  return static_cast<double>(std::upper_bound(xs.begin(), xs.end(), t) - xs.begin());
}

ErrorRates rates_sorted(const std::vector<double>& genuine, const std::vector<double>& spoof,
                        double t) {
  const double ng = static_cast<double>(genuine.size());
  const double ns = static_cast<double>(spoof.size());
  return {(ns - count_at_or_below(spoof, t)) / ns, count_at_or_below(genuine, t) / ng};
}

std::vector<double> distinct_pooled(const std::vector<double>& genuine,
                                    const std::vector<double>& spoof) {
  std::vector<double> pooled;
  pooled.reserve(genuine.size() + spoof.size());
  std::merge(genuine.begin(), genuine.end(), spoof.begin(), spoof.end(),
             std::back_inserter(pooled));
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
  return pooled;
}

ThresholdCalibration calibrate_sorted(const std::vector<double>& genuine,
                                      const std::vector<double>& spoof) {
  const auto pooled = distinct_pooled(genuine, spoof);
  std::vector<double> candidates;
  candidates.reserve(pooled.size());
  for (std::size_t i = 0; i + 1 < pooled.size(); ++i) {
    candidates.push_back(0.5 * (pooled[i] + pooled[i + 1]));
  }
  candidates.push_back(pooled.back());

  ThresholdCalibration best;
  double best_gap = INFINITY;
  // Candidates ascend, so strict < keeps the smallest t on ties.
  for (double t : candidates) {
    const ErrorRates r = rates_sorted(genuine, spoof, t);
    const double gap = std::abs(r.apcer - r.bpcer);
    if (gap < best_gap) {
      best_gap = gap;
      best = {t, r.acer()};
    }
  }
  return best;
}

}  // namespace

ErrorRates error_rates(std::span<const double> genuine, std::span<const double> spoof,
                       double threshold) {
  require_both(genuine, spoof);
  return rates_sorted(sorted(genuine), sorted(spoof), threshold);
}

ThresholdCalibration calibrate_threshold(std::span<const double> genuine,
                                         std::span<const double> spoof) {
  require_both(genuine, spoof);
  return calibrate_sorted(sorted(genuine), sorted(spoof));
}

Histogram histogram(std::span<const double> genuine, std::span<const double> spoof, int bins) {
  require(bins >= 1, ErrorKind::kInvalidArgument, "histogram needs at least one bin");
  Histogram h;
  h.genuine.assign(static_cast<std::size_t>(bins), 0);
  h.spoof.assign(static_cast<std::size_t>(bins), 0);
  double lo = INFINITY;
  double hi = -INFINITY;
  for (auto xs : {genuine, spoof}) {
    for (double x : xs) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (!(lo <= hi)) return h;
  h.lo = lo;
  h.bin_width = hi > lo ? (hi - lo) / bins : 1.0;
  const auto fill = [&](std::span<const double> xs, std::vector<std::uint32_t>& counts) {
    for (double x : xs) {
      auto bin = static_cast<long>((x - lo) / h.bin_width);
      bin = std::clamp(bin, 0L, static_cast<long>(bins - 1));
      ++counts[static_cast<std::size_t>(bin)];
    }
  };
  fill(genuine, h.genuine);
  fill(spoof, h.spoof);
  return h;
}

EvalReport evaluate(std::span<const double> genuine, std::span<const double> spoof) {
  require_both(genuine, spoof);
  const auto g = sorted(genuine);
  const auto s = sorted(spoof);

  EvalReport report;
  report.genuine_count = g.size();
  report.spoof_count = s.size();

  // Sweeping t downward from the top score raises both coordinates.
  const auto pooled = distinct_pooled(g, s);
  report.roc.reserve(pooled.size() + 1);
  for (auto it = pooled.rbegin(); it != pooled.rend(); ++it) {
    const ErrorRates r = rates_sorted(g, s, *it);
    report.roc.push_back({*it, r.apcer, 1.0 - r.bpcer});
  }
  const ErrorRates all = rates_sorted(g, s, std::nextafter(pooled.front(), -INFINITY));
  report.roc.push_back({std::nextafter(pooled.front(), -INFINITY), all.apcer, 1.0 - all.bpcer});

  double auc = 0.0;
  for (std::size_t i = 1; i < report.roc.size(); ++i) {
    const auto& a = report.roc[i - 1];
    const auto& b = report.roc[i];
    auc += (b.apcer - a.apcer) * 0.5 * (a.genuine_accept + b.genuine_accept);
  }
  report.auc = auc;

  const ThresholdCalibration cal = calibrate_sorted(g, s);
  report.threshold = cal.threshold;
  report.eer = cal.eer;
  report.acer = rates_sorted(g, s, cal.threshold).acer();
  report.histogram = histogram(genuine, spoof);
  return report;
}

HoldoutResult holdout_acer(std::span<const double> genuine, std::span<const double> spoof,
                           const HoldoutOptions& options) {
  require_both(genuine, spoof);
  require(options.repeats >= 1, ErrorKind::kInvalidArgument, "repeats must be positive");
  require(options.test_fraction > 0.0 && options.test_fraction < 1.0,
          ErrorKind::kInvalidArgument, "test fraction must lie in (0, 1)");

  const std::size_t per_class = std::min(genuine.size(), spoof.size());
  const auto test_n = static_cast<std::size_t>(
      std::lround(options.test_fraction * static_cast<double>(per_class)));
  require(test_n >= 1 && test_n < per_class, ErrorKind::kInvalidArgument,
          "too few scores per class for a train/test split");

  HoldoutResult result;
  result.train_per_class = per_class - test_n;
  result.test_per_class = test_n;

  const CounterRng root(options.seed);
  std::vector<std::size_t> gi(genuine.size());
  std::vector<std::size_t> si(spoof.size());
  for (int rep = 0; rep < options.repeats; ++rep) {
    RngStream rng(root.split(static_cast<std::uint64_t>(rep)));
    const auto shuffle = [&](std::vector<std::size_t>& idx) {
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      for (std::size_t i = idx.size(); i > 1; --i) {
        std::swap(idx[i - 1], idx[rng.below(i)]);
      }
    };
    shuffle(gi);
    shuffle(si);

    std::vector<double> g_train, g_test, s_train, s_test;
    for (std::size_t k = 0; k < per_class; ++k) {
      (k < test_n ? g_test : g_train).push_back(genuine[gi[k]]);
      (k < test_n ? s_test : s_train).push_back(spoof[si[k]]);
    }
    const ThresholdCalibration cal = calibrate_threshold(g_train, s_train);
    result.acers.push_back(error_rates(g_test, s_test, cal.threshold).acer());
    result.mean_threshold += cal.threshold;
  }

  const double n = static_cast<double>(result.acers.size());
  result.mean_threshold /= n;
  result.mean_acer = std::accumulate(result.acers.begin(), result.acers.end(), 0.0) / n;
  double var = 0.0;
  for (double a : result.acers) var += (a - result.mean_acer) * (a - result.mean_acer);
  result.stddev_acer = std::sqrt(var / n);
  return result;
}

}  // namespace codedlf
