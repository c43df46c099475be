#include <gtest/gtest.h>

#include <numeric>

#include "codedlf/error.hpp"
#include "codedlf/metrics.hpp"
#include "gaussian_scores.hpp"

namespace codedlf {
namespace {

using testing::gaussian_sample;
using testing::normal_cdf;

TEST(ErrorRates, Definitions) {
  const std::vector<double> g{0.1, 0.5, 0.9};
  const std::vector<double> s{0.2, 0.6};
  const auto r = error_rates(g, s, 0.5);
  EXPECT_DOUBLE_EQ(r.apcer, 0.5);
  EXPECT_DOUBLE_EQ(r.bpcer, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.acer(), 0.5 * (0.5 + 2.0 / 3.0));
}

TEST(Calibrate, SeparableReturnsSmallestMidpoint) {
  const auto c = calibrate_threshold(std::vector{0.9, 0.8}, std::vector{0.1, 0.2});
  EXPECT_EQ(c.eer, 0.0);
  EXPECT_DOUBLE_EQ(c.threshold, 0.5);
}

TEST(Calibrate, IdenticalDistributions) {
  const auto c = calibrate_threshold(std::vector{0.1, 0.9}, std::vector{0.1, 0.9});
  EXPECT_DOUBLE_EQ(c.eer, 0.5);
}

TEST(Calibrate, EmptyInput) {
  try {
    calibrate_threshold(std::vector<double>{}, std::vector{0.1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
  EXPECT_THROW(evaluate(std::vector{0.1}, std::vector<double>{}), Error);
}

TEST(Calibrate, GaussianOracle) {
  const double analytic = normal_cdf(-1.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto g = gaussian_sample(200, 0.5, 0.1, seed * 2);
    const auto s = gaussian_sample(200, 0.3, 0.1, seed * 2 + 1);
    const auto c = calibrate_threshold(g, s);
    EXPECT_NEAR(c.eer, analytic, 0.03) << seed;
    EXPECT_NEAR(c.threshold, 0.4, 0.05) << seed;
  }
}

TEST(Evaluate, SeparatedScores) {
  const auto r = evaluate(std::vector{0.7, 0.8, 0.9}, std::vector{0.1, 0.2});
  EXPECT_DOUBLE_EQ(r.auc, 1.0);
  EXPECT_DOUBLE_EQ(r.acer, 0.0);
  EXPECT_EQ(r.genuine_count, 3u);
  EXPECT_EQ(r.spoof_count, 2u);
}

TEST(Evaluate, IdenticalDistributions) {
  const auto g = gaussian_sample(500, 0.4, 0.1, 10);
  const auto s = gaussian_sample(500, 0.4, 0.1, 11);
  const auto r = evaluate(g, s);
  EXPECT_NEAR(r.auc, 0.5, 0.05);
  EXPECT_NEAR(r.acer, 0.5, 0.05);
}

TEST(Evaluate, RocMonotoneAndAnchored) {
  const auto g = gaussian_sample(300, 0.5, 0.1, 20);
  const auto s = gaussian_sample(250, 0.3, 0.1, 21);
  const auto r = evaluate(g, s);
  ASSERT_GE(r.roc.size(), 2u);
  EXPECT_EQ(r.roc.front().apcer, 0.0);
  EXPECT_EQ(r.roc.front().genuine_accept, 0.0);
  EXPECT_EQ(r.roc.back().apcer, 1.0);
  EXPECT_EQ(r.roc.back().genuine_accept, 1.0);
  for (std::size_t i = 1; i < r.roc.size(); ++i) {
    EXPECT_GE(r.roc[i].apcer, r.roc[i - 1].apcer);
    EXPECT_GE(r.roc[i].genuine_accept, r.roc[i - 1].genuine_accept);
  }
}

TEST(Evaluate, GaussianAucOracle) {
  const auto g = gaussian_sample(400, 0.5, 0.1, 30);
  const auto s = gaussian_sample(400, 0.3, 0.1, 31);
  const auto r = evaluate(g, s);
  EXPECT_NEAR(r.auc, normal_cdf(0.2 / (0.1 * std::numbers::sqrt2)), 0.03);
  // Mann-Whitney count, independent of the ROC construction.
  double wins = 0.0;
  for (double x : g)
    for (double y : s) wins += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  EXPECT_NEAR(r.auc, wins / (400.0 * 400.0), 1e-12);
}

TEST(Evaluate, AcerMatchesEerWithinOneStep) {
  const auto g = gaussian_sample(173, 0.5, 0.1, 40);
  const auto s = gaussian_sample(211, 0.3, 0.1, 41);
  const auto r = evaluate(g, s);
  const auto rates = error_rates(g, s, r.threshold);
  EXPECT_DOUBLE_EQ(r.acer, rates.acer());
  EXPECT_LE(std::abs(rates.apcer - rates.bpcer), 1.0 / 173.0 + 1.0 / 211.0);
  EXPECT_NEAR(r.acer, r.eer, 1e-15);
}

TEST(Histogram, FixedBinsCoverAllScores) {
  const auto g = gaussian_sample(100, 0.5, 0.1, 50);
  const auto s = gaussian_sample(80, 0.3, 0.1, 51);
  const auto h = histogram(g, s);
  ASSERT_EQ(h.genuine.size(), static_cast<std::size_t>(kHistogramBins));
  ASSERT_EQ(h.spoof.size(), static_cast<std::size_t>(kHistogramBins));
  EXPECT_EQ(std::accumulate(h.genuine.begin(), h.genuine.end(), 0u), 100u);
  EXPECT_EQ(std::accumulate(h.spoof.begin(), h.spoof.end(), 0u), 80u);
  EXPECT_GT(h.bin_width, 0.0);
  const auto flat = histogram(std::vector{0.2, 0.2}, std::vector{0.2});
  EXPECT_EQ(std::accumulate(flat.genuine.begin(), flat.genuine.end(), 0u), 2u);
}

TEST(Holdout, SeparableIsPerfect) {
  const auto g = gaussian_sample(120, 0.8, 0.02, 60);
  const auto s = gaussian_sample(80, 0.2, 0.02, 61);
  const auto r = holdout_acer(g, s, {});
  EXPECT_EQ(r.mean_acer, 0.0);
  EXPECT_EQ(r.acers.size(), 50u);
  EXPECT_EQ(r.train_per_class + r.test_per_class, 80u);
  EXPECT_EQ(r.test_per_class, 20u);
}

TEST(Holdout, ChanceLevelForIdenticalDistributions) {
  const auto g = gaussian_sample(200, 0.4, 0.1, 70);
  const auto s = gaussian_sample(200, 0.4, 0.1, 71);
  EXPECT_NEAR(holdout_acer(g, s, {}).mean_acer, 0.5, 0.05);
}

TEST(Holdout, DeterministicPerSeed) {
  const auto g = gaussian_sample(90, 0.5, 0.1, 80);
  const auto s = gaussian_sample(60, 0.3, 0.1, 81);
  HoldoutOptions o;
  o.seed = 5;
  const auto a = holdout_acer(g, s, o);
  const auto b = holdout_acer(g, s, o);
  EXPECT_EQ(a.acers, b.acers);
  o.seed = 6;
  EXPECT_NE(holdout_acer(g, s, o).acers, a.acers);
}

TEST(Holdout, RejectsBadOptions) {
  const std::vector<double> g{0.1, 0.2, 0.3, 0.4}, s{0.5, 0.6, 0.7, 0.8};
  HoldoutOptions o;
  o.repeats = 0;
  EXPECT_THROW(holdout_acer(g, s, o), Error);
  o = {};
  o.test_fraction = 1.0;
  EXPECT_THROW(holdout_acer(g, s, o), Error);
  EXPECT_THROW(holdout_acer(g, std::vector{0.5}, HoldoutOptions{}), Error);
}

}  // namespace
}  // namespace codedlf
