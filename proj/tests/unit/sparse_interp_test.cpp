#include <gtest/gtest.h>

#include <cmath>

#include "codedlf/sparse_interp.hpp"
#include "sparse_oracle.hpp"

namespace codedlf {
namespace {

using testing::bernoulli_sample;

TEST(Densify, ReproducesConstants) {
  const auto sv = bernoulli_sample(GrayImage(96, 64, 0.6), 0.25, 1);
  const auto dv = densify(sv);
  for (double v : dv.image.pixels()) ASSERT_EQ(v, 0.6);
}

TEST(Densify, ReproducesRowRampInsideCoverage) {
  const auto ramp = testing::ramp_image(128, 40);
  const auto dv = densify(bernoulli_sample(ramp, 0.25, 2));
  std::size_t covered = 0;
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 128; ++x) {
      if (!dv.coverage(x, y)) continue;
      ++covered;
      ASSERT_NEAR(dv.image(x, y), ramp(x, y), 1e-9) << x << "," << y;
    }
  }
  EXPECT_GT(covered, 128u * 40u * 9 / 10);
}

TEST(Densify, KeepsKnotsExactly) {
  const auto img = testing::uniform_noise_image(64, 64, 3);
  const auto sv = bernoulli_sample(img, 0.3, 4);
  const auto dv = densify(sv);
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (sv.valid.pixels()[i]) {
      ASSERT_EQ(dv.image.pixels()[i], sv.values.pixels()[i]);
    }
  }
  EXPECT_TRUE(within_range(dv.image, 0.0, 1.0));
}

TEST(Densify, ClampsOvershoot) {
  SparseView sv{GrayImage(8, 1), BinaryRaster(8, 1)};
  const double vals[] = {0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0};
  for (int x = 0; x < 8; x += 1) {
    if (x == 3 || x == 4) continue;
    sv.values(x, 0) = vals[x];
    sv.valid(x, 0) = 1;
  }
  const auto dv = densify(sv);
  EXPECT_TRUE(within_range(dv.image, 0.0, 1.0));
}

TEST(Densify, CoverageIsBetweenFirstAndLastKnot) {
  SparseView sv{GrayImage(10, 1), BinaryRaster(10, 1)};
  for (int x : {2, 4, 5, 7}) {
    sv.valid(x, 0) = 1;
    sv.values(x, 0) = 0.1 * x;
  }
  const auto dv = densify(sv);
  for (int x = 0; x < 10; ++x) EXPECT_EQ(dv.coverage(x, 0), x >= 2 && x <= 7 ? 1 : 0) << x;
  EXPECT_EQ(dv.image(0, 0), sv.values(2, 0));
  EXPECT_EQ(dv.image(9, 0), sv.values(7, 0));
  EXPECT_NEAR(dv.image(3, 0), 0.3, 1e-12);
  EXPECT_NEAR(dv.image(6, 0), 0.6, 1e-12);
}

TEST(Densify, SparseRowsFilledVertically) {
  SparseView sv{GrayImage(6, 3), BinaryRaster(6, 3)};
  for (int x = 0; x < 6; ++x) {
    sv.valid(x, 0) = sv.valid(x, 2) = 1;
    sv.values(x, 0) = 0.2;
    sv.values(x, 2) = 0.6;
  }
  sv.valid(1, 1) = 1;
  sv.values(1, 1) = 0.9;
  const auto dv = densify(sv);
  for (int x = 0; x < 6; ++x) {
    if (x == 1) continue;
    EXPECT_NEAR(dv.image(x, 1), 0.4, 1e-12);
    EXPECT_EQ(dv.coverage(x, 1), 1);
  }
  EXPECT_EQ(dv.image(1, 1), 0.9);
}

TEST(Densify, InsufficientData) {
  SparseView sv{GrayImage(8, 8), BinaryRaster(8, 8)};
  for (int y = 0; y < 8; ++y) sv.valid(y % 8, y) = 1;
  try {
    densify(sv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
  EXPECT_THROW(densify(SparseView{GrayImage(4, 4), BinaryRaster(4, 4)}), Error);
}

TEST(Densify, Deterministic) {
  const auto sv = bernoulli_sample(testing::uniform_noise_image(70, 30, 5), 0.25, 6);
  const auto a = densify(sv);
  const auto b = densify(sv);
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.coverage, b.coverage);
}

TEST(Densify, SinusoidOracleBound) {
  const auto e = testing::sinusoid_error_at(0.25, testing::kSinusoidSeed);
  RecordProperty("sinusoid_mae_25", std::to_string(e.mean_abs));
  EXPECT_GT(e.covered, 512u * 512u * 9 / 10);
  EXPECT_LE(e.mean_abs, testing::kSinusoidErrorBound25);
}

TEST(Densify, MonotoneDegradationWithDensity) {
  for (std::uint64_t seed = 200; seed < 203; ++seed) {
    const double e10 = testing::sinusoid_error_at(0.10, seed, 256).mean_abs;
    const double e25 = testing::sinusoid_error_at(0.25, seed, 256).mean_abs;
    const double e50 = testing::sinusoid_error_at(0.50, seed, 256).mean_abs;
    EXPECT_GE(e10, e25) << seed;
    EXPECT_GE(e25, e50) << seed;
  }
}

TEST(DenseFromImage, FullCoverage) {
  const auto img = testing::uniform_noise_image(5, 4, 1);
  const auto dv = dense_from_image(img);
  EXPECT_EQ(dv.image, img);
  EXPECT_EQ(count_set(dv.coverage), 20u);
}

}  // namespace
}  // namespace codedlf
