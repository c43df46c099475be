#include <gtest/gtest.h>

#include <sstream>

#include "codedlf/netpbm.hpp"
#include "test_images.hpp"

namespace codedlf {
namespace {

TEST(Netpbm, PgmRoundTripOf8BitImage) {
  const auto img = quantize_8bit(testing::uniform_noise_image(17, 9, 4));
  std::stringstream ss;
  netpbm::write_pgm(ss, img);
  EXPECT_EQ(ss.str().substr(0, 2), "P5");
  const auto back = netpbm::read_pgm(ss);
  EXPECT_EQ(back, img);
}

TEST(Netpbm, PgmQuantizesOnWrite) {
  GrayImage img(2, 1);
  img(0, 0) = 0.5;
  img(1, 0) = 1.0;
  std::stringstream ss;
  netpbm::write_pgm(ss, img);
  const auto back = netpbm::read_pgm(ss);
  EXPECT_DOUBLE_EQ(back(0, 0), 128.0 / 255.0);
  EXPECT_DOUBLE_EQ(back(1, 0), 1.0);
}

TEST(Netpbm, PgmHeaderComments) {
  std::stringstream ss;
  ss << "P5\n# comment\n2 1\n# another\n255\n";
  ss.put(static_cast<char>(0)).put(static_cast<char>(255));
  const auto img = netpbm::read_pgm(ss);
  EXPECT_EQ(img.width(), 2);
  EXPECT_DOUBLE_EQ(img(1, 0), 1.0);
}

TEST(Netpbm, CodedRoundTripOf8BitViews) {
  const auto v0 = quantize_8bit(testing::uniform_noise_image(31, 7, 1));
  const auto v1 = quantize_8bit(testing::uniform_noise_image(31, 7, 2));
  const auto m = generate_mask(31, 7, 0.5, MaskProjection::independent(), 3);
  const auto ci = encode(v0, v1, m);
  std::stringstream ss;
  netpbm::write_coded_pgm(ss, ci);
  const auto back = netpbm::read_coded_pgm(ss);
  ASSERT_TRUE(back.image.same_shape(ci.image));
  const auto sm = sparse_masks(m);
  for (std::size_t i = 0; i < ci.image.size(); ++i) {
    // Single-view pixels are exact; overlapping sums may differ in the last bit.
    if (sm.sm0.pixels()[i] || sm.sm1.pixels()[i])
      ASSERT_EQ(back.image.pixels()[i], ci.image.pixels()[i]);
    else
      ASSERT_NEAR(back.image.pixels()[i], ci.image.pixels()[i], 1e-15);
  }
  EXPECT_EQ(back.mask_id, 0u);
}

TEST(Netpbm, PbmMultiPlaneRoundTrip) {
  const auto m = generate_mask(13, 5, 0.5, MaskProjection::independent(), 8);
  std::stringstream ss;
  netpbm::write_pbm(ss, {m.phi0, m.phi1});
  const auto planes = netpbm::read_pbm(ss);
  ASSERT_EQ(planes.size(), 2u);
  EXPECT_EQ(planes[0], m.phi0);
  EXPECT_EQ(planes[1], m.phi1);
}

TEST(Netpbm, MalformedInputsThrow) {
  std::stringstream bad_magic("P2\n1 1\n255\n0");
  EXPECT_THROW(netpbm::read_pgm(bad_magic), Error);
  std::stringstream truncated("P5\n4 4\n255\nab");
  EXPECT_THROW(netpbm::read_pgm(truncated), Error);
  std::stringstream empty_pbm("");
  EXPECT_THROW(netpbm::read_pbm(empty_pbm), Error);
  EXPECT_THROW(netpbm::read_pgm(std::filesystem::path("/nonexistent/x.pgm")), Error);
}

}  // namespace
}  // namespace codedlf
