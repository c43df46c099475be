#include "codedlf/lf_core.hpp"

#include <string>

#include "codedlf/rng.hpp"

namespace codedlf {
namespace {

constexpr std::uint64_t kPhi0Stream = 0;
constexpr std::uint64_t kPhi1Stream = 1;

BinaryRaster bernoulli_raster(int width, int height, double p, CounterRng rng) {
  BinaryRaster out(width, height);
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = rng.uniform(i) < p ? 1 : 0;
  }
  return out;
}

}  // namespace

CodingMask generate_mask(int width, int height, double transmittance,
                         MaskProjection projection, std::uint64_t seed) {
  require(width >= 1 && height >= 1, ErrorKind::kInvalidArgument,
          "mask dimensions must be positive");
  require(transmittance > 0.0 && transmittance < 1.0, ErrorKind::kInvalidArgument,
          "transmittance must lie in (0, 1)");

  CodingMask mask;
  mask.transmittance = transmittance;
  mask.projection = projection;
  mask.seed = seed;

  const CounterRng rng(seed);
  if (projection.mode == MaskMode::kIndependent) {
    mask.phi0 = bernoulli_raster(width, height, transmittance, rng.split(kPhi0Stream));
    mask.phi1 = bernoulli_raster(width, height, transmittance, rng.split(kPhi1Stream));
    return mask;
  }

  require(projection.shift_px >= 0 && projection.shift_px < width,
          ErrorKind::kInvalidArgument, "shift_px must lie in [0, width)");
  const BinaryRaster physical =
      bernoulli_raster(width, height, transmittance, rng.split(kPhi0Stream));
  mask.phi0 = physical;
  mask.phi1 = BinaryRaster(width, height, 0);
  for (int y = 0; y < height; ++y) {
    for (int x = projection.shift_px; x < width; ++x) {
      mask.phi1(x, y) = physical(x - projection.shift_px, y);
    }
  }
  return mask;
}

void validate_mask(const CodingMask& mask) {
  require(!mask.phi0.empty() && mask.phi0.same_shape(mask.phi1), ErrorKind::kInvalidArgument,
          "mask planes must be non-empty and share dimensions");
  for (const auto* plane : {&mask.phi0, &mask.phi1}) {
    for (std::uint8_t v : plane->pixels()) {
      require(v <= 1, ErrorKind::kInvalidArgument, "mask entries must be 0 or 1");
    }
  }
}

std::uint64_t mask_fingerprint(const CodingMask& mask) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(mask.width()) << 32 |
                          static_cast<std::uint64_t>(mask.height()));
  for (const auto* plane : {&mask.phi0, &mask.phi1}) {
    std::uint64_t word = 0;
    int nbits = 0;
    for (std::uint8_t v : plane->pixels()) {
      word = word << 1 | (v & 1u);
      if (++nbits == 64) {
        h = mix64(h ^ word);
        word = 0;
        nbits = 0;
      }
    }
    h = mix64(h ^ word ^ static_cast<std::uint64_t>(nbits));
  }
  // 0 is reserved for "unknown".
  return h == 0 ? 1 : h;
}

CodedImage encode(const GrayImage& view0, const GrayImage& view1, const CodingMask& mask) {
  validate_mask(mask);
  require_same_shape(view0, view1, "encode views");
  require_same_shape(view0, mask.phi0, "encode view vs mask");
  require(within_range(view0, 0.0, 1.0) && within_range(view1, 0.0, 1.0),
          ErrorKind::kInvalidArgument, "view intensities must lie in [0, 1]");

  CodedImage ci{GrayImage(view0.width(), view0.height(), 0.0), mask_fingerprint(mask)};
  auto out = ci.image.pixels();
  const auto v0 = view0.pixels();
  const auto v1 = view1.pixels();
  const auto p0 = mask.phi0.pixels();
  const auto p1 = mask.phi1.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    // Multiplying by an exact 0/1 keeps the sum bit-exact against either view.
    out[i] = v0[i] * p0[i] + v1[i] * p1[i];
  }
  return ci;
}

SparseMaskPair sparse_masks(const CodingMask& mask) {
  validate_mask(mask);
  SparseMaskPair pair{BinaryRaster(mask.width(), mask.height(), 0),
                      BinaryRaster(mask.width(), mask.height(), 0)};
  const auto p0 = mask.phi0.pixels();
  const auto p1 = mask.phi1.pixels();
  auto s0 = pair.sm0.pixels();
  auto s1 = pair.sm1.pixels();
  for (std::size_t i = 0; i < p0.size(); ++i) {
    s0[i] = (p0[i] > 0 && p1[i] == 0) ? 1 : 0;
    s1[i] = (p1[i] > 0 && p0[i] == 0) ? 1 : 0;
  }
  return pair;
}

SparseView extract_sparse_view(const CodedImage& ci, const BinaryRaster& sm) {
  require_same_shape(ci.image, sm, "coded image vs sparse mask");
  SparseView view{GrayImage(sm.width(), sm.height(), 0.0), sm};
  auto out = view.values.pixels();
  const auto in = ci.image.pixels();
  const auto valid = sm.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (valid[i] != 0) out[i] = in[i];
  }
  for (auto& v : view.valid.pixels()) v = v != 0 ? 1 : 0;
  return view;
}

}  // namespace codedlf
