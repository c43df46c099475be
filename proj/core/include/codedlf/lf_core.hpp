#pragma once

// Two-view coded light-field acquisition on a single grayscale sensor, and the
// sparse per-view reconstruction that falls out of a binary mask for free.

#include <cstdint>

#include "codedlf/raster.hpp"

namespace codedlf {

enum class MaskMode { kIndependent, kShifted };

struct MaskProjection {
  MaskMode mode = MaskMode::kIndependent;
  // Horizontal offset between the two projections of the physical mask.
  // Only meaningful in shifted mode.
  int shift_px = 0;

  static MaskProjection independent() { return {}; }
  static MaskProjection shifted(int shift_px) { return {MaskMode::kShifted, shift_px}; }

  friend bool operator==(const MaskProjection&, const MaskProjection&) = default;
};

// phi0 / phi1: per-view binary transmittance as seen by the sensor.
struct CodingMask {
  BinaryRaster phi0;
  BinaryRaster phi1;
  double transmittance = 0.5;
  MaskProjection projection;
  std::uint64_t seed = 0;

  int width() const noexcept { return phi0.width(); }
  int height() const noexcept { return phi0.height(); }

  friend bool operator==(const CodingMask&, const CodingMask&) = default;
};

struct CodedImage {
  // Pre-normalization sums, so values lie in [0, 2].
  GrayImage image;
  // Fingerprint of the mask used for encoding; 0 when unknown (e.g. read from disk).
  std::uint64_t mask_id = 0;
};

struct SparseMaskPair {
  BinaryRaster sm0;
  BinaryRaster sm1;
};

struct SparseView {
  // Zero where !valid.
  GrayImage values;
  BinaryRaster valid;
};

// Each physical-mask entry is an independent Bernoulli(transmittance) draw.
// Independent mode draws phi0 and phi1 separately; shifted mode uses one draw
// Phi with phi0 = Phi and phi1(x, y) = Phi(x - shift_px, y), zero where the
// source column falls outside the sensor.
CodingMask generate_mask(int width, int height, double transmittance,
                         MaskProjection projection, std::uint64_t seed);

// Throws kInvalidArgument unless both planes share a shape and hold only 0/1.
void validate_mask(const CodingMask& mask);

std::uint64_t mask_fingerprint(const CodingMask& mask);

// CI(x, y) = view0 * phi0 + view1 * phi1.
CodedImage encode(const GrayImage& view0, const GrayImage& view1, const CodingMask& mask);

// sm_i = [phi_i > 0] & [phi_{1-i} == 0]
SparseMaskPair sparse_masks(const CodingMask& mask);

SparseView extract_sparse_view(const CodedImage& ci, const BinaryRaster& sm);

}  // namespace codedlf
