#include "codedlf/sparse_interp.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace codedlf {
namespace {

struct Knot {
  int x;
  double value;
};

// Tangent at knot k using the non-uniform Catmull-Rom difference; one-sided at
// the ends. Linear data gives the exact slope everywhere.
double tangent(const std::vector<Knot>& knots, std::size_t k) {
  const std::size_t last = knots.size() - 1;
  const std::size_t lo = k == 0 ? 0 : k - 1;
  const std::size_t hi = k == last ? last : k + 1;
  return (knots[hi].value - knots[lo].value) / static_cast<double>(knots[hi].x - knots[lo].x);
}

// Returns true when the row had enough knots to be filled.
bool fill_row(std::span<const double> values, std::span<const std::uint8_t> valid,
              std::span<double> out, std::span<std::uint8_t> cover, std::vector<Knot>& knots) {
  knots.clear();
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (valid[x] != 0) knots.push_back({static_cast<int>(x), values[x]});
  }
  if (knots.size() < static_cast<std::size_t>(kMinRowKnots)) return false;

  const int first = knots.front().x;
  const int last = knots.back().x;
  for (int x = 0; x < first; ++x) out[static_cast<std::size_t>(x)] = knots.front().value;
  for (std::size_t x = static_cast<std::size_t>(last) + 1; x < out.size(); ++x) {
    out[x] = knots.back().value;
  }

  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const Knot& a = knots[k];
    const Knot& b = knots[k + 1];
    const double h = static_cast<double>(b.x - a.x);
    const double ma = tangent(knots, k) * h;
    const double mb = tangent(knots, k + 1) * h;
    out[static_cast<std::size_t>(a.x)] = a.value;
    for (int x = a.x + 1; x < b.x; ++x) {
      const double t = static_cast<double>(x - a.x) / h;
      const double t2 = t * t;
      const double t3 = t2 * t;
      const double h10 = t3 - 2 * t2 + t;
      const double h01 = -2 * t3 + 3 * t2;
      const double h11 = t3 - t2;
      const double v = a.value + h01 * (b.value - a.value) + h10 * ma + h11 * mb;
      out[static_cast<std::size_t>(x)] = std::clamp(v, 0.0, 1.0);
    }
  }
  out[static_cast<std::size_t>(last)] = knots.back().value;

  std::fill(cover.begin(), cover.end(), std::uint8_t{0});
  std::fill(cover.begin() + first, cover.begin() + last + 1, std::uint8_t{1});
  return true;
}

}  // namespace

DenseView densify(const SparseView& sv) {
  require_same_shape(sv.values, sv.valid, "sparse view values vs valid");
  const int width = sv.values.width();
  const int height = sv.values.height();
  DenseView dense{GrayImage(width, height, 0.0), BinaryRaster(width, height, 0)};

  std::vector<std::uint8_t> filled(static_cast<std::size_t>(height), 0);
  std::vector<Knot> knots;
  knots.reserve(static_cast<std::size_t>(width));
  for (int y = 0; y < height; ++y) {
    filled[static_cast<std::size_t>(y)] =
        fill_row(sv.values.row(y), sv.valid.row(y), dense.image.row(y), dense.coverage.row(y), knots)
            ? 1
            : 0;
  }
  require(std::find(filled.begin(), filled.end(), 1) != filled.end(),
          ErrorKind::kInsufficientData, "no row of the sparse view holds 4 known samples");

  // Vertical pass over rows that could not be filled on their own.
  int prev = -1;
  for (int y = 0; y < height; ++y) {
    if (filled[static_cast<std::size_t>(y)] != 0) {
      prev = y;
      continue;
    }
    int next = y + 1;
    while (next < height && filled[static_cast<std::size_t>(next)] == 0) ++next;
    const bool has_next = next < height;
    auto out = dense.image.row(y);
    auto cover = dense.coverage.row(y);
    if (prev >= 0 && has_next) {
      const double w = static_cast<double>(y - prev) / static_cast<double>(next - prev);
      const auto above = dense.image.row(prev);
      const auto below = dense.image.row(next);
      const auto cover_above = dense.coverage.row(prev);
      const auto cover_below = dense.coverage.row(next);
      for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] = above[x] + w * (below[x] - above[x]);
        cover[x] = cover_above[x] & cover_below[x];
      }
    } else {
      // Beyond the outermost filled row: nearest-row extension, not covered.
      const auto src = dense.image.row(prev >= 0 ? prev : next);
      std::copy(src.begin(), src.end(), out.begin());
    }
  }

  // Known samples in unfilled rows are still exact.
  for (int y = 0; y < height; ++y) {
    if (filled[static_cast<std::size_t>(y)] != 0) continue;
    const auto values = sv.values.row(y);
    const auto valid = sv.valid.row(y);
    auto out = dense.image.row(y);
    for (std::size_t x = 0; x < out.size(); ++x) {
      if (valid[x] != 0) out[x] = values[x];
    }
  }
  return dense;
}

DenseView dense_from_image(const GrayImage& image) {
  return {image, BinaryRaster(image.width(), image.height(), 1)};
}

}  // namespace codedlf
