#pragma once

// Binary netpbm I/O: P5 graymaps for views and coded images, P4 bitmaps for
// mask planes. Intensities cross the file boundary as 8-bit counts, value/255.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "codedlf/lf_core.hpp"
#include "codedlf/raster.hpp"

namespace codedlf::netpbm {

// Coded images hold sums of two 8-bit views, so they are stored with this
// maxval and decoded with the same 1/255 scale as views.
inline constexpr int kCodedMaxval = 510;

void write_pgm(std::ostream& out, const GrayImage& image);
GrayImage read_pgm(std::istream& in);

void write_coded_pgm(std::ostream& out, const CodedImage& ci);
CodedImage read_coded_pgm(std::istream& in);

// One P4 image per plane, concatenated in a single stream.
void write_pbm(std::ostream& out, const std::vector<BinaryRaster>& planes);
std::vector<BinaryRaster> read_pbm(std::istream& in);

void write_pgm(const std::filesystem::path& path, const GrayImage& image);
GrayImage read_pgm(const std::filesystem::path& path);
void write_coded_pgm(const std::filesystem::path& path, const CodedImage& ci);
CodedImage read_coded_pgm(const std::filesystem::path& path);
void write_pbm(const std::filesystem::path& path, const std::vector<BinaryRaster>& planes);
std::vector<BinaryRaster> read_pbm(const std::filesystem::path& path);

}  // namespace codedlf::netpbm
