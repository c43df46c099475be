#include "codedlf/netpbm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace codedlf::netpbm {
namespace {

struct Header {
  char kind = 0;
  int width = 0;
  int height = 0;
  int maxval = 1;
};

void skip_space_and_comments(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      std::string discard;
      std::getline(in, discard);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in) {
  skip_space_and_comments(in);
  int value = -1;
  in >> value;
  require(static_cast<bool>(in) && value >= 0, ErrorKind::kFormat, "malformed netpbm header");
  return value;
}

Header read_header(std::istream& in, char expected) {
  Header h;
  char magic[2] = {0, 0};
  in.read(magic, 2);
  require(in.gcount() == 2 && magic[0] == 'P' && magic[1] == expected, ErrorKind::kFormat,
          std::string("expected netpbm magic P") + expected);
  h.kind = expected;
  h.width = read_header_int(in);
  h.height = read_header_int(in);
  if (expected == '5') h.maxval = read_header_int(in);
  require(h.width >= 1 && h.height >= 1, ErrorKind::kFormat, "netpbm dimensions must be positive");
  require(h.maxval >= 1 && h.maxval <= 65535, ErrorKind::kFormat, "netpbm maxval out of range");
  // Exactly one whitespace byte separates the header from the raster.
  const int sep = in.get();
  require(sep == ' ' || sep == '\t' || sep == '\n' || sep == '\r', ErrorKind::kFormat,
          "missing whitespace after netpbm header");
  return h;
}

void write_samples(std::ostream& out, int width, int height, int maxval,
                   std::span<const double> values, double scale) {
  out << "P5\n" << width << ' ' << height << '\n' << maxval << '\n';
  const bool wide = maxval > 255;
  std::string buf;
  buf.reserve(values.size() * (wide ? 2 : 1));
  for (double v : values) {
    const long s = std::lround(v * scale);
    require(s >= 0 && s <= maxval, ErrorKind::kInvalidArgument,
            "pixel value outside the representable range");
    if (wide) buf.push_back(static_cast<char>((s >> 8) & 0xFF));
    buf.push_back(static_cast<char>(s & 0xFF));
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  require(static_cast<bool>(out), ErrorKind::kIo, "failed writing PGM raster");
}

std::vector<int> read_samples(std::istream& in, const Header& h) {
  const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
  const bool wide = h.maxval > 255;
  std::string buf(n * (wide ? 2 : 1), '\0');
  in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  require(static_cast<std::size_t>(in.gcount()) == buf.size(), ErrorKind::kFormat,
          "truncated PGM raster");
  std::vector<int> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = [&](std::size_t k) { return static_cast<int>(static_cast<unsigned char>(buf[k])); };
    samples[i] = wide ? (b(2 * i) << 8 | b(2 * i + 1)) : b(i);
    require(samples[i] <= h.maxval, ErrorKind::kFormat, "PGM sample exceeds maxval");
  }
  return samples;
}

template <typename Stream>
Stream open(const std::filesystem::path& path, std::ios::openmode mode) {
  Stream s(path, mode | std::ios::binary);
  require(s.is_open(), ErrorKind::kIo, "cannot open " + path.string());
  return s;
}

}  // namespace

void write_pgm(std::ostream& out, const GrayImage& image) {
  write_samples(out, image.width(), image.height(), 255, image.pixels(), 255.0);
}

GrayImage read_pgm(std::istream& in) {
  const Header h = read_header(in, '5');
  const auto samples = read_samples(in, h);
  GrayImage image(h.width, h.height);
  auto px = image.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = static_cast<double>(samples[i]) / static_cast<double>(h.maxval);
  }
  return image;
}

void write_coded_pgm(std::ostream& out, const CodedImage& ci) {
  write_samples(out, ci.image.width(), ci.image.height(), kCodedMaxval, ci.image.pixels(), 255.0);
}

CodedImage read_coded_pgm(std::istream& in) {
  const Header h = read_header(in, '5');
  require(h.maxval == kCodedMaxval, ErrorKind::kFormat,
          "coded image must be stored with maxval " + std::to_string(kCodedMaxval));
  const auto samples = read_samples(in, h);
  CodedImage ci{GrayImage(h.width, h.height), 0};
  auto px = ci.image.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = static_cast<double>(samples[i]) / 255.0;
  return ci;
}

void write_pbm(std::ostream& out, const std::vector<BinaryRaster>& planes) {
  for (const auto& plane : planes) {
    out << "P4\n" << plane.width() << ' ' << plane.height() << '\n';
    const std::size_t row_bytes = (static_cast<std::size_t>(plane.width()) + 7) / 8;
    std::string row(row_bytes, '\0');
    for (int y = 0; y < plane.height(); ++y) {
      std::fill(row.begin(), row.end(), '\0');
      const auto src = plane.row(y);
      for (int x = 0; x < plane.width(); ++x) {
        if (src[static_cast<std::size_t>(x)] != 0) {
          row[static_cast<std::size_t>(x / 8)] |= static_cast<char>(0x80 >> (x % 8));
        }
      }
      out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
  }
  require(static_cast<bool>(out), ErrorKind::kIo, "failed writing PBM");
}

std::vector<BinaryRaster> read_pbm(std::istream& in) {
  std::vector<BinaryRaster> planes;
  while (true) {
    skip_space_and_comments(in);
    if (in.peek() == std::char_traits<char>::eof()) break;
    const Header h = read_header(in, '4');
    const std::size_t row_bytes = (static_cast<std::size_t>(h.width) + 7) / 8;
    BinaryRaster plane(h.width, h.height, 0);
    std::string row(row_bytes, '\0');
    for (int y = 0; y < h.height; ++y) {
      in.read(row.data(), static_cast<std::streamsize>(row_bytes));
      require(static_cast<std::size_t>(in.gcount()) == row_bytes, ErrorKind::kFormat,
              "truncated PBM raster");
      auto dst = plane.row(y);
      for (int x = 0; x < h.width; ++x) {
        const auto byte = static_cast<unsigned char>(row[static_cast<std::size_t>(x / 8)]);
        dst[static_cast<std::size_t>(x)] = (byte >> (7 - x % 8)) & 1u;
      }
    }
    planes.push_back(std::move(plane));
  }
  require(!planes.empty(), ErrorKind::kFormat, "PBM stream holds no image");
  return planes;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  auto out = open<std::ofstream>(path, std::ios::out);
  write_pgm(out, image);
}

GrayImage read_pgm(const std::filesystem::path& path) {
  auto in = open<std::ifstream>(path, std::ios::in);
  return read_pgm(in);
}

void write_coded_pgm(const std::filesystem::path& path, const CodedImage& ci) {
  auto out = open<std::ofstream>(path, std::ios::out);
  write_coded_pgm(out, ci);
}

CodedImage read_coded_pgm(const std::filesystem::path& path) {
  auto in = open<std::ifstream>(path, std::ios::in);
  return read_coded_pgm(in);
}

void write_pbm(const std::filesystem::path& path, const std::vector<BinaryRaster>& planes) {
  auto out = open<std::ofstream>(path, std::ios::out);
  write_pbm(out, planes);
}

std::vector<BinaryRaster> read_pbm(const std::filesystem::path& path) {
  auto in = open<std::ifstream>(path, std::ios::in);
  return read_pbm(in);
}

}  // namespace codedlf::netpbm
