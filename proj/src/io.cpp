#include "ncbsar/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>

namespace ncb {

namespace {

constexpr std::array<char, 4> kMagic = {'N', 'C', 'B', 'R'};
constexpr std::uint32_t kVersion = 1;

void put_u32_le(std::string& out, std::uint32_t v) {
  out.push_back(char(v & 0xff));
  out.push_back(char((v >> 8) & 0xff));
  out.push_back(char((v >> 16) & 0xff));
  out.push_back(char((v >> 24) & 0xff));
}

void put_f64_le(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(char((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32_le(const unsigned char* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

double get_f64_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t(p[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), std::streamsize(bytes.size()));
  if (!f) throw IoError("short write to " + path.string());
}

std::string header_bytes(std::uint32_t rows, std::uint32_t cols, RasterDtype dtype) {
  std::string out;
  out.append(kMagic.data(), kMagic.size());
  put_u32_le(out, kVersion);
  put_u32_le(out, rows);
  put_u32_le(out, cols);
  out.push_back(char(dtype));
  out.append(3, '\0');
  return out;
}

}  // namespace

void write_raster(const std::filesystem::path& path, const CxMat& x) {
  std::string bytes = header_bytes(std::uint32_t(x.rows()), std::uint32_t(x.cols()),
                                   RasterDtype::Complex);
  bytes.reserve(bytes.size() + size_t(x.size()) * 16);
  for (Index i = 0; i < x.size(); ++i) {
    put_f64_le(bytes, x.data()[i].real());
    put_f64_le(bytes, x.data()[i].imag());
  }
  write_file(path, bytes);
}

void write_raster(const std::filesystem::path& path, const ReMat& x) {
  std::string bytes =
      header_bytes(std::uint32_t(x.rows()), std::uint32_t(x.cols()), RasterDtype::Real);
  bytes.reserve(bytes.size() + size_t(x.size()) * 8);
  for (Index i = 0; i < x.size(); ++i) put_f64_le(bytes, x.data()[i]);
  write_file(path, bytes);
}

LoadedRaster read_raster(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (bytes.size() < 20) throw FormatError(path.string() + ": truncated header");
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (std::memcmp(p, kMagic.data(), 4) != 0) {
    throw FormatError(path.string() + ": bad magic (not an NCBR raster)");
  }
  const std::uint32_t version = get_u32_le(p + 4);
  if (version != kVersion) {
    throw FormatError(path.string() + ": unsupported version " + std::to_string(version));
  }
  const std::uint32_t rows = get_u32_le(p + 8);
  const std::uint32_t cols = get_u32_le(p + 12);
  const std::uint8_t dtype = p[16];
  if (dtype > 1) throw FormatError(path.string() + ": unknown dtype " + std::to_string(dtype));
  if (rows == 0 || cols == 0) throw FormatError(path.string() + ": empty raster");
  const size_t sample_bytes = dtype == 0 ? 16 : 8;
  const size_t expected = 20 + size_t(rows) * size_t(cols) * sample_bytes;
  if (bytes.size() != expected) {
    throw FormatError(path.string() + ": payload length mismatch, expected " +
                      std::to_string(expected) + " bytes, got " + std::to_string(bytes.size()));
  }
  LoadedRaster out;
  out.dtype = RasterDtype(dtype);
  const unsigned char* payload = p + 20;
  if (out.dtype == RasterDtype::Complex) {
    out.complex_data.resize(rows, cols);
    for (Index i = 0; i < out.complex_data.size(); ++i) {
      out.complex_data.data()[i] =
          Complex(get_f64_le(payload + 16 * i), get_f64_le(payload + 16 * i + 8));
    }
  } else {
    out.real_data.resize(rows, cols);
    for (Index i = 0; i < out.real_data.size(); ++i) {
      out.real_data.data()[i] = get_f64_le(payload + 8 * i);
    }
  }
  return out;
}

CxMat read_complex_raster(const std::filesystem::path& path) {
  LoadedRaster r = read_raster(path);
  if (r.dtype != RasterDtype::Complex) {
    throw FormatError(path.string() + ": expected complex raster, found real");
  }
  return std::move(r.complex_data);
}

ReMat read_real_raster(const std::filesystem::path& path) {
  LoadedRaster r = read_raster(path);
  if (r.dtype != RasterDtype::Real) {
    throw FormatError(path.string() + ": expected real raster, found complex");
  }
  return std::move(r.real_data);
}

void write_pgm(const std::filesystem::path& path, const ReMat& r, double lo, double hi) {
  if (!(lo < hi)) throw ConfigError("write_pgm: need lo < hi");
  std::string bytes = "P5\n" + std::to_string(r.cols()) + " " + std::to_string(r.rows()) +
                      "\n255\n";
  bytes.reserve(bytes.size() + size_t(r.size()));
  const double scale = 255.0 / (hi - lo);
  for (Index i = 0; i < r.size(); ++i) {
    const double v = std::round((r.data()[i] - lo) * scale);
    bytes.push_back(char(static_cast<unsigned char>(std::clamp(v, 0.0, 255.0))));
  }
  write_file(path, bytes);
}

std::string format_double(double v) {
  // locale-independent shortest round-trip formatting
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += row[i];
    }
    out.push_back('\n');
  };
  append_row(header);
  for (const auto& row : rows) append_row(row);
  write_file(path, out);
}

}  // namespace ncb
