#pragma once

#include "ncbsar/raster.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ncb {

/// NCBR raster container: "NCBR" magic, u32 LE version = 1, u32 LE rows,
/// u32 LE cols, u8 dtype (0 = complex float64 interleaved re,im; 1 = real
/// float64), 3 zero pad bytes, then row-major little-endian payload.
/// Round trips are bit-exact.
enum class RasterDtype : std::uint8_t { Complex = 0, Real = 1 };

struct LoadedRaster {
  RasterDtype dtype = RasterDtype::Complex;
  CxMat complex_data;  // filled when dtype == Complex
  ReMat real_data;     // filled when dtype == Real
};

void write_raster(const std::filesystem::path& path, const CxMat& x);
void write_raster(const std::filesystem::path& path, const ReMat& x);

LoadedRaster read_raster(const std::filesystem::path& path);

/// Typed readers; FormatError when the file holds the other dtype.
CxMat read_complex_raster(const std::filesystem::path& path);
ReMat read_real_raster(const std::filesystem::path& path);

/// Binary 8-bit PGM (P5); value = clamp(round(255*(x-lo)/(hi-lo))).
void write_pgm(const std::filesystem::path& path, const ReMat& r, double lo, double hi);

/// CSV with '.' decimal separator and LF line endings regardless of locale.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_double(double v);

}  // namespace ncb
