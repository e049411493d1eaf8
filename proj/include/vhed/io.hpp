#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vhed/grid.hpp"
#include "vhed/spectral.hpp"

namespace vhed::io {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : IoError {  // wrong magic / malformed header
  using IoError::IoError;
};
struct VersionError : IoError {
  using IoError::IoError;
};
struct DtypeError : IoError {
  using IoError::IoError;
};
struct TruncationError : IoError {
  using IoError::IoError;
};

enum class Dtype : uint16_t { Float64 = 1, Complex128 = 2 };

struct AxisMeta {
  std::string name;  // at most 15 bytes
  uint64_t length = 0;
  double min = 0.0;
  double max = 0.0;
};

// Bespoke binary array container: magic "VHED", version, dtype tag, rank,
// convention id + calibration constant, per-axis metadata, little-endian
// row-major payload. Round trips are bit-exact.
struct ArrayData {
  Dtype dtype = Dtype::Complex128;
  std::vector<AxisMeta> axes;
  uint32_t convention = kConventionId;
  cdouble calibration{1.0, 0.0};
  std::vector<double> f64;
  std::vector<cdouble> c128;

  size_t element_count() const;
};

void write_array(const std::string& path, const ArrayData& a);
ArrayData read_array(const std::string& path);

// Conversions between pipeline objects and ArrayData. Fields use axes (y, x),
// cubes (boundary, radial, angle), sinograms (t, phi); payload iterates the
// leading axis slowest (row-major).
ArrayData from_field(const ComplexField& f);
ArrayData from_cube(const SpectralCube& c, const KGrid& kgrid);
ArrayData from_sinogram(const Sinogram& s);
ComplexField to_field(const ArrayData& a, const GridPtr& grid);
SpectralCube to_cube(const ArrayData& a);
Sinogram to_sinogram(const ArrayData& a);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

enum class Render { Real, Abs, Imag };
Render render_from_name(const std::string& name);

// 8-bit binary PGM with linear mapping of the chosen render to [0, 255];
// the applied range goes to a sidecar "<path>.txt". Row 0 is the top of the
// image (largest value of the leading axis).
void export_image(const std::string& path, const Eigen::ArrayXXcd& vals, Render render,
                  std::optional<std::pair<double, double>> fixed_range = std::nullopt);

}  // namespace vhed::io
