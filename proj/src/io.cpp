#include "vhed/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

namespace vhed::io {

static_assert(std::endian::native == std::endian::little,
              "ArrayFile writer assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'V', 'H', 'E', 'D'};
constexpr uint16_t kVersion = 1;
constexpr size_t kNameBytes = 16;

template <typename T>
void put(std::string& buf, const T& v) {
  const char* p = reinterpret_cast<const char*>(&v);
  buf.append(p, sizeof(T));
}

template <typename T>
T take(const std::string& buf, size_t& pos) {
  if (pos + sizeof(T) > buf.size()) throw TruncationError("array file: truncated header");
  T v;
  std::memcpy(&v, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

size_t ArrayData::element_count() const {
  size_t n = 1;
  for (const auto& ax : axes) n *= static_cast<size_t>(ax.length);
  return axes.empty() ? 0 : n;
}

void write_array(const std::string& path, const ArrayData& a) {
  const size_t count = a.element_count();
  const size_t have = (a.dtype == Dtype::Float64) ? a.f64.size() : a.c128.size();
  if (count != have)
    throw FormatError("array file: payload length does not match axis lengths");

  std::string buf;
  buf.append(kMagic, 4);
  put(buf, kVersion);
  put(buf, static_cast<uint16_t>(a.dtype));
  put(buf, static_cast<uint16_t>(a.axes.size()));
  put(buf, static_cast<uint16_t>(0));
  put(buf, a.convention);
  put(buf, a.calibration.real());
  put(buf, a.calibration.imag());
  for (const auto& ax : a.axes) {
    put(buf, ax.length);
    char name[kNameBytes] = {};
    std::strncpy(name, ax.name.c_str(), kNameBytes - 1);
    buf.append(name, kNameBytes);
    put(buf, ax.min);
    put(buf, ax.max);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (a.dtype == Dtype::Float64)
    out.write(reinterpret_cast<const char*>(a.f64.data()),
              static_cast<std::streamsize>(count * sizeof(double)));
  else
    out.write(reinterpret_cast<const char*>(a.c128.data()),
              static_cast<std::streamsize>(count * sizeof(cdouble)));
  if (!out) throw IoError("write failed: " + path);
}

ArrayData read_array(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < 4 || std::memcmp(buf.data(), kMagic, 4) != 0)
    throw FormatError("array file: bad magic");
  size_t pos = 4;
  const auto version = take<uint16_t>(buf, pos);
  if (version != kVersion)
    throw VersionError("array file: unsupported version " + std::to_string(version));
  const auto dtype = take<uint16_t>(buf, pos);
  if (dtype != static_cast<uint16_t>(Dtype::Float64) &&
      dtype != static_cast<uint16_t>(Dtype::Complex128))
    throw DtypeError("array file: unknown dtype tag " + std::to_string(dtype));
  const auto rank = take<uint16_t>(buf, pos);
  (void)take<uint16_t>(buf, pos);

  ArrayData a;
  a.dtype = static_cast<Dtype>(dtype);
  a.convention = take<uint32_t>(buf, pos);
  const double cre = take<double>(buf, pos);
  const double cim = take<double>(buf, pos);
  a.calibration = {cre, cim};
  for (uint16_t r = 0; r < rank; ++r) {
    AxisMeta ax;
    ax.length = take<uint64_t>(buf, pos);
    if (pos + kNameBytes > buf.size()) throw TruncationError("array file: truncated header");
    const char* nm = buf.data() + pos;
    ax.name.assign(nm, strnlen(nm, kNameBytes));
    pos += kNameBytes;
    ax.min = take<double>(buf, pos);
    ax.max = take<double>(buf, pos);
    a.axes.push_back(std::move(ax));
  }
  const size_t count = a.element_count();
  const size_t esize = (a.dtype == Dtype::Float64) ? sizeof(double) : sizeof(cdouble);
  if (buf.size() - pos < count * esize)
    throw TruncationError("array file: truncated payload (" +
                          std::to_string(buf.size() - pos) + " of " +
                          std::to_string(count * esize) + " bytes)");
  if (buf.size() - pos > count * esize)
    throw FormatError("array file: trailing bytes after payload");
  if (a.dtype == Dtype::Float64) {
    a.f64.resize(count);
    std::memcpy(a.f64.data(), buf.data() + pos, count * esize);
  } else {
    a.c128.resize(count);
    std::memcpy(a.c128.data(), buf.data() + pos, count * esize);
  }
  return a;
}

ArrayData from_field(const ComplexField& f) {
  ArrayData a;
  const int n = f.n();
  const double lo = f.grid->coord(0);
  const double hi = f.grid->coord(n - 1);
  a.axes = {{"y", static_cast<uint64_t>(n), lo, hi}, {"x", static_cast<uint64_t>(n), lo, hi}};
  a.c128.reserve(static_cast<size_t>(n) * n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) a.c128.push_back(f.v(iy, ix));
  return a;
}

ComplexField to_field(const ArrayData& a, const GridPtr& grid) {
  if (a.dtype != Dtype::Complex128 || a.axes.size() != 2)
    throw DtypeError("to_field: expected rank-2 complex128 array");
  const int n = grid->n();
  if (a.axes[0].length != static_cast<uint64_t>(n) ||
      a.axes[1].length != static_cast<uint64_t>(n))
    throw FormatError("to_field: array shape does not match grid");
  ComplexField f(grid);
  size_t i = 0;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) f.v(iy, ix) = a.c128[i++];
  return f;
}

ArrayData from_cube(const SpectralCube& c, const KGrid& kgrid) {
  ArrayData a;
  const int nb = static_cast<int>(c.boundary_points.size());
  const bool tau = c.domain == CubeDomain::Tau;
  // the sign tag travels in the boundary-axis name
  const char* bname = (c.sign > 0) ? "boundary+" : (c.sign < 0 ? "boundary-" : "boundary");
  a.axes = {{bname, static_cast<uint64_t>(nb), 0.0, 2.0 * kPi * (nb - 1) / nb},
            {tau ? "tau" : "t", static_cast<uint64_t>(c.n_rad),
             tau ? kgrid.tau(0) : kgrid.t(0), tau ? kgrid.tau(c.n_rad - 1) : kgrid.t(c.n_rad - 1)},
            {"phi", static_cast<uint64_t>(c.n_phi), 0.0, kgrid.phi(c.n_phi - 1)}};
  a.c128.reserve(static_cast<size_t>(nb) * c.n_rad * c.n_phi);
  for (int b = 0; b < nb; ++b)
    for (int r = 0; r < c.n_rad; ++r)
      for (int ph = 0; ph < c.n_phi; ++ph) a.c128.push_back(c.at(b, r, ph));
  return a;
}

SpectralCube to_cube(const ArrayData& a) {
  if (a.dtype != Dtype::Complex128 || a.axes.size() != 3)
    throw DtypeError("to_cube: expected rank-3 complex128 array");
  if (a.convention != kConventionId)
    throw FormatError("to_cube: convention id mismatch");
  SpectralCube c;
  const int nb = static_cast<int>(a.axes[0].length);
  c.n_rad = static_cast<int>(a.axes[1].length);
  c.n_phi = static_cast<int>(a.axes[2].length);
  c.domain = (a.axes[1].name == "tau") ? CubeDomain::Tau : CubeDomain::T;
  c.sign = a.axes[0].name == "boundary+" ? +1 : (a.axes[0].name == "boundary-" ? -1 : 0);
  c.boundary_points = unit_circle_points(nb);
  c.data.assign(static_cast<size_t>(nb) * c.n_rad * c.n_phi, cdouble(0.0, 0.0));
  size_t i = 0;
  for (int b = 0; b < nb; ++b)
    for (int r = 0; r < c.n_rad; ++r)
      for (int ph = 0; ph < c.n_phi; ++ph) c.at(b, r, ph) = a.c128[i++];
  return c;
}

ArrayData from_sinogram(const Sinogram& s) {
  ArrayData a;
  const int nt = s.n_t(), na = s.n_phi();
  a.axes = {{"t", static_cast<uint64_t>(nt), s.t0, s.t(nt - 1)},
            {"phi", static_cast<uint64_t>(na), 0.0, kPi * (na - 1) / na}};
  a.calibration = s.weight;
  a.c128.reserve(static_cast<size_t>(nt) * na);
  for (int m = 0; m < nt; ++m)
    for (int ph = 0; ph < na; ++ph) a.c128.push_back(s.vals(m, ph));
  return a;
}

Sinogram to_sinogram(const ArrayData& a) {
  if (a.dtype != Dtype::Complex128 || a.axes.size() != 2)
    throw DtypeError("to_sinogram: expected rank-2 complex128 array");
  if (a.convention != kConventionId)
    throw FormatError("to_sinogram: convention id mismatch");
  Sinogram s;
  const int nt = static_cast<int>(a.axes[0].length);
  const int na = static_cast<int>(a.axes[1].length);
  s.vals.resize(nt, na);
  s.t0 = a.axes[0].min;
  s.dt = (nt > 1) ? (a.axes[0].max - a.axes[0].min) / (nt - 1) : 0.0;
  s.weight = a.calibration;
  size_t i = 0;
  for (int m = 0; m < nt; ++m)
    for (int ph = 0; ph < na; ++ph) s.vals(m, ph) = a.c128[i++];
  return s;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  out.precision(17);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

Render render_from_name(const std::string& name) {
  if (name == "real") return Render::Real;
  if (name == "abs") return Render::Abs;
  if (name == "imag") return Render::Imag;
  throw ContractError("unknown render mode: " + name);
}

void export_image(const std::string& path, const Eigen::ArrayXXcd& vals, Render render,
                  std::optional<std::pair<double, double>> fixed_range) {
  Eigen::ArrayXXd img;
  switch (render) {
    case Render::Real: img = vals.real(); break;
    case Render::Abs: img = vals.abs(); break;
    case Render::Imag: img = vals.imag(); break;
  }
  double lo, hi;
  if (fixed_range) {
    lo = fixed_range->first;
    hi = fixed_range->second;
  } else {
    lo = img.minCoeff();
    hi = img.maxCoeff();
  }
  const double span = (hi > lo) ? hi - lo : 1.0;

  const Eigen::Index rows = img.rows(), cols = img.cols();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "P5\n" << cols << " " << rows << "\n255\n";
  std::string pixels;
  pixels.reserve(static_cast<size_t>(rows) * static_cast<size_t>(cols));
  for (Eigen::Index r = rows - 1; r >= 0; --r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double v = (img(r, c) - lo) / span * 255.0;
      v = std::clamp(v, 0.0, 255.0);
      pixels.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v))));
    }
  }
  out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
  if (!out) throw IoError("write failed: " + path);

  std::ofstream side(path + ".txt", std::ios::trunc);
  side.precision(17);
  side << "render ";
  side << (render == Render::Real ? "real" : (render == Render::Abs ? "abs" : "imag"));
  side << "\nrange " << lo << " " << hi << "\nrows " << rows << "\ncols " << cols << "\n";
}

}  // namespace vhed::io
