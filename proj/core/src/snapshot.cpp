#include "hmhd/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "hmhd/errors.hpp"

namespace hmhd {

static_assert(std::endian::native == std::endian::little,
              "snapshot i/o assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'H', 'M', 'H', 'D'};
constexpr std::uint8_t kFormatVersion = 1;

void put_f64(std::ostream& os, double v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  os.write(buf, 8);
}

double get_f64(std::istream& is, const std::string& what) {
  char buf[8];
  if (!is.read(buf, 8)) throw IoError("snapshot: truncated while reading " + what);
  double v;
  std::memcpy(&v, buf, 8);
  return v;
}

void write_field(std::ostream& os, const VectorField& f) {
  for (int c = 0; c < 3; ++c) {
    for (const auto& v : f.component(c)) {
      put_f64(os, v.real());
      put_f64(os, v.imag());
    }
  }
}

void read_field(std::istream& is, VectorField& f, const std::string& name) {
  for (int c = 0; c < 3; ++c) {
    auto& a = f.component(c);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double re = get_f64(is, name);
      const double im = get_f64(is, name);
      a[i] = Complex(re, im);
    }
  }
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const VectorField& u,
                    const VectorField& B, double t, double alpha) {
  if (u.grid() != B.grid()) {
    throw std::invalid_argument("snapshot: u and B live on different grids");
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("snapshot: cannot open " + path.string() + " for writing");
  os.write(kMagic, 4);
  const std::uint8_t version = kFormatVersion;
  const std::uint8_t mode = static_cast<std::uint8_t>(u.grid().dim_mode());
  os.put(static_cast<char>(version));
  os.put(static_cast<char>(mode));
  const std::int32_t n = u.grid().points_per_axis();
  char nbuf[4];
  std::memcpy(nbuf, &n, 4);
  os.write(nbuf, 4);
  put_f64(os, alpha);
  put_f64(os, t);
  write_field(os, u);
  write_field(os, B);
  os.flush();
  if (!os) throw IoError("snapshot: write to " + path.string() + " failed");
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("snapshot: cannot open " + path.string());
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError("snapshot: " + path.string() + " lacks the HMHD magic");
  }
  const int version = is.get();
  if (version != kFormatVersion) {
    throw IoError("snapshot: " + path.string() + " has unsupported format version " +
                  std::to_string(version));
  }
  const int mode_byte = is.get();
  if (mode_byte != 0 && mode_byte != 1) {
    throw IoError("snapshot: " + path.string() + " has invalid lattice layout byte " +
                  std::to_string(mode_byte));
  }
  char nbuf[4];
  if (!is.read(nbuf, 4)) throw IoError("snapshot: truncated header in " + path.string());
  std::int32_t n;
  std::memcpy(&n, nbuf, 4);
  const double alpha = get_f64(is, "alpha");
  const double t = get_f64(is, "t");
  if (n < 8 || n > (1 << 20) || (n & (n - 1)) != 0) {
    throw IoError("snapshot: " + path.string() + " declares invalid lattice size " +
                  std::to_string(n));
  }
  Grid grid(static_cast<DimMode>(mode_byte), n);
  Snapshot snap{VectorField(grid), VectorField(grid), t, alpha};
  read_field(is, snap.u, "u");
  read_field(is, snap.B, "B");
  // Exactly at end of payload; trailing bytes mean a corrupted file.
  is.peek();
  if (!is.eof()) throw IoError("snapshot: trailing bytes in " + path.string());
  return snap;
}

}  // namespace hmhd
