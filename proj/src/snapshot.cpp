#include "chevron/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "chevron/reductions.hpp"

namespace chevron {

namespace {

constexpr char kMagic[5] = {'C', 'H', 'E', 'V', '1'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot IO assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 4)) throw std::runtime_error("snapshot: truncated header");
  return v;
}

double get_f64(std::istream& is, const char* what) {
  double v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 8)) {
    throw std::runtime_error(std::string("snapshot: truncated ") + what);
  }
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const SimState& s) {
  s.validate();
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("snapshot: cannot open '" + path + "' for writing");

  os.write(kMagic, 5);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(s.grid().nx));
  put_u32(os, static_cast<std::uint32_t>(s.grid().ny));
  put_f64(os, s.grid().Lx);
  put_f64(os, s.grid().Ly);
  put_f64(os, s.t);
  for (double v : s.phi.v) put_f64(os, v);
  for (const auto& z : s.A.v) {
    put_f64(os, z.real());
    put_f64(os, z.imag());
  }
  os.flush();
  if (!os) throw std::runtime_error("snapshot: write to '" + path + "' failed");
}

SimState read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open '" + path + "'");

  char magic[5] = {};
  if (!is.read(magic, 5) || std::memcmp(magic, kMagic, 5) != 0) {
    throw std::runtime_error("snapshot: '" + path + "' has the wrong magic, not a state file");
  }
  const std::uint32_t ver = get_u32(is);
  if (ver != kVersion) {
    throw std::runtime_error("snapshot: unsupported version " + std::to_string(ver));
  }
  const std::uint32_t nx = get_u32(is);
  const std::uint32_t ny = get_u32(is);
  if (nx < 3 || ny < 3 || nx > (1u << 20) || ny > (1u << 20)) {
    throw std::runtime_error("snapshot: implausible grid size");
  }
  const double Lx = get_f64(is, "header");
  const double Ly = get_f64(is, "header");
  const double t = get_f64(is, "header");
  if (!(Lx > 0.0) || !(Ly > 0.0) || !(t >= 0.0)) {
    throw std::runtime_error("snapshot: bad domain extent or time");
  }

  Grid2D g(static_cast<int>(nx), static_cast<int>(ny), Lx, Ly);
  SimState s(g);
  s.t = t;
  for (double& v : s.phi.v) v = get_f64(is, "phi payload");
  for (auto& z : s.A.v) {
    const double re = get_f64(is, "A payload");
    const double im = get_f64(is, "A payload");
    z = {re, im};
  }
  char extra;
  if (is.read(&extra, 1)) throw std::runtime_error("snapshot: trailing bytes after payload");
  if (!all_finite(s.phi) || !all_finite(s.A)) throw std::runtime_error("snapshot: non-finite payload");
  return s;
}

}  // namespace chevron
