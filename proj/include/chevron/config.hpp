#pragma once

#include <cstdint>
#include <string>

#include "chevron/field.hpp"
#include "chevron/params.hpp"
#include "chevron/pde.hpp"

namespace chevron {

struct IcSpec {
  enum class Kind { Zero, Random, SingleMode, File };
  Kind kind = Kind::Random;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  int kx = 1, ky = 1;     // SingleMode
  std::string path;       // File
};

// Flat key=value run description; see configs/ for documented samples.
struct RunConfig {
  ChevronParams params;
  int nx = 64, ny = 64;
  double Lx = 1.0, Ly = 1.0;
  Scheme scheme = Scheme::ImexEuler;
  double dt = 0.0;  // 0 = pick automatically
  double safety = 0.8;
  double t_end = 10.0;
  double observe_every = 0.1;
  double snapshot_every = 0.0;  // 0 = no periodic snapshots
  IcSpec ic;
  std::string out_dir = "out";

  Grid2D grid() const { return Grid2D(nx, ny, Lx, Ly); }
  void validate() const;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

RunConfig parse_config_file(const std::string& path);

// Applies one "key=value" assignment; unknown keys throw ConfigError.
void apply_assignment(RunConfig& cfg, const std::string& assignment);

// Canonical key=value form; parse_config round-trips it.
std::string emit_config(const RunConfig& cfg);

// Smooth Dirichlet bump x (Lx - x) y (Ly - y) / (Lx^2 Ly^2 / 16), peak 1.
double bubble(double x, double y, const Grid2D& g);

// Builds the initial state. Random fields draw re A, im A, phi per node in
// row-major order from mt19937_64(seed), uniform in [-amp, amp], then apply
// the Dirichlet bump.
SimState make_initial(const IcSpec& spec, const Grid2D& g, std::uint64_t seed);

inline const char* prng_name() { return "mt19937_64/uniform_real"; }

}  // namespace chevron
