#include "chevron/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "chevron/csv.hpp"
#include "chevron/snapshot.hpp"

namespace chevron {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& val) {
  double v = 0;
  auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
  if (ec != std::errc{} || p != val.data() + val.size()) {
    throw ConfigError("config: " + key + " wants a number, got '" + val + "'");
  }
  return v;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& val) {
  Int v = 0;
  auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
  if (ec != std::errc{} || p != val.data() + val.size()) {
    throw ConfigError("config: " + key + " wants an integer, got '" + val + "'");
  }
  return v;
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  grid();  // throws on bad nx/ny/Lx/Ly
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw ConfigError("config: dt must be finite and >= 0");
  if (!(safety > 0.0) || !(safety <= 1.0)) throw ConfigError("config: safety must lie in (0, 1]");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("config: t_end must be finite and >= 0");
  if (!(observe_every > 0.0)) throw ConfigError("config: observe_every must be positive");
  if (snapshot_every < 0.0) throw ConfigError("config: snapshot_every must be >= 0");
  if (!(ic.amplitude >= 0.0) || !std::isfinite(ic.amplitude)) throw ConfigError("config: ic_amplitude must be >= 0");
  if (ic.kx < 1 || ic.ky < 1) throw ConfigError("config: ic_kx and ic_ky must be >= 1");
  if (ic.kind == IcSpec::Kind::File && ic.path.empty()) throw ConfigError("config: ic=file needs ic_path");
  if (out_dir.empty()) throw ConfigError("config: out_dir must not be empty");
}

void apply_assignment(RunConfig& cfg, const std::string& assignment) {
  std::size_t eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("config: expected key=value, got '" + assignment + "'");
  std::string key = trim(assignment.substr(0, eq));
  std::string val = trim(assignment.substr(eq + 1));
  if (key.empty()) throw ConfigError("config: empty key in '" + assignment + "'");
  if (val.empty() && key != "ic_path") throw ConfigError("config: empty value for " + key);

  if (key == "tau") cfg.params.tau = to_double(key, val);
  else if (key == "D1") cfg.params.D1 = to_double(key, val);
  else if (key == "D2") cfg.params.D2 = to_double(key, val);
  else if (key == "c1") cfg.params.c1 = to_double(key, val);
  else if (key == "c2") cfg.params.c2 = to_double(key, val);
  else if (key == "h") cfg.params.h = to_double(key, val);
  else if (key == "beta") cfg.params.beta = to_double(key, val);
  else if (key == "nx") cfg.nx = to_int<int>(key, val);
  else if (key == "ny") cfg.ny = to_int<int>(key, val);
  else if (key == "Lx") cfg.Lx = to_double(key, val);
  else if (key == "Ly") cfg.Ly = to_double(key, val);
  else if (key == "scheme") {
    if (val == "imex") cfg.scheme = Scheme::ImexEuler;
    else if (val == "rk4") cfg.scheme = Scheme::Rk4Explicit;
    else throw ConfigError("config: scheme must be imex or rk4, got '" + val + "'");
  } else if (key == "dt") cfg.dt = to_double(key, val);
  else if (key == "safety") cfg.safety = to_double(key, val);
  else if (key == "t_end") cfg.t_end = to_double(key, val);
  else if (key == "observe_every") cfg.observe_every = to_double(key, val);
  else if (key == "snapshot_every") cfg.snapshot_every = to_double(key, val);
  else if (key == "ic") {
    if (val == "zero") cfg.ic.kind = IcSpec::Kind::Zero;
    else if (val == "random") cfg.ic.kind = IcSpec::Kind::Random;
    else if (val == "single_mode") cfg.ic.kind = IcSpec::Kind::SingleMode;
    else if (val == "file") cfg.ic.kind = IcSpec::Kind::File;
    else throw ConfigError("config: ic must be zero, random, single_mode or file, got '" + val + "'");
  } else if (key == "ic_amplitude") cfg.ic.amplitude = to_double(key, val);
  else if (key == "ic_seed") cfg.ic.seed = to_int<std::uint64_t>(key, val);
  else if (key == "ic_kx") cfg.ic.kx = to_int<int>(key, val);
  else if (key == "ic_ky") cfg.ic.ky = to_int<int>(key, val);
  else if (key == "ic_path") cfg.ic.path = val;
  else if (key == "out_dir") cfg.out_dir = val;
  else throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open '" + path + "'");
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_assignment(cfg, line);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "tau=" << format_double(cfg.params.tau) << '\n';
  os << "D1=" << format_double(cfg.params.D1) << '\n';
  os << "D2=" << format_double(cfg.params.D2) << '\n';
  os << "c1=" << format_double(cfg.params.c1) << '\n';
  os << "c2=" << format_double(cfg.params.c2) << '\n';
  os << "h=" << format_double(cfg.params.h) << '\n';
  os << "beta=" << format_double(cfg.params.beta) << '\n';
  os << "nx=" << cfg.nx << '\n';
  os << "ny=" << cfg.ny << '\n';
  os << "Lx=" << format_double(cfg.Lx) << '\n';
  os << "Ly=" << format_double(cfg.Ly) << '\n';
  os << "scheme=" << (cfg.scheme == Scheme::ImexEuler ? "imex" : "rk4") << '\n';
  os << "dt=" << format_double(cfg.dt) << '\n';
  os << "safety=" << format_double(cfg.safety) << '\n';
  os << "t_end=" << format_double(cfg.t_end) << '\n';
  os << "observe_every=" << format_double(cfg.observe_every) << '\n';
  os << "snapshot_every=" << format_double(cfg.snapshot_every) << '\n';
  switch (cfg.ic.kind) {
    case IcSpec::Kind::Zero: os << "ic=zero\n"; break;
    case IcSpec::Kind::Random: os << "ic=random\n"; break;
    case IcSpec::Kind::SingleMode: os << "ic=single_mode\n"; break;
    case IcSpec::Kind::File: os << "ic=file\n"; break;
  }
  os << "ic_amplitude=" << format_double(cfg.ic.amplitude) << '\n';
  os << "ic_seed=" << cfg.ic.seed << '\n';
  os << "ic_kx=" << cfg.ic.kx << '\n';
  os << "ic_ky=" << cfg.ic.ky << '\n';
  os << "ic_path=" << cfg.ic.path << '\n';
  os << "out_dir=" << cfg.out_dir << '\n';
  return os.str();
}

double bubble(double x, double y, const Grid2D& g) {
  return x * (g.Lx - x) * y * (g.Ly - y) / (g.Lx * g.Lx * g.Ly * g.Ly / 16.0);
}

SimState make_initial(const IcSpec& spec, const Grid2D& g, std::uint64_t seed) {
  SimState s(g);
  switch (spec.kind) {
    case IcSpec::Kind::Zero:
      break;
    case IcSpec::Kind::Random: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-spec.amplitude, spec.amplitude);
      for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
          const double re = u(rng);
          const double im = u(rng);
          const double ph = u(rng);
          const double w = bubble(g.x(i), g.y(j), g);
          s.A(i, j) = std::complex<double>(re * w, im * w);
          s.phi(i, j) = ph * w;
        }
      }
      break;
    }
    case IcSpec::Kind::SingleMode: {
      // Seeds both equations: amp * mode on Re A, half of it on phi.
      if (spec.kx < 1 || spec.kx > g.nx || spec.ky < 1 || spec.ky > g.ny) {
        throw ConfigError("make_initial: mode (" + std::to_string(spec.kx) + ", " + std::to_string(spec.ky) +
                          ") does not fit the grid");
      }
      for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
          const double m = std::sin(spec.kx * std::numbers::pi * g.x(i) / g.Lx) *
                           std::sin(spec.ky * std::numbers::pi * g.y(j) / g.Ly);
          s.A(i, j) = spec.amplitude * m;
          s.phi(i, j) = 0.5 * spec.amplitude * m;
        }
      }
      break;
    }
    case IcSpec::Kind::File: {
      SimState loaded = read_snapshot(spec.path);
      if (!(loaded.grid() == g)) {
        throw ConfigError("make_initial: snapshot '" + spec.path + "' was written on a different grid");
      }
      s = std::move(loaded);
      break;
    }
  }
  return s;
}

}  // namespace chevron
