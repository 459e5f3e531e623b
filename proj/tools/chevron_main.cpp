// Command-line front end: simulate, energy-check, fixed-points, portrait,
// bifurcation, convergence. Exit codes: 0 success, 1 runtime failure, 2 usage.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chevron/config.hpp"
#include "chevron/csv.hpp"
#include "chevron/energy.hpp"
#include "chevron/pde.hpp"
#include "chevron/polar.hpp"
#include "chevron/reduced.hpp"
#include "chevron/reductions.hpp"
#include "chevron/snapshot.hpp"

namespace fs = std::filesystem;
using namespace chevron;

namespace {

struct CommonConfigArgs {
  std::string config_path;
  std::vector<std::string> sets;
};

void add_config_options(CLI::App* cmd, CommonConfigArgs& args) {
  cmd->add_option("--config", args.config_path, "key=value run description file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", args.sets, "override one key=value (repeatable)");
}

RunConfig build_config(const CommonConfigArgs& args) {
  RunConfig cfg;
  if (!args.config_path.empty()) cfg = parse_config_file(args.config_path);
  for (const std::string& s : args.sets) apply_assignment(cfg, s);
  return cfg;
}

std::string fmt_complex(std::complex<double> z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
  return buf;
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_t%.6f.chev", t);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  if (n <= 1) {
    v.push_back(lo);
    return v;
  }
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  return v;
}

int cmd_simulate(const CommonConfigArgs& cargs, const std::string& out_override,
                 std::uint64_t seed_override, bool has_seed, bool quiet) {
  RunConfig cfg = build_config(cargs);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (has_seed) cfg.ic.seed = seed_override;
  cfg.validate();
  if (cfg.snapshot_every > 0.0) {
    double q = cfg.snapshot_every / cfg.observe_every;
    if (std::abs(q - std::llround(q)) > 1e-9 || q < 1.0) {
      throw ConfigError("simulate: snapshot_every must be a positive multiple of observe_every");
    }
  }

  const Grid2D g = cfg.grid();
  SimState s0 = make_initial(cfg.ic, g, cfg.ic.seed);
  const double state_bound = std::max({1.0, max_abs(s0.A), max_abs(s0.phi)});
  if (cfg.dt <= 0.0) cfg.dt = stable_dt(cfg.params, g, state_bound, cfg.safety);

  fs::create_directories(cfg.out_dir);
  {
    std::ofstream meta(fs::path(cfg.out_dir) / "run_meta.txt");
    meta << "# run as executed; reload with --config to reproduce it\n";
    meta << "# prng " << prng_name() << "\n";
    meta << "# regime " << regime_name(regime_of(cfg.params)) << "\n";
    meta << emit_config(cfg);
  }

  const double L0 = lyapunov_value(s0, cfg.params);
  const double t0 = s0.t;
  std::vector<EnergyRecord> recs;
  long long last_snap = -1;

  Observer observe = [&](const SimState& s) {
    recs.push_back(record(s, cfg.params, L0, t0));
    const EnergyRecord& r = recs.back();
    if (!quiet) {
      std::printf("t=%-10.4f |A|^2=%-12.6g |phi|^2=%-12.6g lyap=%-12.6g bound=%-12.6g\n", r.t,
                  r.normA_sq, r.normPhi_sq, r.lyapunov, r.bound);
    }
    if (cfg.snapshot_every > 0.0) {
      long long k = std::llround((s.t - t0) / cfg.snapshot_every);
      if (k > last_snap && std::abs((s.t - t0) - static_cast<double>(k) * cfg.snapshot_every) <=
                               1e-9 * (1.0 + std::abs(s.t))) {
        write_snapshot((fs::path(cfg.out_dir) / snapshot_name(s.t)).string(), s);
        last_snap = k;
      }
    }
  };

  StepperConfig scfg;
  scfg.scheme = cfg.scheme;
  scfg.dt = cfg.dt;
  scfg.safety = cfg.safety;

  const std::string csv_path = (fs::path(cfg.out_dir) / "energy.csv").string();
  try {
    SimState fin = run(s0, cfg.params, scfg, cfg.t_end, cfg.observe_every, {observe});
    write_energy_csv(csv_path, recs);
    write_snapshot((fs::path(cfg.out_dir) / "final.chev").string(), fin);
  } catch (const BlowUpError& e) {
    write_energy_csv(csv_path, recs);  // keep what we have for the post-mortem
    std::cerr << "simulate: " << e.what() << "\n";
    std::cerr << "simulate: partial energy log kept at " << csv_path << "\n";
    return 1;
  }

  DissipativityReport rep = check_dissipativity(recs, cfg.params);
  if (!quiet) {
    std::printf("done: %zu observations, regime %s, max lyapunov/bound %.4g, %zu violations\n",
                recs.size(), regime_name(rep.regime), rep.max_excess_ratio, rep.violations.size());
  }
  return 0;
}

int cmd_energy_check(const CommonConfigArgs& cargs, const std::string& csv_path) {
  RunConfig cfg = build_config(cargs);
  cfg.params.validate();
  std::vector<EnergyRecord> recs = read_energy_csv(csv_path);
  DissipativityReport rep = check_dissipativity(recs, cfg.params);

  std::printf("records:   %zu\n", recs.size());
  std::printf("regime:    %s\n", regime_name(rep.regime));
  if (rep.regime == Regime::None) {
    std::printf("note:      parameters carry no decay estimate, nothing to enforce\n");
  }
  std::printf("max ratio: %.6g (lyapunov / bound, tolerance %.2f)\n", rep.max_excess_ratio,
              1.0 + kDissipativityTol);
  std::size_t shown = 0;
  for (const Violation& v : rep.violations) {
    if (shown++ == 10) {
      std::printf("  ... %zu more\n", rep.violations.size() - 10);
      break;
    }
    std::printf("  violation at t=%.6g: lyapunov %.6g > bound %.6g\n", v.t, v.lyapunov, v.bound);
  }
  if (rep.violations.empty()) {
    std::printf("PASS: all records sit under the theoretical envelope\n");
    return 0;
  }
  std::printf("FAIL: %zu records exceed the envelope\n", rep.violations.size());
  return 1;
}

ReducedSystem parse_system(const std::string& s) {
  if (s == "uniform") return ReducedSystem::Uniform;
  if (s == "phase_grad") return ReducedSystem::PhaseGrad;
  throw std::invalid_argument("system must be uniform or phase_grad, got '" + s + "'");
}

void print_points(const std::vector<FixedPoint>& pts) {
  std::printf("%-14s %-14s %-26s %-26s %s\n", "rho", "phi", "lambda1", "lambda2", "kind");
  for (const FixedPoint& fp : pts) {
    std::printf("%-14.10g %-14.10g %-26s %-26s %s\n", fp.rho, fp.phi, fmt_complex(fp.lambda1).c_str(),
                fmt_complex(fp.lambda2).c_str(), point_kind_name(fp.kind));
  }
}

int cmd_fixed_points(const std::string& system, const ReducedParams& rp, int scan) {
  std::vector<FixedPoint> pts = fixed_points(parse_system(system), rp, scan);
  print_points(pts);
  return 0;
}

int cmd_portrait(const std::string& system, const ReducedParams& rp, double t_end, double dt, int stride,
                 const std::string& out_path) {
  ReducedSystem sys = parse_system(system);
  std::vector<std::pair<double, double>> seeds;
  for (double r : {0.2, 0.6, 1.0, 1.4}) {
    for (double f : {-1.2, -0.4, 0.4, 1.2}) seeds.emplace_back(r, f);
  }
  Portrait port = portrait(sys, rp, seeds, t_end, dt, stride);

  print_points(port.points);
  std::ofstream os(out_path, std::ios::trunc);
  if (!os) throw std::runtime_error("portrait: cannot open '" + out_path + "'");
  os << "orbit,t,rho,phi\n";
  for (std::size_t k = 0; k < port.orbits.size(); ++k) {
    for (const auto& s : port.orbits[k].orbit.samples) {
      os << k << ',' << format_double(s[0]) << ',' << format_double(s[1]) << ',' << format_double(s[2])
         << '\n';
    }
  }
  std::printf("\n%zu orbits -> %s\n", port.orbits.size(), out_path.c_str());
  for (std::size_t k = 0; k < port.orbits.size(); ++k) {
    const auto& po = port.orbits[k];
    const auto& first = po.orbit.samples.front();
    if (po.basin >= 0) {
      const FixedPoint& fp = port.points[po.basin];
      std::printf("  seed (%.3g, %.3g) -> (%.6g, %.6g) %s\n", first[1], first[2], fp.rho, fp.phi,
                  point_kind_name(fp.kind));
    } else {
      std::printf("  seed (%.3g, %.3g) -> unresolved\n", first[1], first[2]);
    }
  }
  return 0;
}

int cmd_bifurcation(double c1_lo, double c1_hi, int c1_n, double chi_lo, double chi_hi, int chi_n, double c2,
                    double h, double tau, const std::string& out_path) {
  std::vector<double> c1s = linspace(c1_lo, c1_hi, c1_n);
  std::vector<double> chis = linspace(chi_lo, chi_hi, chi_n);
  std::vector<BifurcationCell> cells = bifurcation_scan(c1s, chis, c2, h, tau);

  std::ofstream os(out_path, std::ios::trunc);
  if (!os) throw std::runtime_error("bifurcation: cannot open '" + out_path + "'");
  os << "c1,chi,count\n";
  for (const BifurcationCell& c : cells) {
    os << format_double(c.c1) << ',' << format_double(c.chi) << ',' << c.count << '\n';
  }
  std::printf("%zu cells -> %s\n", cells.size(), out_path.c_str());
  for (double c1 : c1s) {
    auto cc = critical_chi(c1);
    if (cc) std::printf("  c1=%-8.4g nontrivial equilibria vanish beyond chi=%.6g\n", c1, *cc);
    else std::printf("  c1=%-8.4g no vanishing gradient (c1 >= 1)\n", c1);
  }
  return 0;
}

int cmd_convergence(const std::string& scheme_name, double dt0, int levels, double t_end) {
  Scheme scheme;
  if (scheme_name == "rk4") scheme = Scheme::Rk4Explicit;
  else if (scheme_name == "imex") scheme = Scheme::ImexEuler;
  else throw std::invalid_argument("scheme must be rk4 or imex");

  if (dt0 <= 0.0) dt0 = scheme == Scheme::Rk4Explicit ? 0.016 : 0.08;
  if (t_end <= 0.0) t_end = scheme == Scheme::Rk4Explicit ? 0.8 : 1.6;
  if (levels < 3) throw std::invalid_argument("convergence: need at least 3 levels");

  // A box large enough that the leading mode grows toward saturation instead
  // of decaying into roundoff, and a spacing coarse enough that the explicit
  // scheme can take steps whose truncation error clears the roundoff floor.
  Grid2D g(64, 64, 16.0, 16.0);
  IcSpec ic;
  ic.kind = IcSpec::Kind::SingleMode;
  ic.amplitude = 0.5;
  ic.kx = 1;
  ic.ky = 1;
  SimState s0 = make_initial(ic, g, 0);

  ChevronParams p;
  p.tau = 1.0;
  p.D1 = 1.0;
  p.D2 = 1.0;
  p.c1 = 0.5;
  p.c2 = 0.5;
  p.h = 0.5;
  p.beta = 0.2;

  std::vector<double> dts;
  for (int i = 0; i < levels; ++i) dts.push_back(dt0 / std::pow(2.0, i));
  std::printf("scheme %s, grid 64x64 on [0,16]^2, t_end %.6g\n", scheme_name.c_str(), t_end);
  for (double dt : dts) std::printf("  dt %.8g\n", dt);
  double order = order_of_convergence(s0, p, scheme, dts, t_end);
  std::printf("mean observed order: %.4f\n", order);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the coupled amplitude / director-angle system"};
  app.require_subcommand(1);
  // --h is a model coefficient below, so help keeps only its long form
  app.set_help_flag("--help", "print help and exit");

  CommonConfigArgs sim_cfg;
  std::string sim_out;
  std::uint64_t sim_seed = 0;
  bool sim_quiet = false;
  CLI::App* sim = app.add_subcommand("simulate", "integrate the PDE system and log energies");
  add_config_options(sim, sim_cfg);
  sim->add_option("--out", sim_out, "output directory (overrides out_dir)");
  CLI::Option* seed_opt = sim->add_option("--seed", sim_seed, "random IC seed (overrides ic_seed)");
  sim->add_flag("--quiet", sim_quiet, "suppress per-observation lines");

  CommonConfigArgs chk_cfg;
  std::string chk_csv;
  CLI::App* chk = app.add_subcommand("energy-check", "audit an energy.csv against the decay envelope");
  add_config_options(chk, chk_cfg);
  chk->add_option("--csv", chk_csv, "energy.csv to audit")->required()->check(CLI::ExistingFile);

  std::string fp_system = "uniform";
  ReducedParams fp_params;
  fp_params.h = 0.5;
  int fp_scan = 20000;
  CLI::App* fpc = app.add_subcommand("fixed-points", "equilibria of the reduced two-variable dynamics");
  fpc->set_help_flag("--help", "print help and exit");
  fpc->add_option("--system", fp_system, "uniform or phase_grad");
  fpc->add_option("--tau", fp_params.tau, "relaxation time");
  fpc->add_option("--c1", fp_params.c1, "director -> phase torque");
  fpc->add_option("--c2", fp_params.c2, "phase -> director torque");
  fpc->add_option("--h", fp_params.h, "restoring rate");
  fpc->add_option("--chi", fp_params.chi, "frozen phase gradient (phase_grad only)");
  fpc->add_option("--scan", fp_scan, "sign-scan resolution");

  std::string po_system = "uniform";
  ReducedParams po_params;
  po_params.h = 0.5;
  double po_tend = 200.0, po_dt = 0.01;
  int po_stride = 20;
  std::string po_out = "portrait.csv";
  CLI::App* po = app.add_subcommand("portrait", "integrate a seed grid and report basins");
  po->set_help_flag("--help", "print help and exit");
  po->add_option("--system", po_system, "uniform or phase_grad");
  po->add_option("--tau", po_params.tau, "relaxation time");
  po->add_option("--c1", po_params.c1, "director -> phase torque");
  po->add_option("--c2", po_params.c2, "phase -> director torque");
  po->add_option("--h", po_params.h, "restoring rate");
  po->add_option("--chi", po_params.chi, "frozen phase gradient");
  po->add_option("--t-end", po_tend, "orbit length");
  po->add_option("--dt", po_dt, "RK4 step");
  po->add_option("--stride", po_stride, "record every n-th step");
  po->add_option("--out", po_out, "orbit CSV path");

  double bf_c1_lo = 0.0, bf_c1_hi = 1.5, bf_chi_lo = 0.0, bf_chi_hi = 2.0;
  int bf_c1_n = 16, bf_chi_n = 21;
  double bf_c2 = 1.0, bf_h = 0.5, bf_tau = 1.0;
  std::string bf_out = "bifurcation.csv";
  CLI::App* bf = app.add_subcommand("bifurcation", "count nontrivial equilibria over a (c1, chi) grid");
  bf->set_help_flag("--help", "print help and exit");
  bf->add_option("--c1-min", bf_c1_lo, "");
  bf->add_option("--c1-max", bf_c1_hi, "");
  bf->add_option("--c1-steps", bf_c1_n, "");
  bf->add_option("--chi-min", bf_chi_lo, "");
  bf->add_option("--chi-max", bf_chi_hi, "");
  bf->add_option("--chi-steps", bf_chi_n, "");
  bf->add_option("--c2", bf_c2, "");
  bf->add_option("--h", bf_h, "");
  bf->add_option("--tau", bf_tau, "");
  bf->add_option("--out", bf_out, "cell CSV path");

  std::string cv_scheme = "rk4";
  double cv_dt0 = 0.0, cv_tend = 0.0;
  int cv_levels = 5;
  CLI::App* cv = app.add_subcommand("convergence", "self-convergence order of a time stepper");
  cv->add_option("--scheme", cv_scheme, "rk4 or imex");
  cv->add_option("--dt0", cv_dt0, "coarsest step (0 = scheme default)");
  cv->add_option("--levels", cv_levels, "number of halvings, last is the reference");
  cv->add_option("--t-end", cv_tend, "integration time (0 = scheme default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_cfg, sim_out, sim_seed, seed_opt->count() > 0, sim_quiet);
    if (chk->parsed()) return cmd_energy_check(chk_cfg, chk_csv);
    if (fpc->parsed()) return cmd_fixed_points(fp_system, fp_params, fp_scan);
    if (po->parsed()) return cmd_portrait(po_system, po_params, po_tend, po_dt, po_stride, po_out);
    if (bf->parsed())
      return cmd_bifurcation(bf_c1_lo, bf_c1_hi, bf_c1_n, bf_chi_lo, bf_chi_hi, bf_chi_n, bf_c2, bf_h,
                             bf_tau, bf_out);
    if (cv->parsed()) return cmd_convergence(cv_scheme, cv_dt0, cv_levels, cv_tend);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
