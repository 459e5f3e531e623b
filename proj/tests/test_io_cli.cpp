#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chevron/config.hpp"
#include "chevron/csv.hpp"
#include "chevron/energy.hpp"
#include "chevron/snapshot.hpp"
#include "doctest.h"

using namespace chevron;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* tag) {
  fs::path d = fs::temp_directory_path() /
               (std::string("chev-") + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli.log";
  const std::string cmd =
      std::string(CHEVRON_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int st = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = slurp(log);
  return r;
}

SimState sample_state(const Grid2D& g, std::uint64_t seed) {
  IcSpec ic;
  ic.kind = IcSpec::Kind::Random;
  ic.amplitude = 0.9;
  SimState s = make_initial(ic, g, seed);
  s.t = 2.5;
  return s;
}

}  // namespace

TEST_CASE("snapshot files round trip bitwise") {
  const fs::path dir = fresh_dir("snap");
  Grid2D g(14, 9, 1.2, 0.8);
  SimState s = sample_state(g, 77);
  const std::string path = (dir / "state.chev").string();
  write_snapshot(path, s);
  SimState r = read_snapshot(path);
  CHECK(r.grid() == g);
  CHECK(r.t == s.t);
  CHECK(std::memcmp(r.A.data(), s.A.data(), g.size() * sizeof(std::complex<double>)) == 0);
  CHECK(std::memcmp(r.phi.data(), s.phi.data(), g.size() * sizeof(double)) == 0);
  fs::remove_all(dir);
}

TEST_CASE("snapshot reader rejects damaged files") {
  const fs::path dir = fresh_dir("snapbad");
  Grid2D g(8, 8, 1.0, 1.0);
  SimState s = sample_state(g, 5);
  const fs::path path = dir / "state.chev";
  write_snapshot(path.string(), s);
  const std::string good = slurp(path);

  SUBCASE("wrong magic") {
    std::string bad = good;
    bad[0] = 'X';
    spill(path, bad);
    try {
      read_snapshot(path.string());
      FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("magic") != std::string::npos);
    }
  }

  SUBCASE("truncated payload") {
    spill(path, good.substr(0, good.size() - 9));
    CHECK_THROWS_AS(read_snapshot(path.string()), std::runtime_error);
  }

  SUBCASE("trailing garbage") {
    spill(path, good + "z");
    try {
      read_snapshot(path.string());
      FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("trailing") != std::string::npos);
    }
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_snapshot((dir / "nope.chev").string()), std::runtime_error);
  }
  fs::remove_all(dir);
}

TEST_CASE("energy csv round trips every double losslessly") {
  const fs::path dir = fresh_dir("csv");
  std::vector<EnergyRecord> recs;
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    EnergyRecord r;
    r.t = 0.1 * k;
    r.normA_sq = std::exp(20.0 * u(rng));
    r.normPhi_sq = u(rng);
    r.gradA_sq = u(rng) * 1e-17;
    r.gradPhi_sq = u(rng);
    r.l4A = u(rng);
    r.lyapunov = u(rng);
    r.bound = u(rng);
    recs.push_back(r);
  }
  const std::string path = (dir / "energy.csv").string();
  write_energy_csv(path, recs);
  std::vector<EnergyRecord> back = read_energy_csv(path);
  REQUIRE(back.size() == recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    CHECK(back[k].t == recs[k].t);
    CHECK(back[k].normA_sq == recs[k].normA_sq);
    CHECK(back[k].gradA_sq == recs[k].gradA_sq);
    CHECK(back[k].lyapunov == recs[k].lyapunov);
    CHECK(back[k].bound == recs[k].bound);
  }
  fs::remove_all(dir);
}

TEST_CASE("energy csv reader names the offending line") {
  const fs::path dir = fresh_dir("csvbad");
  const fs::path path = dir / "energy.csv";
  const std::string header =
      "t,normA_sq,normPhi_sq,gradA_sq,gradPhi_sq,l4A,lyapunov,bound\n";

  SUBCASE("bad header") {
    spill(path, "time,energy\n1,2\n");
    CHECK_THROWS_AS(read_energy_csv(path.string()), std::runtime_error);
  }

  SUBCASE("too few columns on line 3") {
    spill(path, header + "0,1,2,3,4,5,6,7\n0.1,1,2\n");
    try {
      read_energy_csv(path.string());
      FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
  }

  SUBCASE("non-numeric field") {
    spill(path, header + "0,1,2,three,4,5,6,7\n");
    try {
      read_energy_csv(path.string());
      FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("column 4") != std::string::npos);
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("config files parse, emit, and re-parse to the same run") {
  const fs::path dir = fresh_dir("cfg");
  const fs::path path = dir / "run.cfg";
  spill(path,
        "# sample run\n"
        "tau = 2.0\n"
        "c1 = 0.5\n"
        "\n"
        "nx = 24\n"
        "ny = 18\n"
        "scheme = rk4\n"
        "ic = single_mode\n"
        "ic_kx = 2\n"
        "t_end = 1.5\n");
  RunConfig cfg = parse_config_file(path.string());
  CHECK(cfg.params.tau == 2.0);
  CHECK(cfg.params.c1 == 0.5);
  CHECK(cfg.nx == 24);
  CHECK(cfg.ny == 18);
  CHECK(cfg.scheme == Scheme::Rk4Explicit);
  CHECK(cfg.ic.kind == IcSpec::Kind::SingleMode);
  CHECK(cfg.ic.kx == 2);

  const fs::path again = dir / "emitted.cfg";
  spill(again, emit_config(cfg));
  RunConfig cfg2 = parse_config_file(again.string());
  CHECK(emit_config(cfg2) == emit_config(cfg));
  fs::remove_all(dir);
}

TEST_CASE("config parser reports unknown keys and bad values with context") {
  const fs::path dir = fresh_dir("cfgbad");
  const fs::path path = dir / "run.cfg";

  SUBCASE("unknown key") {
    spill(path, "tau = 1\nwavelength = 3\n");
    try {
      parse_config_file(path.string());
      FAIL("expected a throw");
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      CHECK(what.find("wavelength") != std::string::npos);
      CHECK(what.find(":2") != std::string::npos);
    }
  }

  SUBCASE("bad number") {
    spill(path, "tau = fast\n");
    CHECK_THROWS_AS(parse_config_file(path.string()), ConfigError);
  }

  SUBCASE("override assignments validate too") {
    RunConfig cfg;
    CHECK_THROWS_AS(apply_assignment(cfg, "scheme=leapfrog"), ConfigError);
    CHECK_THROWS_AS(apply_assignment(cfg, "no_equals_sign"), ConfigError);
    apply_assignment(cfg, "h=0.25");
    CHECK(cfg.params.h == 0.25);
  }
  fs::remove_all(dir);
}

TEST_CASE("simulate produces a coherent run directory") {
  const fs::path dir = fresh_dir("sim");
  const fs::path out = dir / "out";
  const std::string common =
      "--set nx=16 --set ny=16 --set dt=0.01 --set t_end=0.5 --set observe_every=0.1 "
      "--set ic=random --set ic_amplitude=0.8 --set h=0.5 --set c1=0.5 --set c2=1 "
      "--set D2=0.5";
  CliResult r = run_cli("simulate " + common + " --seed 42 --out " + out.string(), dir);
  CHECK(r.code == 0);
  CHECK(fs::exists(out / "energy.csv"));
  CHECK(fs::exists(out / "final.chev"));
  CHECK(fs::exists(out / "run_meta.txt"));

  std::vector<EnergyRecord> recs = read_energy_csv((out / "energy.csv").string());
  CHECK(recs.size() == 6);  // t = 0, 0.1, ..., 0.5
  CHECK(recs.front().t == 0.0);
  CHECK(recs.back().t == 0.5);

  // the metadata block is itself a loadable config that reproduces the run
  RunConfig meta = parse_config_file((out / "run_meta.txt").string());
  CHECK(meta.nx == 16);
  CHECK(meta.ic.seed == 42);
  CHECK(meta.params.c2 == 1.0);

  SimState fin = read_snapshot((out / "final.chev").string());
  CHECK(fin.t == 0.5);
  fs::remove_all(dir);
}

TEST_CASE("same seed reproduces the energy log byte for byte") {
  const fs::path dir = fresh_dir("det");
  const std::string common =
      "--set nx=12 --set ny=12 --set dt=0.01 --set t_end=0.3 --set observe_every=0.1 "
      "--set ic=random --set h=0.4 --quiet";
  CliResult a = run_cli("simulate " + common + " --seed 9 --out " + (dir / "a").string(), dir);
  CliResult b = run_cli("simulate " + common + " --seed 9 --out " + (dir / "b").string(), dir);
  CliResult c = run_cli("simulate " + common + " --seed 10 --out " + (dir / "c").string(), dir);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  REQUIRE(c.code == 0);
  CHECK(slurp(dir / "a" / "energy.csv") == slurp(dir / "b" / "energy.csv"));
  CHECK(slurp(dir / "a" / "energy.csv") != slurp(dir / "c" / "energy.csv"));
  CHECK(slurp(dir / "a" / "final.chev") == slurp(dir / "b" / "final.chev"));
  fs::remove_all(dir);
}

TEST_CASE("a run resumed from its snapshot finishes with identical state") {
  const fs::path dir = fresh_dir("resume");
  const std::string shared =
      "--set nx=14 --set ny=14 --set dt=0.003 --set observe_every=0.25 "
      "--set h=0.5 --set c1=0.5 --set beta=0.3 ";
  CliResult full = run_cli("simulate " + shared +
                               "--set t_end=1 --set snapshot_every=0.5 --set ic=random "
                               "--seed 4 --out " +
                               (dir / "full").string(),
                           dir);
  REQUIRE(full.code == 0);
  const fs::path mid = dir / "full" / "snapshot_t0.500000.chev";
  REQUIRE(fs::exists(mid));

  CliResult resumed = run_cli("simulate " + shared + "--set t_end=1 --set ic=file --set ic_path=" +
                                  mid.string() + " --out " + (dir / "resumed").string(),
                              dir);
  REQUIRE(resumed.code == 0);
  CHECK(slurp(dir / "full" / "final.chev") == slurp(dir / "resumed" / "final.chev"));
  fs::remove_all(dir);
}

TEST_CASE("energy-check accepts an honest log and rejects a doctored one") {
  const fs::path dir = fresh_dir("audit");
  const std::string common =
      "--set nx=16 --set ny=16 --set dt=0.01 --set t_end=1 --set observe_every=0.1 "
      "--set ic=random --set h=0.5 --set c1=0.5 --set c2=1 --set D2=0.5 --quiet";
  CliResult sim = run_cli("simulate " + common + " --seed 3 --out " + (dir / "run").string(), dir);
  REQUIRE(sim.code == 0);
  const std::string csv = (dir / "run" / "energy.csv").string();
  const std::string cfg_args =
      " --set tau=1 --set h=0.5 --set c1=0.5 --set c2=1 --set D2=0.5 --set nx=16 --set ny=16";

  CliResult ok = run_cli("energy-check --csv " + csv + cfg_args, dir);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  std::vector<EnergyRecord> recs = read_energy_csv(csv);
  recs[4].lyapunov = recs[4].bound * 2.0;
  const std::string forged = (dir / "forged.csv").string();
  write_energy_csv(forged, recs);
  CliResult bad = run_cli("energy-check --csv " + forged + cfg_args, dir);
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli exit codes separate usage errors from model errors") {
  const fs::path dir = fresh_dir("exit");
  CHECK(run_cli("--help", dir).code == 0);
  CHECK(run_cli("fixed-points --help", dir).code == 0);
  CHECK(run_cli("no-such-command", dir).code == 2);
  CHECK(run_cli("", dir).code == 2);  // a subcommand is required
  CHECK(run_cli("simulate --set volume=11", dir).code == 1);      // unknown config key
  CHECK(run_cli("fixed-points --h 0", dir).code == 1);            // h = 0 has no catalog
  CHECK(run_cli("simulate --config /nonexistent.cfg", dir).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("fixed-points prints the classified catalog") {
  const fs::path dir = fresh_dir("fp");
  CliResult r = run_cli("fixed-points --system uniform --h 0.25", dir);
  CHECK(r.code == 0);
  CHECK(r.out.find("saddle") != std::string::npos);
  CHECK(r.out.find("spiral-sink") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("bifurcation scan writes the cell grid") {
  const fs::path dir = fresh_dir("bif");
  const fs::path csv = dir / "cells.csv";
  CliResult r = run_cli(
      "bifurcation --c1-min 0.5 --c1-max 0.7 --c1-steps 2 --chi-min 0.8 --chi-max 1.2 "
      "--chi-steps 3 --out " +
          csv.string(),
      dir);
  CHECK(r.code == 0);
  REQUIRE(fs::exists(csv));
  const std::string text = slurp(csv);
  CHECK(text.find("c1,chi,count") != std::string::npos);
  // 2 x 3 cells plus the header line
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
  fs::remove_all(dir);
}
