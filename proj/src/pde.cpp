#include "chevron/pde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "chevron/reductions.hpp"

namespace chevron {

namespace {

constexpr double kAmplitudeLimit = 1e3;

void check_state(const SimState& s, const char* where) {
  if (!all_finite(s.A) || !all_finite(s.phi)) {
    throw BlowUpError(s.t, max_abs(s.A),
                      std::string(where) + ": non-finite field at t = " + std::to_string(s.t));
  }
  double m = max_abs(s.A);
  if (m > kAmplitudeLimit) {
    throw BlowUpError(s.t, m,
                      std::string(where) + ": |A| reached " + std::to_string(m) + " at t = " +
                          std::to_string(s.t) + ", integration is diverging");
  }
}

[[noreturn]] void report_bad_node(const RhsPair& r) {
  const Grid2D& g = r.dA.grid;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      std::size_t q = g.idx(i, j);
      auto bad_c = [](std::complex<double> z) { return !std::isfinite(z.real()) || !std::isfinite(z.imag()); };
      if (bad_c(r.dA.v[q])) {
        throw std::runtime_error("rhs: non-finite dA at node (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
      }
      if (!std::isfinite(r.dphi.v[q])) {
        throw std::runtime_error("rhs: non-finite dphi at node (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
      }
    }
  }
  throw std::runtime_error("rhs: non-finite output");
}

}  // namespace

RhsPair rhs(const SimState& s, const ChevronParams& p) {
  s.validate();
  p.validate();
  ComplexField lapA = laplacian(s.A);
  ComplexField dyA = d_dy(s.A);
  RealField dyphi = d_dy(s.phi);
  RealField lphi = anisotropic_laplacian(s.phi, p.D1, p.D2);

  RhsPair out{ComplexField(s.A.grid), RealField(s.A.grid)};
  const std::int64_t n = static_cast<std::int64_t>(s.A.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t q = 0; q < n; ++q) {
    const std::complex<double> a = s.A.v[q];
    const double ph = s.phi.v[q];
    out.dA.v[q] = (a + lapA.v[q] - (ph * ph + std::norm(a)) * a +
                   std::complex<double>(0.0, 1.0) * (p.beta * dyphi.v[q] * a - 2.0 * p.c1 * ph * dyA.v[q])) /
                  p.tau;
    out.dphi.v[q] = lphi.v[q] - p.h * ph + ph * std::norm(a) - p.c2 * std::imag(std::conj(a) * dyA.v[q]);
  }
  if (!all_finite(out.dA) || !all_finite(out.dphi)) report_bad_node(out);
  return out;
}

double stable_dt(const ChevronParams& p, const Grid2D& g, double state_bound, double safety) {
  p.validate();
  if (!(state_bound >= 0.0) || !std::isfinite(state_bound)) {
    throw std::invalid_argument("stable_dt: state_bound must be finite and >= 0");
  }
  if (!(safety > 0.0) || !(safety <= 1.0)) {
    throw std::invalid_argument("stable_dt: safety must lie in (0, 1]");
  }
  const double kx = 1.0 / (g.dx() * g.dx());
  const double ky = 1.0 / (g.dy() * g.dy());
  const double M = state_bound;
  const double M2 = M * M;

  // Forward-Euler diffusion limits for the two equations.
  const double dt_A = p.tau / (2.0 * (kx + ky));
  const double dt_phi = 1.0 / (2.0 * (p.D1 * kx + p.D2 * ky));

  // Pointwise reaction rates with |A|, |phi| <= M, plus an advective bound
  // for the first-order y-coupling terms.
  const double rate = (1.0 + 4.0 * M2) / p.tau + p.h + M2;
  const double speed = (2.0 * std::abs(p.c1) * M + std::abs(p.beta) * M) / p.tau + std::abs(p.c2) * M2;
  const double inf = std::numeric_limits<double>::infinity();
  const double dt_rx = rate > 0.0 ? 1.0 / rate : inf;
  const double dt_adv = speed > 0.0 ? g.dy() / speed : inf;

  return safety * std::min(std::min(dt_A, dt_phi), std::min(dt_rx, dt_adv));
}

Stepper::Stepper(const Grid2D& grid, const ChevronParams& p, const StepperConfig& cfg)
    : grid_(grid), p_(p), cfg_(cfg) {
  p_.validate();
  if (!(cfg_.dt > 0.0) || !std::isfinite(cfg_.dt)) {
    throw std::invalid_argument("Stepper: dt must be positive; pick one or use stable_dt");
  }
  if (cfg_.scheme == Scheme::ImexEuler) {
    solveA_ = std::make_unique<SineSolver>(grid_, 1.0, 1.0);
    solvePhi_ = std::make_unique<SineSolver>(grid_, p_.D1, p_.D2);
  }
}

SimState Stepper::step(const SimState& s, double dt) const {
  if (!(s.grid() == grid_)) throw std::invalid_argument("Stepper::step: state grid mismatch");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("Stepper::step: dt must be positive");
  check_state(s, "Stepper::step");
  SimState out = (cfg_.scheme == Scheme::Rk4Explicit) ? step_rk4(s, dt) : step_imex(s, dt);
  check_state(out, "Stepper::step");
  return out;
}

SimState Stepper::step_rk4(const SimState& s, double dt) const {
  auto staged = [&](const RhsPair& k, double c) {
    SimState w(s.grid());
    w.t = s.t;
    const std::int64_t n = static_cast<std::int64_t>(s.A.size());
#pragma omp parallel for schedule(static) if (n > 4096)
    for (std::int64_t q = 0; q < n; ++q) {
      w.A.v[q] = s.A.v[q] + (c * dt) * k.dA.v[q];
      w.phi.v[q] = s.phi.v[q] + (c * dt) * k.dphi.v[q];
    }
    return w;
  };

  RhsPair k1 = rhs(s, p_);
  RhsPair k2 = rhs(staged(k1, 0.5), p_);
  RhsPair k3 = rhs(staged(k2, 0.5), p_);
  RhsPair k4 = rhs(staged(k3, 1.0), p_);

  SimState out(s.grid());
  out.t = s.t + dt;
  const double w = dt / 6.0;
  const std::int64_t n = static_cast<std::int64_t>(s.A.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t q = 0; q < n; ++q) {
    out.A.v[q] = s.A.v[q] + w * (k1.dA.v[q] + 2.0 * k2.dA.v[q] + 2.0 * k3.dA.v[q] + k4.dA.v[q]);
    out.phi.v[q] =
        s.phi.v[q] + w * (k1.dphi.v[q] + 2.0 * k2.dphi.v[q] + 2.0 * k3.dphi.v[q] + k4.dphi.v[q]);
  }
  return out;
}

SimState Stepper::step_imex(const SimState& s, double dt) const {
  // Diffusion is advanced implicitly (for phi together with the -h phi
  // drain), everything else explicitly from the time-t fields:
  //   (tau/dt - lap) A'            = (tau/dt) A + N_A
  //   (1/dt + h - D1 dxx - D2 dyy) phi' = phi/dt + N_phi
  ComplexField dyA = d_dy(s.A);
  RealField dyphi = d_dy(s.phi);

  ComplexField rhsA(s.grid());
  RealField rhsPhi(s.grid());
  const double sigA = p_.tau / dt;
  const double sigPhi = 1.0 / dt + p_.h;
  const std::int64_t n = static_cast<std::int64_t>(s.A.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t q = 0; q < n; ++q) {
    const std::complex<double> a = s.A.v[q];
    const double ph = s.phi.v[q];
    rhsA.v[q] = sigA * a + a - (ph * ph + std::norm(a)) * a +
                std::complex<double>(0.0, 1.0) * (p_.beta * dyphi.v[q] * a - 2.0 * p_.c1 * ph * dyA.v[q]);
    rhsPhi.v[q] = ph / dt + ph * std::norm(a) - p_.c2 * std::imag(std::conj(a) * dyA.v[q]);
  }

  SimState out(s.grid());
  out.t = s.t + dt;
  // The A equation reads tau dA/dt = lap A + ..., so dividing by tau gives
  // sigma = tau/dt against a unit-diffusivity Helmholtz solve.
  out.A = solveA_->solve(sigA, rhsA);
  out.phi = solvePhi_->solve(sigPhi, rhsPhi);
  return out;
}

SimState step(const SimState& s, const ChevronParams& p, const StepperConfig& cfg) {
  Stepper st(s.grid(), p, cfg);
  return st.step(s);
}

SimState run(const SimState& initial, const ChevronParams& p, const StepperConfig& cfg, double t_end,
             double observe_every, const std::vector<Observer>& observers) {
  initial.validate();
  if (!(observe_every > 0.0) || !std::isfinite(observe_every)) {
    throw std::invalid_argument("run: observe_every must be positive");
  }
  if (!(t_end >= initial.t) || !std::isfinite(t_end)) {
    throw std::invalid_argument("run: t_end must be finite and >= initial time");
  }
  Stepper st(initial.grid(), p, cfg);

  SimState s = initial;
  for (const auto& ob : observers) ob(s);
  if (t_end == s.t) return s;

  // Observation times are absolute multiples k * observe_every, computed by a
  // single multiplication each, so a run resumed from a checkpoint hits the
  // same times (and therefore the same step sequence) bit for bit.
  long long k = static_cast<long long>(std::floor(s.t / observe_every)) + 1;
  while (static_cast<double>(k) * observe_every <= s.t) ++k;

  for (;;) {
    double target = std::min(static_cast<double>(k) * observe_every, t_end);
    while (s.t < target) {
      double dt = std::min(cfg.dt, target - s.t);
      s = st.step(s, dt);
    }
    s.t = target;
    for (const auto& ob : observers) ob(s);
    if (target == t_end) break;
    ++k;
  }
  return s;
}

double order_of_convergence(const SimState& initial, const ChevronParams& p, Scheme scheme,
                            const std::vector<double>& dts, double t_end) {
  initial.validate();
  if (dts.size() < 3) throw std::invalid_argument("order_of_convergence: need at least three step sizes");
  for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
    if (!(dts[i] > 0.0) || std::abs(dts[i] / dts[i + 1] - 2.0) > 1e-9) {
      throw std::invalid_argument("order_of_convergence: step sizes must halve at each entry");
    }
  }
  const double span = t_end - initial.t;
  if (!(span > 0.0)) throw std::invalid_argument("order_of_convergence: t_end must exceed initial time");

  std::vector<SimState> finals;
  finals.reserve(dts.size());
  for (double dt : dts) {
    long long nsteps = std::llround(span / dt);
    if (nsteps < 1 || std::abs(static_cast<double>(nsteps) * dt - span) > 1e-9 * span) {
      throw std::invalid_argument("order_of_convergence: t_end - t0 must be a multiple of every dt");
    }
    StepperConfig cfg;
    cfg.scheme = scheme;
    cfg.dt = dt;
    Stepper st(initial.grid(), p, cfg);
    SimState s = initial;
    for (long long n = 0; n < nsteps; ++n) s = st.step(s, dt);
    finals.push_back(std::move(s));
  }

  const SimState& ref = finals.back();
  std::vector<double> errs;
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
    double e2 = l2_norm_sq(sub_fields(finals[i].A, ref.A)) + l2_norm_sq(sub_fields(finals[i].phi, ref.phi));
    errs.push_back(std::sqrt(e2));
  }
  double acc = 0.0;
  int cnt = 0;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    if (errs[i + 1] == 0.0) throw std::runtime_error("order_of_convergence: zero error, reference too close");
    acc += std::log2(errs[i] / errs[i + 1]);
    ++cnt;
  }
  return acc / cnt;
}

}  // namespace chevron
