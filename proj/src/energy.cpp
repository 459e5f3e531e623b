#include "chevron/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chevron/config.hpp"
#include "chevron/reductions.hpp"

namespace chevron {

Regime regime_of(const ChevronParams& p) {
  p.validate();
  if (!(p.h > 0.0)) return Regime::None;
  // When both conditions hold the subcritical functional is the sharper one.
  if (p.c1 < 1.0) return Regime::SubcriticalC1;
  if (p.c2 > 0.0 && p.c1 >= 2.0 * p.c2) return Regime::C1Ge2C2;
  return Regime::None;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::SubcriticalC1: return "subcritical-c1";
    case Regime::C1Ge2C2: return "c1-ge-2c2";
    case Regime::None: return "none";
  }
  return "none";
}

double delta0(const ChevronParams& p) {
  p.validate();
  if (!(p.c1 < 1.0)) throw RegimeError("delta0: defined only for c1 < 1");
  return 2.0 * (1.0 - p.c1) / (2.0 + p.c2);
}

double k0(const ChevronParams& p) {
  p.validate();
  if (!(p.h > 0.0)) throw RegimeError("k0: requires h > 0, otherwise nothing pulls phi down");
  return std::min(1.0 / p.tau, p.h);
}

std::pair<double, double> remark_weights(const ChevronParams& p) {
  p.validate();
  if (!(p.c2 > 0.0) || !(p.c1 >= 2.0 * p.c2)) {
    throw RegimeError("remark_weights: requires c1 >= 2 c2 > 0");
  }
  return {p.c1 * p.tau / 2.0, 2.0 * p.c2};
}

double lyapunov_value(const SimState& s, const ChevronParams& p) {
  s.validate();
  const double a2 = l2_norm_sq(s.A);
  const double f2 = l2_norm_sq(s.phi);
  switch (regime_of(p)) {
    case Regime::SubcriticalC1: return p.tau * a2 + delta0(p) * f2;
    case Regime::C1Ge2C2: {
      auto [wA, wPhi] = remark_weights(p);
      return wA * a2 + wPhi * f2;
    }
    case Regime::None: return p.tau * a2 + f2;
  }
  return p.tau * a2 + f2;
}

double bound_value(const ChevronParams& p, double area, double L0, double t, double t0) {
  if (!(area > 0.0)) throw std::invalid_argument("bound_value: area must be positive");
  if (!(L0 >= 0.0)) throw std::invalid_argument("bound_value: L0 must be nonnegative");
  switch (regime_of(p)) {
    case Regime::SubcriticalC1: {
      const double rate = k0(p);
      return L0 * std::exp(-rate * (t - t0)) + area / rate;
    }
    case Regime::C1Ge2C2: {
      const double rate = std::min(2.0 / p.tau, p.h);
      return L0 * std::exp(-rate * (t - t0)) + p.c1 * area / rate;
    }
    case Regime::None: return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

EnergyRecord record(const SimState& s, const ChevronParams& p, double L0, double t0) {
  s.validate();
  EnergyRecord r;
  r.t = s.t;
  r.normA_sq = l2_norm_sq(s.A);
  r.normPhi_sq = l2_norm_sq(s.phi);
  r.gradA_sq = grad_norm_sq(s.A);
  r.gradPhi_sq = grad_norm_sq(s.phi);
  r.l4A = l4_norm_4(s.A);
  r.lyapunov = lyapunov_value(s, p);
  r.bound = bound_value(p, s.grid().area(), L0, s.t, t0);
  return r;
}

DissipativityReport check_dissipativity(const std::vector<EnergyRecord>& records, const ChevronParams& p) {
  DissipativityReport rep;
  rep.regime = regime_of(p);
  for (const EnergyRecord& r : records) {
    if (!(r.bound > 0.0)) continue;  // infinite or absent bounds never flag
    double ratio = r.lyapunov / r.bound;
    rep.max_excess_ratio = std::max(rep.max_excess_ratio, ratio);
    if (r.lyapunov > r.bound * (1.0 + kDissipativityTol)) {
      rep.violations.push_back({r.t, r.lyapunov, r.bound});
    }
  }
  return rep;
}

DependenceProbe continuous_dependence_probe(const ChevronParams& p, const SimState& initial, double delta,
                                            double t_end, const StepperConfig& cfg, double observe_every) {
  if (regime_of(p) == Regime::None) {
    throw RegimeError("continuous_dependence_probe: parameters carry no decay estimate");
  }
  initial.validate();
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("continuous_dependence_probe: delta must be finite and >= 0");
  }
  if (!(observe_every > 0.0)) throw std::invalid_argument("continuous_dependence_probe: observe_every must be positive");
  if (!(t_end >= initial.t)) throw std::invalid_argument("continuous_dependence_probe: t_end before initial time");

  const Grid2D& g = initial.grid();
  SimState a = initial;
  SimState b = initial;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      double w = delta * bubble(g.x(i), g.y(j), g);
      b.A(i, j) += w;
      b.phi(i, j) += w;
    }
  }

  DependenceProbe probe;
  auto push = [&]() {
    double D = p.tau * l2_norm_sq(sub_fields(a.A, b.A)) + l2_norm_sq(sub_fields(a.phi, b.phi));
    probe.growth.emplace_back(a.t, D);
  };

  Stepper st(g, p, cfg);
  push();
  if (t_end > a.t) {
    long long k = static_cast<long long>(std::floor(a.t / observe_every)) + 1;
    while (static_cast<double>(k) * observe_every <= a.t) ++k;
    for (;;) {
      double target = std::min(static_cast<double>(k) * observe_every, t_end);
      while (a.t < target) {
        double dt = std::min(cfg.dt, target - a.t);
        b.t = a.t;
        b = st.step(b, dt);
        a = st.step(a, dt);
      }
      a.t = target;
      b.t = target;
      push();
      if (target == t_end) break;
      ++k;
    }
  }

  double d0 = probe.growth.front().second;
  double dmax = 0.0;
  for (auto& [t, d] : probe.growth) dmax = std::max(dmax, d);
  probe.amplification = d0 > 0.0 ? dmax / d0 : 0.0;
  return probe;
}

}  // namespace chevron
