#include "chevron/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chevron {

namespace {

void check_params(const ReducedParams& p) {
  auto bad = [](double v) { return !std::isfinite(v); };
  if (bad(p.tau) || bad(p.c1) || bad(p.c2) || bad(p.h) || bad(p.chi)) {
    throw std::invalid_argument("ReducedParams: non-finite value");
  }
  if (!(p.tau > 0.0)) throw std::invalid_argument("ReducedParams: tau must be positive");
  if (p.h < 0.0) throw std::invalid_argument("ReducedParams: h must be nonnegative");
}

// Radius^2 of the rho-nullcline circle in the frozen-gradient system.
double r_sq(const ReducedParams& p) { return 1.0 + (p.c1 * p.c1 - 1.0) * p.chi * p.chi; }

// Resultant in u = rho^2 whose positive roots (u != h) are the nontrivial
// equilibria of the frozen-gradient system:
//   P(u) = u (u - h)^2 + chi^2 (c2 u - c1 (u - h))^2 - R^2 (u - h)^2.
double resultant(double u, const ReducedParams& p, double R2) {
  const double um = u - p.h;
  const double w = p.chi * (p.c2 * u - p.c1 * um);
  return u * um * um + w * w - R2 * um * um;
}

double resultant_deriv(double u, const ReducedParams& p, double R2) {
  const double um = u - p.h;
  const double w = p.chi * (p.c2 * u - p.c1 * um);
  return um * um + 2.0 * u * um + 2.0 * w * p.chi * (p.c2 - p.c1) - 2.0 * R2 * um;
}

// A couple of Newton sweeps on the 2d equilibrium system
//   G1 = R^2 - rho^2 - (phi - c1 chi)^2,   G2 = -h phi + rho^2 (phi - c2 chi)
// to polish a root handed over by the scan.
bool polish2d(const ReducedParams& p, double R2, double& rho, double& phi) {
  double r = rho, f = phi;
  for (int it = 0; it < 60; ++it) {
    const double g1 = R2 - r * r - (f - p.c1 * p.chi) * (f - p.c1 * p.chi);
    const double g2 = -p.h * f + r * r * (f - p.c2 * p.chi);
    const double j11 = -2.0 * r;
    const double j12 = -2.0 * (f - p.c1 * p.chi);
    const double j21 = 2.0 * r * (f - p.c2 * p.chi);
    const double j22 = r * r - p.h;
    const double det = j11 * j22 - j12 * j21;
    if (!std::isfinite(det) || std::abs(det) < 1e-14) break;
    const double dr = (g1 * j22 - g2 * j12) / det;
    const double df = (g2 * j11 - g1 * j21) / det;
    r -= dr;
    f -= df;
    if (!std::isfinite(r) || !std::isfinite(f)) return false;
    if (std::abs(dr) + std::abs(df) < 1e-15 * (1.0 + std::abs(r) + std::abs(f))) break;
  }
  if (!(r > 0.0)) return false;
  const double g1 = R2 - r * r - (f - p.c1 * p.chi) * (f - p.c1 * p.chi);
  const double g2 = -p.h * f + r * r * (f - p.c2 * p.chi);
  if (std::abs(g1) + std::abs(g2) > 1e-10 * (1.0 + R2 + p.h)) return false;
  rho = r;
  phi = f;
  return true;
}

struct Jac {
  double j11, j12, j21, j22;
};

Jac jacobian(ReducedSystem sys, const ReducedParams& p, double rho, double phi) {
  if (sys == ReducedSystem::Uniform) {
    return {(1.0 - phi * phi - 3.0 * rho * rho) / p.tau, -2.0 * rho * phi / p.tau, 2.0 * rho * phi,
            rho * rho - p.h};
  }
  const double g1 = r_sq(p) - rho * rho - (phi - p.c1 * p.chi) * (phi - p.c1 * p.chi);
  return {(g1 - 2.0 * rho * rho) / p.tau, -2.0 * rho * (phi - p.c1 * p.chi) / p.tau,
          2.0 * rho * (phi - p.c2 * p.chi), rho * rho - p.h};
}

}  // namespace

std::pair<double, double> rhs_uniform(double rho, double phi, const ReducedParams& p) {
  return {rho * (1.0 - phi * phi - rho * rho) / p.tau, phi * (rho * rho - p.h)};
}

std::pair<double, double> rhs_phase_grad(double rho, double phi, const ReducedParams& p) {
  const double d = phi - p.c1 * p.chi;
  const double g1 = (1.0 - rho * rho) - d * d - (1.0 - p.c1 * p.c1) * p.chi * p.chi;
  return {rho * g1 / p.tau, -p.h * phi + rho * rho * (phi - p.c2 * p.chi)};
}

std::pair<double, double> rhs_reduced(ReducedSystem sys, double rho, double phi, const ReducedParams& p) {
  return sys == ReducedSystem::Uniform ? rhs_uniform(rho, phi, p) : rhs_phase_grad(rho, phi, p);
}

const char* point_kind_name(PointKind k) {
  switch (k) {
    case PointKind::Saddle: return "saddle";
    case PointKind::SpiralSink: return "spiral-sink";
    case PointKind::SpiralSource: return "spiral-source";
    case PointKind::NodeSink: return "node-sink";
    case PointKind::NodeSource: return "node-source";
    case PointKind::CenterMarginal: return "center-marginal";
    case PointKind::Degenerate: return "degenerate";
  }
  return "degenerate";
}

Orbit integrate(ReducedSystem sys, const ReducedParams& p, double rho0, double phi0, double t_end, double dt,
                int record_stride) {
  check_params(p);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("integrate: t_end must be positive");
  if (record_stride < 1) throw std::invalid_argument("integrate: record_stride must be >= 1");
  if (!std::isfinite(rho0) || !std::isfinite(phi0)) throw std::invalid_argument("integrate: non-finite seed");

  const long long n = std::max<long long>(1, static_cast<long long>(std::ceil(t_end / dt - 1e-12)));
  double t = 0.0, rho = rho0, phi = phi0;
  Orbit orbit;
  orbit.samples.push_back({t, rho, phi});

  for (long long s = 1; s <= n; ++s) {
    const double sdt = std::min(dt, t_end - t);
    auto [k1r, k1f] = rhs_reduced(sys, rho, phi, p);
    auto [k2r, k2f] = rhs_reduced(sys, rho + 0.5 * sdt * k1r, phi + 0.5 * sdt * k1f, p);
    auto [k3r, k3f] = rhs_reduced(sys, rho + 0.5 * sdt * k2r, phi + 0.5 * sdt * k2f, p);
    auto [k4r, k4f] = rhs_reduced(sys, rho + sdt * k3r, phi + sdt * k3f, p);
    rho += sdt / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
    phi += sdt / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
    t = (s == n) ? t_end : t + sdt;
    if (!std::isfinite(rho) || !std::isfinite(phi) || std::abs(rho) + std::abs(phi) > 1e6) {
      throw std::runtime_error("integrate: reduced orbit diverged at t = " + std::to_string(t));
    }
    if (s % record_stride == 0 || s == n) orbit.samples.push_back({t, rho, phi});
  }
  return orbit;
}

FixedPoint classify(ReducedSystem sys, const ReducedParams& p, double rho, double phi) {
  check_params(p);
  auto [f1, f2] = rhs_reduced(sys, rho, phi, p);
  if (std::abs(f1) + std::abs(f2) > 1e-9 * (1.0 + std::abs(rho) + std::abs(phi))) {
    throw std::invalid_argument("classify: (" + std::to_string(rho) + ", " + std::to_string(phi) +
                                ") is not an equilibrium, residual " + std::to_string(std::abs(f1) + std::abs(f2)));
  }
  const Jac J = jacobian(sys, p, rho, phi);
  const double tr = J.j11 + J.j22;
  const double det = J.j11 * J.j22 - J.j12 * J.j21;
  const double disc = tr * tr - 4.0 * det;

  FixedPoint fp;
  fp.rho = rho;
  fp.phi = phi;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    fp.lambda1 = {(tr + s) / 2.0, 0.0};
    fp.lambda2 = {(tr - s) / 2.0, 0.0};
  } else {
    const double w = std::sqrt(-disc) / 2.0;
    fp.lambda1 = {tr / 2.0, w};
    fp.lambda2 = {tr / 2.0, -w};
  }

  const double lmax = std::max(std::abs(fp.lambda1), std::abs(fp.lambda2));
  const double ztol = 1e-9 * (1.0 + lmax);
  const bool complex_pair = disc < 0.0;
  const double re1 = fp.lambda1.real(), re2 = fp.lambda2.real();

  if (complex_pair) {
    if (std::abs(re1) <= ztol) fp.kind = PointKind::CenterMarginal;
    else fp.kind = re1 < 0.0 ? PointKind::SpiralSink : PointKind::SpiralSource;
  } else if (std::abs(re1) <= ztol || std::abs(re2) <= ztol) {
    fp.kind = PointKind::Degenerate;
  } else if (re1 > 0.0 && re2 < 0.0) {
    fp.kind = PointKind::Saddle;
  } else if (re1 < 0.0) {
    fp.kind = PointKind::NodeSink;
  } else {
    fp.kind = PointKind::NodeSource;
  }
  return fp;
}

std::vector<FixedPoint> fixed_points(ReducedSystem sys, const ReducedParams& p, int scan_resolution) {
  check_params(p);
  if (!(p.h > 0.0)) {
    throw std::domain_error("fixed_points: h = 0 leaves a continuum of equilibria on the rho = 0 axis");
  }
  if (scan_resolution < 16) throw std::invalid_argument("fixed_points: scan_resolution too small");

  std::vector<FixedPoint> pts;
  if (sys == ReducedSystem::Uniform) {
    pts.push_back(classify(sys, p, 0.0, 0.0));
    pts.push_back(classify(sys, p, 1.0, 0.0));
    if (p.h < 1.0) {
      const double r = std::sqrt(p.h);
      const double f = std::sqrt(1.0 - p.h);
      pts.push_back(classify(sys, p, r, -f));
      pts.push_back(classify(sys, p, r, f));
    }
  } else {
    pts.push_back(classify(sys, p, 0.0, 0.0));
    const double R2 = r_sq(p);
    if (R2 > 0.0) {
      std::vector<std::pair<double, double>> cand;  // (rho, phi) before polish

      // Equilibria with rho^2 = h exist only when the c2 chi torque vanishes.
      if (p.c2 * p.chi == 0.0) {
        const double disc = R2 - p.h;
        if (std::abs(disc) <= 1e-12) {
          cand.emplace_back(std::sqrt(p.h), p.c1 * p.chi);
        } else if (disc > 0.0) {
          const double s = std::sqrt(disc);
          cand.emplace_back(std::sqrt(p.h), p.c1 * p.chi - s);
          cand.emplace_back(std::sqrt(p.h), p.c1 * p.chi + s);
        }
      }

      // Sign scan of the resultant over u in [0, R^2], bisection on each
      // bracket, plus a Newton attempt at near-zero local minima so tangent
      // (double) roots are not missed.
      const int nscan = scan_resolution;
      std::vector<double> pv(nscan + 1);
      double pscale = 0.0;
      for (int i = 0; i <= nscan; ++i) {
        const double u = R2 * static_cast<double>(i) / nscan;
        pv[i] = resultant(u, p, R2);
        pscale = std::max(pscale, std::abs(pv[i]));
      }
      if (pscale == 0.0) pscale = 1.0;

      std::vector<double> roots;
      auto add_root = [&](double u) {
        if (!(u > 1e-12)) return;                 // u = 0 is the trivial point
        if (std::abs(u - p.h) <= 1e-9) return;    // handled by the rho^2 = h branch
        for (double r : roots) {
          if (std::abs(r - u) <= 1e-9) return;
        }
        roots.push_back(u);
      };

      for (int i = 0; i < nscan; ++i) {
        const double ua = R2 * static_cast<double>(i) / nscan;
        const double ub = R2 * static_cast<double>(i + 1) / nscan;
        if (pv[i] == 0.0) {
          add_root(ua);
          continue;
        }
        if (pv[i] * pv[i + 1] < 0.0) {
          double lo = ua, hi = ub, flo = pv[i];
          for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = resultant(mid, p, R2);
            if (fm == 0.0) { lo = hi = mid; break; }
            if (flo * fm < 0.0) hi = mid;
            else { lo = mid; flo = fm; }
          }
          add_root(0.5 * (lo + hi));
        }
      }
      if (pv[nscan] == 0.0) add_root(R2);

      for (int i = 1; i < nscan; ++i) {
        const bool local_min = std::abs(pv[i]) <= std::abs(pv[i - 1]) && std::abs(pv[i]) <= std::abs(pv[i + 1]);
        const bool no_cross = pv[i - 1] * pv[i] > 0.0 && pv[i] * pv[i + 1] > 0.0;
        if (!local_min || !no_cross || std::abs(pv[i]) > 1e-8 * pscale) continue;
        double u = R2 * static_cast<double>(i) / nscan;
        bool ok = false;
        for (int it = 0; it < 100; ++it) {
          const double f = resultant(u, p, R2);
          const double d = resultant_deriv(u, p, R2);
          if (std::abs(f) <= 1e-13 * pscale) { ok = true; break; }
          if (d == 0.0 || !std::isfinite(d)) break;
          const double un = u - f / d;
          if (!std::isfinite(un)) break;
          u = un;
        }
        if (ok && u >= -1e-12 && u <= R2 + 1e-12) add_root(u);
      }

      for (double u : roots) {
        cand.emplace_back(std::sqrt(u), u * p.c2 * p.chi / (u - p.h));
      }

      for (auto [r, f] : cand) {
        if (polish2d(p, R2, r, f)) {
          bool dup = false;
          for (const FixedPoint& q : pts) {
            if (std::abs(q.rho - r) <= 1e-9 && std::abs(q.phi - f) <= 1e-9) { dup = true; break; }
          }
          if (!dup) pts.push_back(classify(sys, p, r, f));
        }
      }
    }
  }

  std::sort(pts.begin(), pts.end(), [](const FixedPoint& a, const FixedPoint& b) {
    if (a.rho != b.rho) return a.rho < b.rho;
    return a.phi < b.phi;
  });
  return pts;
}

std::optional<double> critical_chi(double c1) {
  if (!(c1 >= 0.0) || !std::isfinite(c1)) throw std::invalid_argument("critical_chi: c1 must be finite and >= 0");
  if (c1 >= 1.0) return std::nullopt;
  return 1.0 / std::sqrt(1.0 - c1 * c1);
}

Portrait portrait(ReducedSystem sys, const ReducedParams& p, const std::vector<std::pair<double, double>>& seeds,
                  double t_end, double dt, int record_stride) {
  Portrait out;
  out.points = fixed_points(sys, p);
  for (auto [r0, f0] : seeds) {
    PortraitOrbit po;
    po.orbit = integrate(sys, p, r0, f0, t_end, dt, record_stride);
    const auto& last = po.orbit.samples.back();
    double best = 1e300;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      const double d = std::hypot(last[1] - out.points[i].rho, last[2] - out.points[i].phi);
      if (d < best) {
        best = d;
        po.basin = static_cast<int>(i);
      }
    }
    if (best > 1e-2) po.basin = -1;
    out.orbits.push_back(std::move(po));
  }
  return out;
}

std::vector<BifurcationCell> bifurcation_scan(const std::vector<double>& c1_values,
                                              const std::vector<double>& chi_values, double c2, double h,
                                              double tau) {
  std::vector<BifurcationCell> cells;
  cells.reserve(c1_values.size() * chi_values.size());
  for (double c1 : c1_values) {
    for (double chi : chi_values) {
      ReducedParams p{tau, c1, c2, h, chi};
      int count = 0;
      for (const FixedPoint& fp : fixed_points(ReducedSystem::PhaseGrad, p)) {
        if (fp.rho > 1e-9) ++count;
      }
      cells.push_back({c1, chi, count});
    }
  }
  return cells;
}

}  // namespace chevron
