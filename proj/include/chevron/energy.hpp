#pragma once

#include <utility>
#include <vector>

#include "chevron/field.hpp"
#include "chevron/params.hpp"
#include "chevron/pde.hpp"

namespace chevron {

// Which Lyapunov functional applies.
//   SubcriticalC1: c1 < 1, h > 0. L = tau ||A||^2 + delta0 ||phi||^2,
//                  decay rate k0 = min(1/tau, h), absorbing level |Omega|/k0.
//   C1Ge2C2:       c1 >= 2 c2 > 0, h > 0. L = (c1 tau / 2) ||A||^2 + 2 c2 ||phi||^2,
//                  decay rate min(2/tau, h), absorbing level c1 |Omega| / rate.
//   None:          no bound available; norms are still recorded.
enum class Regime { SubcriticalC1, C1Ge2C2, None };

Regime regime_of(const ChevronParams& p);
const char* regime_name(Regime r);

class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Weight on ||phi||^2 in the subcritical functional: 2 (1 - c1) / (2 + c2).
double delta0(const ChevronParams& p);

// Decay rate of the subcritical functional: min(1/tau, h), h > 0 required.
double k0(const ChevronParams& p);

// (weight on ||A||^2, weight on ||phi||^2) for the c1 >= 2 c2 > 0 regime.
std::pair<double, double> remark_weights(const ChevronParams& p);

struct EnergyRecord {
  double t = 0;
  double normA_sq = 0;
  double normPhi_sq = 0;
  double gradA_sq = 0;
  double gradPhi_sq = 0;
  double l4A = 0;
  double lyapunov = 0;
  double bound = 0;  // +inf when regime is None
};

// Lyapunov value of a state under the regime-selected weights. Outside both
// regimes the neutral weights (tau, 1) are used as a plain diagnostic.
double lyapunov_value(const SimState& s, const ChevronParams& p);

// Theoretical envelope L0 e^{-rate (t - t0)} + level for a run started at t0
// on a domain of the given area; +inf when no regime applies.
double bound_value(const ChevronParams& p, double area, double L0, double t, double t0 = 0.0);

// Norms plus the envelope for the run whose Lyapunov value at t0 was L0.
EnergyRecord record(const SimState& s, const ChevronParams& p, double L0, double t0 = 0.0);

struct Violation {
  double t;
  double lyapunov;
  double bound;
};

struct DissipativityReport {
  Regime regime = Regime::None;
  std::vector<Violation> violations;   // records with lyapunov > bound * (1 + tol)
  double max_excess_ratio = 0.0;       // max over records of lyapunov / bound
};

inline constexpr double kDissipativityTol = 0.05;

DissipativityReport check_dissipativity(const std::vector<EnergyRecord>& records, const ChevronParams& p);

struct DependenceProbe {
  std::vector<std::pair<double, double>> growth;  // (t, D(t))
  double amplification = 0.0;                     // max D / D(0); 0 when D(0) = 0
};

// Runs the trajectory and a delta-perturbed copy (smooth bump added to both
// fields) and reports D(t) = tau ||A - A~||^2 + ||phi - phi~||^2 at the
// observer cadence. Requires a dissipative regime.
DependenceProbe continuous_dependence_probe(const ChevronParams& p, const SimState& initial, double delta,
                                            double t_end, const StepperConfig& cfg, double observe_every);

}  // namespace chevron
