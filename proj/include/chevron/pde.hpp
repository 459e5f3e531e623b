#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "chevron/fdops.hpp"
#include "chevron/field.hpp"
#include "chevron/params.hpp"

namespace chevron {

struct RhsPair {
  ComplexField dA;
  RealField dphi;
};

enum class Scheme { Rk4Explicit, ImexEuler };

struct StepperConfig {
  Scheme scheme = Scheme::ImexEuler;
  double dt = 0.0;  // step size; 0 is invalid, callers pick or use stable_dt
  double safety = 0.8;
};

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double t_, double max_abs_A_, const std::string& msg)
      : std::runtime_error(msg), t(t_), max_abs_A(max_abs_A_) {}
  double t;
  double max_abs_A;
};

// Full spatial right-hand side (dA/dt, dphi/dt). Throws on non-finite output,
// naming the first offending node.
RhsPair rhs(const SimState& s, const ChevronParams& p);

// Conservative explicit step-size bound: diffusion CFL combined with a
// pointwise reaction-rate estimate for fields bounded by state_bound.
double stable_dt(const ChevronParams& p, const Grid2D& g, double state_bound, double safety = 0.8);

// One-step integrators. RK4 treats everything explicitly; IMEX Euler treats
// lap A / tau and (D1,D2)-diffusion - h for phi implicitly via sine solves
// and the rest explicitly.
class Stepper {
 public:
  Stepper(const Grid2D& grid, const ChevronParams& p, const StepperConfig& cfg);

  SimState step(const SimState& s) const { return step(s, cfg_.dt); }
  SimState step(const SimState& s, double dt) const;

 private:
  SimState step_rk4(const SimState& s, double dt) const;
  SimState step_imex(const SimState& s, double dt) const;

  Grid2D grid_;
  ChevronParams p_;
  StepperConfig cfg_;
  std::unique_ptr<SineSolver> solveA_;    // isotropic, for lap A
  std::unique_ptr<SineSolver> solvePhi_;  // (D1, D2)
};

SimState step(const SimState& s, const ChevronParams& p, const StepperConfig& cfg);

using Observer = std::function<void(const SimState&)>;

// Advances initial to t_end. Observers fire at t0, at every multiple of
// observe_every, and at t_end; steps are shortened to land on those times
// exactly, which pins the stepping sequence for checkpoint/resume runs.
SimState run(const SimState& initial, const ChevronParams& p, const StepperConfig& cfg, double t_end,
             double observe_every, const std::vector<Observer>& observers = {});

// Self-convergence order: integrates to t_end with every dt in dts (strictly
// decreasing, successive ratios of 2, the last entry is the reference) and
// returns the mean log2 error ratio.
double order_of_convergence(const SimState& initial, const ChevronParams& p, Scheme scheme,
                            const std::vector<double>& dts, double t_end);

}  // namespace chevron
