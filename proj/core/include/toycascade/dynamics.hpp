#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "toycascade/lattice.hpp"

namespace toycascade {

enum class Scheme { RK4, ImplicitMidpoint };

struct IntegratorConfig {
  Scheme scheme = Scheme::RK4;
  double dt = 1e-3;
  double t_final = 1.0;
  int record_stride = 1;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;

  // Throws InvalidArgument when a field is out of range.
  void validate() const;
};

// Recorded samples; index 0 is the initial state at t = 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<LatticeState> states;
  std::vector<double> h_series;
  std::vector<double> m_series;

  double max_h_drift() const;
  double max_m_drift() const;
};

// db_j/dt = i(-|b_j|^2 b_j + 2 conj(b_j)(b_{j-1}^2 + b_{j+1}^2)) = -(i/2) grad_h.
LatticeState rhs(const LatticeState& b);

// Fixed-step integration. The number of steps is round(t_final / dt); the
// final recorded time is always t_final. ImplicitMidpoint throws
// NonConvergence carrying the failing step index.
Trajectory integrate(const LatticeState& b0, const IntegratorConfig& cfg);

struct HydroRates {
  RealVector drho;
  // Empty where rho_j = 0 (phase undefined).
  std::vector<std::optional<double>> dtheta;
};

HydroRates hydro_rhs(const HydroState& h);
// dtheta at one site; throws DegenerateSite when rho_site = 0.
double phase_rate(const HydroState& h, int site);

// Least-squares slope of the unwrapped phase of b_site against t. Throws
// DegenerateSite if |b_site| drops below 1e-8 anywhere on the trajectory.
double measure_rotation_rate(const Trajectory& traj, int site);

// CSV columns: t,H,M,re_{-N},im_{-N},...,re_N,im_N.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace toycascade
