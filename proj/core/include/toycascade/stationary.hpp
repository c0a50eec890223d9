#pragma once

#include <utility>
#include <vector>

#include "toycascade/lattice.hpp"

namespace toycascade {

// Solution of the phase-locked system -rho_j + 2 rho_{j-1} + 2 rho_{j+1} = omega
// on n interior nodes with zero boundary values.
struct PhaseLockedProfile {
  int n_nodes = 0;
  double omega = 0.0;
  RealVector rho;
  bool positive = false;
};

// Thomas elimination with a residual check (tolerance 1e-10 relative) and a
// pivoted dense fallback; the matrix is not diagonally dominant.
PhaseLockedProfile solve_phase_locked(int n_nodes, double omega);

// b_j = sqrt(rho) e^{i theta}; element i sits at site center - (n-1)/2 + i.
// Throws NotPositive or DoesNotFit.
LatticeState profile_to_state(const PhaseLockedProfile& p, int half_width, int center,
                              double theta);

// (n, positive) for n = 1..max_nodes at omega = 1.
std::vector<std::pair<int, bool>> scan_positivity(int max_nodes);

}  // namespace toycascade
