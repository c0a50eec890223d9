#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "toycascade/lattice.hpp"

namespace toycascade {

// Non-negative in-phase profile rho_j = |b_j|^2 on a finite window; sites
// outside the window are zero.
class RhoProfile {
 public:
  RhoProfile() = default;
  // Throws InvalidArgument on negative or non-finite entries.
  explicit RhoProfile(RealVector rho);

  const RealVector& rho() const noexcept { return rho_; }
  double mass() const noexcept { return mass_; }
  std::size_t size() const noexcept { return rho_.size(); }
  double operator[](std::size_t i) const { return rho_[i]; }
  // Index of the first maximal entry.
  std::size_t argmax() const;

  friend bool operator==(const RhoProfile& a, const RhoProfile& b) { return a.rho_ == b.rho_; }

 private:
  RealVector rho_;
  double mass_ = 0.0;
};

// sum_j (rho_j^2 / 2 - 2 rho_j rho_{j-1}).
double h_inphase(const RhoProfile& p);

struct Rational {
  long long num = 0;
  long long den = 1;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(Rational a, Rational b);
  friend bool operator<(Rational a, Rational b);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rational make_rational(long long num, long long den);

// Exact h_inphase on rational profiles.
Rational h_inphase_exact(const std::vector<Rational>& rho);

// The symmetric k-mode candidates for k = 1..4 at unit mass: (1), (1/2, 1/2),
// (3/11, 5/11, 3/11), (1/8, 3/8, 3/8, 1/8).
std::vector<Rational> k_mode_profile_exact(int k);

struct KModeCandidate {
  RhoProfile profile;
  double energy = 0.0;
};

// Candidate scaled to mass m; energy scales as m^2. Throws InvalidArgument
// for k outside 1..4.
KModeCandidate k_mode_energy(int k, double m);

// Pairwise-swap induction: the right side of the (first) maximum is made
// non-increasing, then the profile is mirrored and the other side processed.
// Strictly lowers h_inphase whenever a side is not monotone, never raises it.
RhoProfile rearrange_monotone_sides(const RhoProfile& p);

// Values sorted in decreasing order and placed alternately right and left of
// the middle of the window. Maximizes sum rho_j rho_{j-1} over permutations.
RhoProfile organ_pipe(const RhoProfile& p);

// Rearrangement non-increasing about its maximum with h_inphase no larger
// than the input: the better of the two constructions above.
RhoProfile rearrange_nonincreasing(const RhoProfile& p);

bool is_nonincreasing_about_max(const RhoProfile& p, double tol = 0.0);

// rho_c <= (5/6)(rho_{c-1} + rho_{c+1}) + 1e-12 with c = center (default argmax).
bool check_5over3(const RhoProfile& p);
bool check_5over3(const RhoProfile& p, std::size_t center);

// Removes the two outermost sites at distance D = max distance of the
// support from the maximum and spreads their mass over the maximum and its
// neighbours. Throws SupportTooSmall when the support has fewer than 6 sites.
RhoProfile five_mode_reduction(const RhoProfile& p);

// Inputs on which five_mode_reduction provably lowers the energy:
// non-increasing about the max, check_5over3 at the max, support >= 6 sites.
bool five_mode_admissible(const RhoProfile& p);

struct MinimizeOptions {
  int max_iter = 20000;
  // Converged when the tangent gradient norm <= grad_tol * m^{3/2}.
  double grad_tol = 1e-9;
  int threads = 1;
};

struct MinimizeResult {
  LatticeState state{1};
  double energy = 0.0;
  long iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  std::uint64_t seed = 0;
  int best_start = 0;
};

// Multistart projected gradient descent on S(m) with Armijo backtracking and
// Barzilai-Borwein trial steps. Start s uses stream (seed, s).
MinimizeResult minimize_h_on_sphere(int half_width, double m, int n_starts,
                                    std::uint64_t seed, const MinimizeOptions& opts = {});
// Same procedure applied to -H; energy reports H at the returned state.
MinimizeResult maximize_h_on_sphere(int half_width, double m, int n_starts,
                                    std::uint64_t seed, const MinimizeOptions& opts = {});

// Single descent run from a given start (projected onto S(mass(start))).
MinimizeResult descend_from(const LatticeState& start, const MinimizeOptions& opts = {});

// Minimum of h_inphase over {rho >= 0, sum rho = m} on 2N+1 sites: exhaustive
// grid of step m/grid, then projected-gradient refinement on the simplex.
// Throws BudgetExceeded for N > 3 or grid > 40.
struct BruteForceResult {
  double grid_min = 0.0;
  double refined_min = 0.0;
  RealVector argmin;
};
BruteForceResult brute_force_search(int half_width, double m, int grid);
double brute_force_min(int half_width, double m, int grid);

// Euclidean projection onto {x >= 0, sum x = total}.
RealVector project_to_simplex(RealVector x, double total);

}  // namespace toycascade
