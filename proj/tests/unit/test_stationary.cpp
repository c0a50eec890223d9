#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "toycascade/dynamics.hpp"
#include "toycascade/errors.hpp"
#include "toycascade/stationary.hpp"

using namespace toycascade;

namespace {

Matrix phase_locked_matrix(int n) {
  Matrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    a(u, u) = -1.0;
    if (i > 0) a(u, u - 1) = 2.0;
    if (i + 1 < n) a(u, u + 1) = 2.0;
  }
  return a;
}

}  // namespace

TEST(SolvePhaseLocked, ThreeNodes) {
  const PhaseLockedProfile p = solve_phase_locked(3, 1.0);
  ASSERT_EQ(p.rho.size(), 3u);
  EXPECT_NEAR(p.rho[0], 3.0 / 7.0, 1e-14);
  EXPECT_NEAR(p.rho[1], 5.0 / 7.0, 1e-14);
  EXPECT_NEAR(p.rho[2], 3.0 / 7.0, 1e-14);
  EXPECT_TRUE(p.positive);
}

TEST(SolvePhaseLocked, SingleNode) {
  const PhaseLockedProfile p = solve_phase_locked(1, 2.0);
  ASSERT_EQ(p.rho.size(), 1u);
  EXPECT_DOUBLE_EQ(p.rho[0], -2.0);
  EXPECT_FALSE(p.positive);
}

TEST(SolvePhaseLocked, RejectsBadInput) {
  EXPECT_THROW(solve_phase_locked(0, 1.0), InvalidArgument);
}

TEST(SolvePhaseLocked, PositivityPattern) {
  for (int n : {2, 3, 4, 8}) EXPECT_TRUE(solve_phase_locked(n, 1.0).positive) << n;
  EXPECT_FALSE(solve_phase_locked(5, 1.0).positive);
}

TEST(SolvePhaseLocked, MatchesDenseSolveAndResidual) {
  for (int n = 1; n <= 200; ++n) {
    const PhaseLockedProfile p = solve_phase_locked(n, 1.0);
    const Matrix a = phase_locked_matrix(n);
    const RealVector r = a.apply(p.rho);
    double res = 0.0;
    for (double v : r) res += (v - 1.0) * (v - 1.0);
    EXPECT_LE(std::sqrt(res), 1e-10 * std::sqrt(double(n))) << n;
    if (n <= 40) {
      std::vector<RealVector> rows(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i].assign(a.row(i).begin(), a.row(i).end());
      const RealVector ref = oracle::dense_solve(rows, RealVector(static_cast<std::size_t>(n), 1.0));
      for (int i = 0; i < n; ++i)
        EXPECT_NEAR(p.rho[static_cast<std::size_t>(i)], ref[static_cast<std::size_t>(i)],
                    1e-9 * (1.0 + std::abs(ref[static_cast<std::size_t>(i)])));
    }
    bool pos = true;
    for (double v : p.rho) pos = pos && v > 0.0;
    if (!pos) EXPECT_FALSE(p.positive) << n;
  }
}

TEST(SolvePhaseLocked, ScalingLinearity) {
  for (int n : {3, 8, 17, 60}) {
    const PhaseLockedProfile a = solve_phase_locked(n, 1.0);
    const PhaseLockedProfile b = solve_phase_locked(n, -2.5);
    for (std::size_t i = 0; i < a.rho.size(); ++i)
      EXPECT_NEAR(b.rho[i], -2.5 * a.rho[i], 1e-12 * (1.0 + std::abs(b.rho[i])));
  }
}

TEST(SolvePhaseLocked, Symmetric) {
  for (int n : {4, 7, 12}) {
    const PhaseLockedProfile p = solve_phase_locked(n, 1.0);
    for (std::size_t i = 0; i < p.rho.size(); ++i)
      EXPECT_NEAR(p.rho[i], p.rho[p.rho.size() - 1 - i], 1e-12 * (1.0 + std::abs(p.rho[i])));
  }
}

TEST(ProfileToState, ThreeModeProfileIsMinimizer) {
  const PhaseLockedProfile p = solve_phase_locked(3, 7.0 / 11.0);
  for (double theta : {0.0, 0.4, kPi / 2}) {
    const LatticeState b = profile_to_state(p, 3, 0, theta);
    const LatticeState ref = minimizer_state(MinimizerId{1.0, 0, theta}, 3);
    for (int j = -3; j <= 3; ++j) EXPECT_NEAR(std::abs(b.at(j) - ref.at(j)), 0.0, 1e-12);
  }
}

TEST(ProfileToState, RotationLeavesEnergy) {
  const PhaseLockedProfile p = solve_phase_locked(4, 1.0);
  EXPECT_NEAR(hamiltonian(profile_to_state(p, 4, 0, 0.0)),
              hamiltonian(profile_to_state(p, 4, 0, kPi / 2)), 1e-14);
}

TEST(ProfileToState, Placement) {
  const PhaseLockedProfile p = solve_phase_locked(2, 1.0);
  const LatticeState b = profile_to_state(p, 3, 1, 0.0);
  EXPECT_EQ(b.at(0), Complex{});
  EXPECT_GT(std::abs(b.at(1)), 0.0);
  EXPECT_GT(std::abs(b.at(2)), 0.0);
  EXPECT_EQ(b.at(3), Complex{});
}

TEST(ProfileToState, Errors) {
  EXPECT_THROW(profile_to_state(solve_phase_locked(5, 1.0), 4, 0, 0.0), NotPositive);
  EXPECT_THROW(profile_to_state(solve_phase_locked(8, 1.0), 3, 0, 0.0), DoesNotFit);
  EXPECT_THROW(profile_to_state(solve_phase_locked(3, 1.0), 3, 3, 0.0), DoesNotFit);
}

TEST(ProfileToState, StationaryUnderFlow) {
  for (const auto& [n, positive] : scan_positivity(8)) {
    if (!positive) continue;
    const LatticeState b = profile_to_state(solve_phase_locked(n, 1.0), 5, 0, 0.2);
    IntegratorConfig c;
    c.dt = 1e-3;
    c.t_final = 10.0;
    c.record_stride = 100;
    const Trajectory tr = integrate(b, c);
    for (const LatticeState& s : tr.states)
      for (int j = -5; j <= 5; ++j) EXPECT_NEAR(std::norm(s.at(j)), std::norm(b.at(j)), 1e-7) << n;
  }
}

TEST(ScanPositivity, PublishedPattern) {
  const auto scan = scan_positivity(8);
  ASSERT_EQ(scan.size(), 8u);
  for (std::size_t i = 0; i < scan.size(); ++i) EXPECT_EQ(scan[i].first, int(i) + 1);
  EXPECT_TRUE(scan[1].second);
  EXPECT_TRUE(scan[2].second);
  EXPECT_TRUE(scan[3].second);
  EXPECT_FALSE(scan[4].second);
  EXPECT_TRUE(scan[7].second);
  EXPECT_THROW(scan_positivity(0), InvalidArgument);
}
