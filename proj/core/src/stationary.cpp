#include "toycascade/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "toycascade/errors.hpp"

namespace toycascade {

namespace {

constexpr double kDiag = -1.0;
constexpr double kOff = 2.0;

double residual_norm(const RealVector& x, double omega) {
  const std::size_t n = x.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = kDiag * x[i] - omega;
    if (i > 0) r += kOff * x[i - 1];
    if (i + 1 < n) r += kOff * x[i + 1];
    acc += r * r;
  }
  return std::sqrt(acc);
}

RealVector thomas(std::size_t n, double omega) {
  RealVector c(n), d(n), x(n);
  double denom = kDiag;
  c[0] = kOff / denom;
  d[0] = omega / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = kDiag - kOff * c[i - 1];
    c[i] = kOff / denom;
    d[i] = (omega - kOff * d[i - 1]) / denom;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

RealVector dense(std::size_t n, double omega) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = kDiag;
    if (i > 0) a(i, i - 1) = kOff;
    if (i + 1 < n) a(i, i + 1) = kOff;
  }
  return solve_dense(std::move(a), RealVector(n, omega));
}

}  // namespace

PhaseLockedProfile solve_phase_locked(int n_nodes, double omega) {
  if (n_nodes < 1) throw InvalidArgument("n_nodes must be >= 1");
  if (!std::isfinite(omega)) throw InvalidArgument("omega must be finite");
  const auto n = static_cast<std::size_t>(n_nodes);
  const double tol = 1e-10 * std::abs(omega) * std::sqrt(static_cast<double>(n));

  PhaseLockedProfile p{n_nodes, omega, thomas(n, omega), false};
  bool ok = std::all_of(p.rho.begin(), p.rho.end(), [](double v) { return std::isfinite(v); }) &&
            residual_norm(p.rho, omega) <= tol;
  if (!ok) {
    p.rho = dense(n, omega);
    if (residual_norm(p.rho, omega) > tol)
      throw SolveFailed("phase-locked system: residual check failed for n = " +
                        std::to_string(n_nodes));
  }
  const double peak = *std::max_element(p.rho.begin(), p.rho.end());
  p.positive = peak > 0.0 && std::all_of(p.rho.begin(), p.rho.end(),
                                          [&](double v) { return v > 1e-12 * peak; });
  return p;
}

LatticeState profile_to_state(const PhaseLockedProfile& p, int half_width, int center,
                              double theta) {
  if (!p.positive) throw NotPositive("profile is not strictly positive");
  const int first = center - (p.n_nodes - 1) / 2;
  const int last = first + p.n_nodes - 1;
  if (first < -half_width || last > half_width)
    throw DoesNotFit("profile of " + std::to_string(p.n_nodes) + " nodes centred at " +
                     std::to_string(center) + " does not fit in [-" +
                     std::to_string(half_width) + ", " + std::to_string(half_width) + "]");
  LatticeState b(half_width);
  const Complex phase = std::polar(1.0, theta);
  std::vector<Complex> amps(b.size());
  for (int i = 0; i < p.n_nodes; ++i)
    amps[static_cast<std::size_t>(first + i + half_width)] =
        std::sqrt(p.rho[static_cast<std::size_t>(i)]) * phase;
  return {half_width, std::move(amps)};
}

std::vector<std::pair<int, bool>> scan_positivity(int max_nodes) {
  if (max_nodes < 1) throw InvalidArgument("max_nodes must be >= 1");
  std::vector<std::pair<int, bool>> out;
  for (int n = 1; n <= max_nodes; ++n) out.emplace_back(n, solve_phase_locked(n, 1.0).positive);
  return out;
}

}  // namespace toycascade
