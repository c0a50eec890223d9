#include "toycascade/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "toycascade/errors.hpp"
#include "toycascade/io.hpp"

namespace toycascade {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
  if (!(t_final > 0.0) || !std::isfinite(t_final))
    throw InvalidArgument("t_final must be > 0");
  if (!(dt < t_final)) throw InvalidArgument("dt must be smaller than t_final");
  if (record_stride < 1) throw InvalidArgument("record_stride must be >= 1");
  if (!(newton_tol > 0.0)) throw InvalidArgument("newton_tol must be > 0");
  if (newton_max_iter < 1) throw InvalidArgument("newton_max_iter must be >= 1");
}

double Trajectory::max_h_drift() const {
  double worst = 0.0;
  for (double h : h_series) worst = std::max(worst, std::abs(h - h_series.front()));
  return worst;
}

double Trajectory::max_m_drift() const {
  double worst = 0.0;
  for (double m : m_series) worst = std::max(worst, std::abs(m - m_series.front()));
  return worst;
}

LatticeState rhs(const LatticeState& b) {
  const auto a = b.amplitudes();
  const int n = b.half_width();
  std::vector<Complex> out(a.size());
  for (int site = -n; site <= n; ++site) {
    const Complex z = b.at(site);
    const Complex l = b.at(site - 1), r = b.at(site + 1);
    const Complex v = -std::norm(z) * z + 2.0 * std::conj(z) * (l * l + r * r);
    out[static_cast<std::size_t>(site + n)] = Complex{-v.imag(), v.real()};
  }
  return {n, std::move(out)};
}

namespace {

LatticeState rk4_step(const LatticeState& b, double dt) {
  const LatticeState k1 = rhs(b);
  const LatticeState k2 = rhs(b + (0.5 * dt) * k1);
  const LatticeState k3 = rhs(b + (0.5 * dt) * k2);
  const LatticeState k4 = rhs(b + dt * k3);
  return b + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Solves y = b + dt * rhs((b + y) / 2) by damped Newton. The Jacobian of
// rhs in real coordinates is R * Hess / 2 with R(x, y) = (y, -x).
LatticeState midpoint_step(const LatticeState& b, double dt, const IntegratorConfig& cfg,
                           long step) {
  const int n = b.half_width();
  LatticeState y = b + dt * rhs(b);
  auto residual = [&](const LatticeState& cand) {
    return cand - b - dt * rhs(0.5 * (b + cand));
  };
  LatticeState res = residual(y);
  double res_norm = norm(res);
  const double scale = std::max(1.0, norm(b));
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    if (res_norm <= cfg.newton_tol * scale) return y;
    const HessianMatrix hess = hessian_h(0.5 * (b + y));
    const std::size_t dim = hess.rows();
    Matrix jac = Matrix::identity(dim);
    for (std::size_t i = 0; i < dim; i += 2)
      for (std::size_t j = 0; j < dim; ++j) {
        // Row pair (re, im) of R * Hess is (Hess_im, -Hess_re).
        jac(i, j) -= 0.25 * dt * hess(i + 1, j);
        jac(i + 1, j) += 0.25 * dt * hess(i, j);
      }
    RealVector rhs_vec = res.to_real();
    for (double& v : rhs_vec) v = -v;
    RealVector delta;
    try {
      delta = solve_dense(std::move(jac), std::move(rhs_vec));
    } catch (const SolveFailed&) {
      throw NonConvergence("implicit midpoint: singular Newton system at step " +
                               std::to_string(step),
                           step);
    }
    const LatticeState dy = LatticeState::from_real(n, delta);
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 30; ++k) {
      const LatticeState cand = y + lambda * dy;
      const LatticeState cand_res = residual(cand);
      const double cand_norm = norm(cand_res);
      if (cand_norm < res_norm) {
        y = cand;
        res = cand_res;
        res_norm = cand_norm;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
  }
  if (res_norm <= cfg.newton_tol * scale) return y;
  throw NonConvergence("implicit midpoint: Newton did not converge at step " +
                           std::to_string(step) + " (residual " +
                           format_double(res_norm) + ")",
                       step);
}

void record(Trajectory& traj, double t, const LatticeState& b) {
  traj.times.push_back(t);
  traj.states.push_back(b);
  traj.h_series.push_back(hamiltonian(b));
  traj.m_series.push_back(mass(b));
}

}  // namespace

Trajectory integrate(const LatticeState& b0, const IntegratorConfig& cfg) {
  cfg.validate();
  const long steps = std::lround(cfg.t_final / cfg.dt);
  const double dt = cfg.t_final / static_cast<double>(steps);
  Trajectory traj;
  record(traj, 0.0, b0);
  LatticeState b = b0;
  for (long s = 1; s <= steps; ++s) {
    b = cfg.scheme == Scheme::RK4 ? rk4_step(b, dt) : midpoint_step(b, dt, cfg, s);
    if (s % cfg.record_stride == 0 || s == steps)
      record(traj, s == steps ? cfg.t_final : static_cast<double>(s) * dt, b);
  }
  return traj;
}

namespace {

double site_rate(const HydroState& h, std::size_t j) {
  const auto n = h.rho.size();
  double rate = -h.rho[j];
  if (j > 0) rate += 2.0 * h.rho[j - 1] * std::cos(2.0 * (h.theta[j - 1] - h.theta[j]));
  if (j + 1 < n) rate += 2.0 * h.rho[j + 1] * std::cos(2.0 * (h.theta[j + 1] - h.theta[j]));
  return rate;
}

void check_hydro(const HydroState& h) {
  const auto sites = static_cast<std::size_t>(2 * h.half_width + 1);
  if (h.half_width < 1 || h.rho.size() != sites || h.theta.size() != sites)
    throw InvalidArgument("hydro state has wrong length");
  for (double r : h.rho)
    if (!(r >= 0.0)) throw InvalidArgument("hydro state has negative rho");
}

}  // namespace

HydroRates hydro_rhs(const HydroState& h) {
  check_hydro(h);
  const auto n = h.rho.size();
  HydroRates out;
  out.drho.assign(n, 0.0);
  out.dtheta.assign(n, std::nullopt);
  for (std::size_t j = 0; j < n; ++j) {
    double d = 0.0;
    if (j > 0)
      d -= 4.0 * h.rho[j] * h.rho[j - 1] * std::sin(2.0 * (h.theta[j - 1] - h.theta[j]));
    if (j + 1 < n)
      d -= 4.0 * h.rho[j] * h.rho[j + 1] * std::sin(2.0 * (h.theta[j + 1] - h.theta[j]));
    out.drho[j] = d;
    if (h.rho[j] > 0.0) out.dtheta[j] = site_rate(h, j);
  }
  return out;
}

double phase_rate(const HydroState& h, int site) {
  check_hydro(h);
  if (site < -h.half_width || site > h.half_width)
    throw InvalidArgument("site " + std::to_string(site) + " outside lattice");
  const auto j = static_cast<std::size_t>(site + h.half_width);
  if (!(h.rho[j] > 0.0))
    throw DegenerateSite("phase undefined where rho = 0 (site " + std::to_string(site) + ")",
                         site);
  return site_rate(h, j);
}

double measure_rotation_rate(const Trajectory& traj, int site) {
  if (traj.states.size() < 2)
    throw InvalidArgument("rotation rate needs at least two recorded states");
  std::vector<double> phase;
  phase.reserve(traj.states.size());
  double prev = 0.0;
  double offset = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const Complex z = traj.states[i].at(site);
    if (std::abs(z) < 1e-8)
      throw DegenerateSite("modulus below 1e-8 at site " + std::to_string(site), site);
    const double a = std::arg(z);
    if (i > 0) {
      const double jump = a - prev;
      if (jump > kPi) offset -= kTwoPi;
      if (jump < -kPi) offset += kTwoPi;
    }
    prev = a;
    phase.push_back(a + offset);
  }
  const auto n = static_cast<double>(phase.size());
  double tm = 0.0, pm = 0.0;
  for (std::size_t i = 0; i < phase.size(); ++i) {
    tm += traj.times[i];
    pm += phase[i];
  }
  tm /= n;
  pm /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < phase.size(); ++i) {
    num += (traj.times[i] - tm) * (phase[i] - pm);
    den += (traj.times[i] - tm) * (traj.times[i] - tm);
  }
  return num / den;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const int n = traj.states.front().half_width();
  out << "t,H,M";
  for (int j = -n; j <= n; ++j) out << ",re_" << j << ",im_" << j;
  out << '\n';
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    out << format_double(traj.times[i]) << ',' << format_double(traj.h_series[i]) << ','
        << format_double(traj.m_series[i]);
    for (const Complex& z : traj.states[i].amplitudes())
      out << ',' << format_double(z.real()) << ',' << format_double(z.imag());
    out << '\n';
  }
}

}  // namespace toycascade
