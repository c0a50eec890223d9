#include "toycascade/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "toycascade/errors.hpp"

namespace toycascade {

namespace {

void require_same_lattice(const LatticeState& a, const LatticeState& b) {
  if (a.half_width() != b.half_width())
    throw InvalidArgument("lattice half-width mismatch: " +
                          std::to_string(a.half_width()) + " vs " +
                          std::to_string(b.half_width()));
}

// Sites outside the stored range read as zero.
Complex site_or_zero(std::span<const Complex> a, std::ptrdiff_t i) {
  return (i < 0 || i >= static_cast<std::ptrdiff_t>(a.size())) ? Complex{}
                                                                 : a[static_cast<std::size_t>(i)];
}

}  // namespace

LatticeState::LatticeState(int half_width)
    : LatticeState(half_width,
                   std::vector<Complex>(half_width >= 0 ? 2 * half_width + 1 : 0)) {}

LatticeState::LatticeState(int half_width, std::vector<Complex> amps)
    : half_width_(half_width), amps_(std::move(amps)) {
  if (half_width_ < 1)
    throw InvalidArgument("lattice half-width must be >= 1, got " +
                          std::to_string(half_width_));
  if (amps_.size() != static_cast<std::size_t>(2 * half_width_ + 1))
    throw InvalidArgument("expected " + std::to_string(2 * half_width_ + 1) +
                          " amplitudes, got " + std::to_string(amps_.size()));
  for (const Complex& z : amps_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("lattice state has a non-finite amplitude");
}

LatticeState LatticeState::from_real(int half_width, std::span<const double> coords) {
  if (coords.size() != static_cast<std::size_t>(2 * (2 * half_width + 1)))
    throw InvalidArgument("real coordinate vector has wrong length");
  std::vector<Complex> amps(coords.size() / 2);
  for (std::size_t j = 0; j < amps.size(); ++j)
    amps[j] = {coords[2 * j], coords[2 * j + 1]};
  return {half_width, std::move(amps)};
}

RealVector LatticeState::to_real() const {
  RealVector x(real_dim());
  for (std::size_t j = 0; j < amps_.size(); ++j) {
    x[2 * j] = amps_[j].real();
    x[2 * j + 1] = amps_[j].imag();
  }
  return x;
}

LatticeState LatticeState::with(int site, Complex value) const {
  if (!contains(site))
    throw InvalidArgument("site " + std::to_string(site) + " outside lattice");
  auto amps = amps_;
  amps[static_cast<std::size_t>(site + half_width_)] = value;
  return {half_width_, std::move(amps)};
}

LatticeState operator+(const LatticeState& a, const LatticeState& b) {
  require_same_lattice(a, b);
  auto amps = a.amps_;
  for (std::size_t j = 0; j < amps.size(); ++j) amps[j] += b.amps_[j];
  return {a.half_width_, std::move(amps)};
}

LatticeState operator-(const LatticeState& a, const LatticeState& b) {
  require_same_lattice(a, b);
  auto amps = a.amps_;
  for (std::size_t j = 0; j < amps.size(); ++j) amps[j] -= b.amps_[j];
  return {a.half_width_, std::move(amps)};
}

LatticeState operator*(Complex s, const LatticeState& a) {
  auto amps = a.amps_;
  for (Complex& z : amps) z *= s;
  return {a.half_width_, std::move(amps)};
}

LatticeState operator*(double s, const LatticeState& a) { return Complex{s, 0.0} * a; }

double inner(const LatticeState& u, const LatticeState& v) {
  return complex_pairing(u, v).real();
}

Complex complex_pairing(const LatticeState& u, const LatticeState& v) {
  require_same_lattice(u, v);
  Complex acc{};
  const auto a = u.amplitudes();
  const auto b = v.amplitudes();
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]);
  return acc;
}

double norm(const LatticeState& u) { return std::sqrt(mass(u)); }

double mass(const LatticeState& b) {
  double m = 0.0;
  for (const Complex& z : b.amplitudes()) m += std::norm(z);
  return m;
}

double hamiltonian(const LatticeState& b) {
  const auto a = b.amplitudes();
  double h = 0.0;
  Complex prev_sq{};  // b_{j-1}^2, zero at the left boundary
  for (const Complex& z : a) {
    const double rho = std::norm(z);
    const Complex zsq = z * z;
    h += 0.5 * rho * rho - 2.0 * (std::conj(zsq) * prev_sq).real();
    prev_sq = zsq;
  }
  return h;
}

LatticeState grad_h(const LatticeState& b) {
  const auto a = b.amplitudes();
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  std::vector<Complex> g(a.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const Complex z = a[static_cast<std::size_t>(j)];
    const Complex l = site_or_zero(a, j - 1);
    const Complex r = site_or_zero(a, j + 1);
    g[static_cast<std::size_t>(j)] =
        2.0 * (std::norm(z) * z - 2.0 * std::conj(z) * (l * l + r * r));
  }
  return {b.half_width(), std::move(g)};
}

LatticeState hessian_apply(const LatticeState& b, const LatticeState& xi) {
  require_same_lattice(b, xi);
  const auto a = b.amplitudes();
  const auto x = xi.amplitudes();
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  std::vector<Complex> out(a.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const Complex z = a[static_cast<std::size_t>(j)];
    const Complex d = x[static_cast<std::size_t>(j)];
    const Complex l = site_or_zero(a, j - 1), r = site_or_zero(a, j + 1);
    const Complex dl = site_or_zero(x, j - 1), dr = site_or_zero(x, j + 1);
    const Complex s = l * l + r * r;
    const Complex t = l * dl + r * dr;
    out[static_cast<std::size_t>(j)] =
        2.0 * (2.0 * std::norm(z) * d + z * z * std::conj(d) -
               2.0 * std::conj(d) * s - 4.0 * std::conj(z) * t);
  }
  return {b.half_width(), std::move(out)};
}

double third_directional_derivative(const LatticeState& b, const LatticeState& xi) {
  require_same_lattice(b, xi);
  const auto a = b.amplitudes();
  const auto x = xi.amplitudes();
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  double acc = 0.0;
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const Complex z = a[static_cast<std::size_t>(j)];
    const Complex d = x[static_cast<std::size_t>(j)];
    const Complex l = site_or_zero(a, j - 1), r = site_or_zero(a, j + 1);
    const Complex dl = site_or_zero(x, j - 1), dr = site_or_zero(x, j + 1);
    const Complex t = l * dl + r * dr;
    const Complex u = dl * dl + dr * dr;
    const Complex dhv = 2.0 * (4.0 * (std::conj(z) * d).real() * d +
                               2.0 * z * std::norm(d) - 8.0 * std::conj(d) * t -
                               4.0 * std::conj(z) * u);
    acc += (dhv * std::conj(d)).real();
  }
  return acc;
}

HessianMatrix hessian_h(const LatticeState& b) {
  const auto a = b.amplitudes();
  const std::size_t sites = a.size();
  const auto n = static_cast<std::ptrdiff_t>(sites);
  HessianMatrix hess(2 * sites, 2 * sites);
  // Column (j, part) is the Hessian applied to the unit direction e_j or
  // i e_j; only rows j-1..j+1 can be non-zero.
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    for (int part = 0; part < 2; ++part) {
      const Complex d = part == 0 ? Complex{1.0, 0.0} : Complex{0.0, 1.0};
      const std::size_t col = 2 * static_cast<std::size_t>(j) + part;
      for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, j - 1);
           i <= std::min<std::ptrdiff_t>(n - 1, j + 1); ++i) {
        const Complex z = a[static_cast<std::size_t>(i)];
        Complex v;
        if (i == j) {
          const Complex l = site_or_zero(a, i - 1), r = site_or_zero(a, i + 1);
          v = 2.0 * (2.0 * std::norm(z) * d + z * z * std::conj(d) -
                     2.0 * std::conj(d) * (l * l + r * r));
        } else {
          // Neighbour term -8 conj(b_i) b_j d.
          v = -8.0 * std::conj(z) * a[static_cast<std::size_t>(j)] * d;
        }
        hess(2 * static_cast<std::size_t>(i), col) = v.real();
        hess(2 * static_cast<std::size_t>(i) + 1, col) = v.imag();
      }
    }
  }
  return hess;
}

HydroState to_madelung(const LatticeState& b) {
  HydroState h;
  h.half_width = b.half_width();
  h.rho.reserve(b.size());
  h.theta.reserve(b.size());
  for (const Complex& z : b.amplitudes()) {
    const double rho = std::norm(z);
    h.rho.push_back(rho);
    if (rho < 1e-300) {
      h.theta.push_back(0.0);
    } else {
      double th = std::arg(z);
      if (th < 0.0) th += kTwoPi;
      if (th >= kTwoPi) th -= kTwoPi;
      h.theta.push_back(th);
    }
  }
  return h;
}

LatticeState from_madelung(const HydroState& h) {
  const auto sites = static_cast<std::size_t>(2 * h.half_width + 1);
  if (h.rho.size() != sites || h.theta.size() != sites)
    throw InvalidArgument("hydro state has wrong length");
  std::vector<Complex> amps(sites);
  for (std::size_t j = 0; j < sites; ++j) {
    if (!(h.rho[j] >= 0.0) || !std::isfinite(h.rho[j]))
      throw InvalidArgument("rho must be finite and non-negative at index " +
                            std::to_string(j));
    amps[j] = std::polar(std::sqrt(h.rho[j]), h.theta[j]);
  }
  return {h.half_width, std::move(amps)};
}

LatticeState phase_rotate(const LatticeState& b, double theta) {
  return std::polar(1.0, theta) * b;
}

LatticeState translate(const LatticeState& b, int shift) {
  const int n = b.half_width();
  std::vector<Complex> amps(b.size());
  for (int site = -n; site <= n; ++site) {
    const Complex z = b.at(site);
    if (z == Complex{}) continue;
    const int target = site + shift;
    if (target < -n || target > n)
      throw DoesNotFit("translation by " + std::to_string(shift) +
                       " moves occupied site " + std::to_string(site) +
                       " off the lattice");
    amps[static_cast<std::size_t>(target + n)] = z;
  }
  return {n, std::move(amps)};
}

LatticeState minimizer_state(const MinimizerId& id, int half_width) {
  if (!(id.mass > 0.0) || !std::isfinite(id.mass))
    throw InvalidArgument("minimizer mass must be positive");
  if (std::abs(id.center) > max_center(half_width))
    throw DoesNotFit("minimizer center " + std::to_string(id.center) +
                     " needs |k| <= N-1 = " + std::to_string(max_center(half_width)));
  for (auto s : id.signs)
    if (s != 1 && s != -1) throw InvalidArgument("sign pattern entries must be +-1");
  const Complex phase = std::polar(1.0, id.phase);
  const double side = std::sqrt(3.0 * id.mass / 11.0);
  const double middle = std::sqrt(5.0 * id.mass / 11.0);
  std::vector<Complex> amps(static_cast<std::size_t>(2 * half_width + 1));
  const auto at = [&](int site) -> Complex& {
    return amps[static_cast<std::size_t>(site + half_width)];
  };
  at(id.center - 1) = double(id.signs[0]) * side * phase;
  at(id.center) = double(id.signs[1]) * middle * phase;
  at(id.center + 1) = double(id.signs[2]) * side * phase;
  return {half_width, std::move(amps)};
}

}  // namespace toycascade
