#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "toycascade/matrix.hpp"

namespace toycascade {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Amplitudes b_j on the finite lattice j = -N..N. Sites outside the lattice
// read as zero (Dirichlet boundary b_{-(N+1)} = b_{N+1} = 0) and are never
// stored. Instances are immutable; every operation returns a new state.
class LatticeState {
 public:
  // Zero state on 2N+1 sites.
  explicit LatticeState(int half_width);
  // Throws InvalidArgument on size mismatch or non-finite entries.
  LatticeState(int half_width, std::vector<Complex> amps);

  // Interleaved real coordinates (a_{-N}, b_{-N}, ..., a_N, b_N).
  static LatticeState from_real(int half_width, std::span<const double> coords);

  int half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::size_t real_dim() const noexcept { return 2 * amps_.size(); }
  bool contains(int site) const noexcept {
    return site >= -half_width_ && site <= half_width_;
  }

  Complex at(int site) const noexcept {
    return contains(site) ? amps_[static_cast<std::size_t>(site + half_width_)]
                          : Complex{};
  }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }

  RealVector to_real() const;

  // Copy with a single amplitude replaced.
  LatticeState with(int site, Complex value) const;

  friend LatticeState operator+(const LatticeState& a, const LatticeState& b);
  friend LatticeState operator-(const LatticeState& a, const LatticeState& b);
  friend LatticeState operator*(Complex s, const LatticeState& a);
  friend LatticeState operator*(double s, const LatticeState& a);
  friend bool operator==(const LatticeState&, const LatticeState&) = default;

 private:
  int half_width_;
  std::vector<Complex> amps_;
};

// Madelung variables b_j = sqrt(rho_j) exp(i theta_j).
struct HydroState {
  int half_width = 0;
  RealVector rho;
  RealVector theta;
};

// Relative signs of the three occupied sites (k-1, k, k+1). The energy only
// depends on b_j^2, so flipping any single amplitude is a symmetry; the
// canonical pattern has +1 in the middle and the global sign lives in the
// phase.
using SignPattern = std::array<std::int8_t, 3>;
inline constexpr SignPattern kInPhase{1, 1, 1};

// One point e^{i phase} S b_k(mass) of the minimizer set.
struct MinimizerId {
  double mass = 1.0;
  int center = 0;
  double phase = 0.0;
  SignPattern signs = kInPhase;
};

using HessianMatrix = Matrix;

// Minimal energy on the mass sphere, -(7/22) m^2.
inline constexpr double minimal_energy(double mass) { return -7.0 / 22.0 * mass * mass; }
// grad H(b*) = -kLagrangeFactor * m * b* at every minimizer.
inline constexpr double kLagrangeFactor = 14.0 / 11.0;

// Real pairing <u, v> = Re sum_j u_j conj(v_j); u and i*u are orthogonal.
double inner(const LatticeState& u, const LatticeState& v);
// Complex pairing sum_j u_j conj(v_j).
Complex complex_pairing(const LatticeState& u, const LatticeState& v);
double norm(const LatticeState& u);

double mass(const LatticeState& b);
double hamiltonian(const LatticeState& b);

// Gradient convention: grad_h(b)_j = 2 dH/d(conj b_j)
//   = 2 (|b_j|^2 b_j - 2 conj(b_j) (b_{j-1}^2 + b_{j+1}^2)),
// so that (Re, Im) of entry j are dH/da_j and dH/db_j in the real
// coordinates b_j = a_j + i b_j, and d/dlambda H(b + lambda xi) = <grad_h(b), xi>.
// With this convention grad_h(b*) = -(14/11) m b* at a minimizer.
LatticeState grad_h(const LatticeState& b);

// Real Hessian in interleaved coordinates, dimension 4N+2.
HessianMatrix hessian_h(const LatticeState& b);
// Hessian-vector product in complex form (same convention as grad_h).
LatticeState hessian_apply(const LatticeState& b, const LatticeState& xi);
// d^3/dlambda^3 H(b + lambda xi) at lambda = 0.
double third_directional_derivative(const LatticeState& b, const LatticeState& xi);

HydroState to_madelung(const LatticeState& b);
// Throws InvalidArgument on negative or non-finite rho.
LatticeState from_madelung(const HydroState& h);

LatticeState phase_rotate(const LatticeState& b, double theta);

// Shift every amplitude by `shift` sites; throws DoesNotFit when occupied
// sites would leave the lattice.
LatticeState translate(const LatticeState& b, int shift);

// The three-mode minimizer. Throws DoesNotFit when |center| > N-1 and
// InvalidArgument for non-positive mass or signs outside {-1, +1}.
LatticeState minimizer_state(const MinimizerId& id, int half_width);

// Largest admissible |center| for the minimizer set on half-width N.
inline constexpr int max_center(int half_width) { return half_width - 1; }

}  // namespace toycascade
