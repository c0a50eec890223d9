#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toycascade/lattice.hpp"

namespace toycascade {

enum class EigenLabel { Negative, Null, Far, Discrete, Unmatched };

std::string to_string(EigenLabel label);

struct SpectralReport {
  double shift = 0.0;
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // column i belongs to eigenvalues[i]
  std::vector<EigenLabel> classification;
  RealVector residuals;  // |A v - lambda v|
  bool catalogue_match = false;

  double residual_max() const;
};

// (14/11) m I + hess H(b*) at the minimizer e^{i theta} S_sigma b*_k(m).
// Throws DoesNotFit when |k| > N-1.
HessianMatrix shifted_operator(int half_width, double m, int k, double theta);
HessianMatrix shifted_operator(const MinimizerId& id, int half_width);

// Cyclic Jacobi on (A + A^T)/2. Throws NotSymmetric when the input
// asymmetry exceeds 1e-10 (relative to max |A_ij| when that exceeds 1) and
// IterationFailure when off-diagonal mass does not vanish within 100 sweeps.
SpectralReport eigen_decompose(const HessianMatrix& a);

// Expected eigenvalue multiset of shifted_operator(N, m, k, .), in units of
// m / 11. The three occupied sites contribute {-28, 0, 12, 40, 60, 88};
// each of k - 2, k + 2 that lies on the lattice adds {2, 26}; every other
// site adds {14, 14}.
std::vector<int> catalogue_elevenths(int half_width, int k);

// Decomposes shifted_operator, labels each eigenpair against the catalogue
// (tolerance 1e-9 m) and sets catalogue_match.
SpectralReport spectral_report(int half_width, double m, int k, double theta);

// The listed eigenvectors (for the in-phase minimizer at theta = 0) with
// their eigenvalues; only vectors supported on the lattice are returned.
struct CatalogueVector {
  std::string name;
  LatticeState vector;
  double eigenvalue;
};
std::vector<CatalogueVector> catalogue_vectors(int half_width, double m, int k);

struct CoercivityResult {
  bool ok = true;
  double min_ratio = INFINITY;  // min <A xi, xi> / |xi|^2 over trials
  std::optional<LatticeState> witness;
};

// Random xi orthogonal to b* and i b*: <A xi, xi> >= (2m/11)|xi|^2 - 1e-10.
CoercivityResult coercivity_check(int half_width, double m, int k, double theta, int trials,
                                  std::uint64_t seed = 1);

// Quadratic form <A xi, xi> in real coordinates.
double quadratic_form(const HessianMatrix& a, const LatticeState& xi);

}  // namespace toycascade
