#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "toycascade/lattice.hpp"

namespace toycascade {

// i.i.d. uniform points on S(m).
std::vector<LatticeState> sphere_uniform(int half_width, double m, int count, std::uint64_t seed);

struct NearestMinimizer {
  MinimizerId id;  // mass = mass(b)
  LatticeState point{1};
  double distance = 0.0;
  bool unique = true;

  int center() const { return id.center; }
  double phase() const { return id.phase; }
};

// Closest point of the minimizer set of mass(b): for each center k and sign
// pattern sigma the optimal phase is arg of the complex pairing <b, S b*_k>,
// and |b - point|^2 = |b|^2 + m - 2 |<b, S b*_k>|. Ties (within 1e-12) go to
// the smallest k and are flagged unique = false; a state with zero overlap
// everywhere returns the smallest center, phase 0, unique = false.
NearestMinimizer nearest_minimizer(const LatticeState& b);
// Restricted to center k (all sign patterns).
NearestMinimizer nearest_on_center(const LatticeState& b, int k);

enum class Projection {
  // Remove the component along u = point / |point| only.
  AlongMinimizer,
  // Also remove the component along i u (the phase direction).
  AlongMinimizerAndPhase,
};

LatticeState proj_perp(const LatticeState& b, const NearestMinimizer& nm,
                       Projection mode = Projection::AlongMinimizer);

// 1/2 <A xi, xi> with A = (14/11) M(b) I + hess H(point) and xi = proj_perp.
// g_value throws NonUniqueNearest on tie states.
double g_value(const LatticeState& b);
double g_k_value(const LatticeState& b, int k);
// Same quadratic form with xi = log_map(point, b).
double g_intrinsic(const LatticeState& b);
double g_form(const NearestMinimizer& nm, const LatticeState& xi);

// Log map on the sphere of radius sqrt(m): tangent vector at x of length
// sqrt(m) arccos(<x, y>/m) pointing towards y. Throws Antipodal.
LatticeState log_map(const LatticeState& x, const LatticeState& y);
LatticeState exp_map(const LatticeState& x, const LatticeState& v);

double metropolis_accept_prob(double delta_h, double beta);

struct SamplerConfig {
  int half_width = 4;
  double m = 1.0;
  double beta = 0.0;
  long n_steps = 100000;
  long burn_in = 10000;
  int thin = 10;
  double proposal_sigma = 0.1;
  std::uint64_t seed = 1;
  std::pair<double, double> target_accept{0.3, 0.5};
  // Exact-symmetry moves (global phase, per-site sign flips, cyclic shift)
  // every symmetry_interval steps; 0 disables them.
  int symmetry_interval = 10;

  void validate() const;
};

struct ConcentrationReport {
  std::map<double, double> cap_fraction;  // eps (in units of sqrt(m)) -> fraction
  std::vector<long> site_histogram;       // k = -N+1 .. N-1
  std::vector<long> phase_histogram;      // equal bins over [0, 2 pi)
  Matrix tangent_covariance;              // dimension 2(4N+1), offsets -2N..2N
  double g_vs_h_max = 0.0;
  double g_vs_h_mean = 0.0;
  long g_vs_h_count = 0;
  long sample_count = 0;
};

struct ChainResult {
  std::vector<LatticeState> samples;
  RealVector h_values;
  double accept_rate = 0.0;
  double final_sigma = 0.0;
  ConcentrationReport diagnostics;
};

struct ReportOptions {
  std::vector<double> eps{0.1, 0.2, 0.3, 0.5};
  int phase_bins = 16;
  bool covariance = true;
  double g_window = 0.2;  // in units of sqrt(m)
};

ChainResult mcmc_run(const SamplerConfig& cfg, const ReportOptions& report = {});

struct ReplicaConfig {
  SamplerConfig base;  // beta is ignored; seed drives every stream
  std::vector<double> betas;
  int swap_interval = 10;
  int threads = 1;
};

struct ReplicaResult {
  std::vector<ChainResult> levels;  // ordered as betas
  std::vector<double> swap_accept;  // per adjacent pair
};

// Parallel tempering: one chain per beta, adjacent swaps (alternating even
// and odd pairs) every swap_interval steps. Samples are recorded per level.
ReplicaResult replica_exchange(const ReplicaConfig& cfg, const ReportOptions& report = {});

struct GaussianDraw {
  LatticeState state{1};
  MinimizerId id;
  LatticeState xi{1};
};

enum class CenterWeights {
  // Every center equally likely.
  Uniform,
  // Center k with probability proportional to det'^{-1/2} of its shifted
  // operator (product over the positive eigenvalues). Edge centers lose the
  // soft 2m/11 mode and carry about half the weight of interior ones.
  Laplace,
};

// Center k drawn per `weights`, theta uniform, sign pattern uniform, then
// xi = sum_{lambda_i > 0} z_i / sqrt(beta lambda_i) v_i over the eigenpairs of
// the shifted operator, and state = sqrt(m) (b* + xi) / |b* + xi|.
// Throws ValidityGuard unless sqrt(11 / (2 beta m)) < 0.1 sqrt(m).
std::vector<GaussianDraw> gaussian_reference_draws(int half_width, double m, double beta,
                                                   int count, std::uint64_t seed,
                                                   CenterWeights weights = CenterWeights::Uniform);
std::vector<LatticeState> gaussian_reference_sample(int half_width, double m, double beta,
                                                    int count, std::uint64_t seed,
                                                    CenterWeights weights = CenterWeights::Uniform);

ConcentrationReport concentration_report(const std::vector<LatticeState>& samples, double m,
                                         double beta, const ReportOptions& opts = {});

// Fluctuation of b in the frame of its nearest minimizer: rotate by
// e^{-i theta}, undo the sign pattern, subtract the canonical minimizer, remove
// the components along u and i u, and index by offset from the center.
RealVector tangent_frame_vector(const LatticeState& b, const NearestMinimizer& nm);

struct PhaseAverage {
  double mean = 0.0;           // mean of phi over samples
  double mean_averaged = 0.0;  // mean of the 64-phase average of phi
  double stderr_diff = 0.0;    // naive standard error of the paired difference
};
PhaseAverage phase_average_test(const std::function<double(const LatticeState&)>& phi,
                                const std::vector<LatticeState>& samples, int n_phases = 64);

// Cap coordinates around b* = minimizer_state(id): b = (1 - t) b* + sqrt(2t - t^2)
// sqrt(m) psi with psi a unit vector orthogonal to b* and i b*.
LatticeState cap_point(const MinimizerId& id, int half_width, double t, const LatticeState& psi);
// 1/2 (1 - t)^2 (2t - t^2) m <A psi, psi>.
double cap_g_function(const MinimizerId& id, int half_width, double t, const LatticeState& psi);
// Ambient G at a cap point (projection along the known b*).
double cap_g_ambient(const MinimizerId& id, int half_width, const LatticeState& b);

// Sokal-windowed integrated autocorrelation time (>= 1) and n / tau.
double integrated_autocorr_time(const RealVector& series);
double effective_sample_size(const RealVector& series);

// Pearson chi-square against equal cell probabilities, with the statistic
// divided by tau to account for serial correlation. Returns the p-value.
double chi_square_uniform_p(const std::vector<long>& counts, double tau = 1.0);

// Exhaustive detailed-balance check: a chain on states with the given
// energies, uniform proposal over the other states and the Metropolis rule.
// Returns (stationary distribution, Boltzmann weights), both normalized.
std::pair<RealVector, RealVector> toy_chain_stationary(const RealVector& energies, double beta);

}  // namespace toycascade
