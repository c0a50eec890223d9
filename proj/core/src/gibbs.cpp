#include "toycascade/gibbs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "toycascade/errors.hpp"
#include "toycascade/rng.hpp"
#include "toycascade/spectral.hpp"

namespace toycascade {

namespace {

constexpr std::array<SignPattern, 4> kSignPatterns{
    SignPattern{1, 1, 1}, SignPattern{-1, 1, 1}, SignPattern{1, 1, -1}, SignPattern{-1, 1, -1}};

double wrap_phase(double th) {
  th = std::fmod(th, kTwoPi);
  if (th < 0.0) th += kTwoPi;
  if (th >= kTwoPi) th = 0.0;
  return th;
}

// H on a raw amplitude array (same stencil as hamiltonian()).
double energy(const std::vector<Complex>& a) {
  double h = 0.0;
  Complex prev_sq{};
  for (const Complex& z : a) {
    const double rho = std::norm(z);
    const Complex zsq = z * z;
    h += 0.5 * rho * rho - 2.0 * (std::conj(zsq) * prev_sq).real();
    prev_sq = zsq;
  }
  return h;
}

}  // namespace

std::vector<LatticeState> sphere_uniform(int half_width, double m, int count,
                                         std::uint64_t seed) {
  if (!(m > 0.0)) throw InvalidArgument("mass must be positive");
  if (count < 0) throw InvalidArgument("count must be >= 0");
  Rng rng = make_rng(seed);
  std::vector<LatticeState> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(sphere_point(half_width, m, rng));
  return out;
}

namespace {

struct Candidate {
  int k;
  int pattern;
  Complex pairing;
};

NearestMinimizer nearest_impl(const LatticeState& b, int k_lo, int k_hi) {
  const int n = b.half_width();
  const double m = mass(b);
  if (!(m > 0.0)) throw InvalidArgument("nearest_minimizer needs mass(b) > 0");
  const double side = std::sqrt(3.0 * m / 11.0);
  const double mid = std::sqrt(5.0 * m / 11.0);

  double best = -1.0, second = -1.0;
  Candidate arg{k_lo, 0, {}};
  for (int k = k_lo; k <= k_hi; ++k) {
    for (int p = 0; p < 4; ++p) {
      const SignPattern& s = kSignPatterns[static_cast<std::size_t>(p)];
      const Complex c = side * s[0] * b.at(k - 1) + mid * b.at(k) + side * s[2] * b.at(k + 1);
      const double a = std::abs(c);
      if (a > best) {
        second = best;
        best = a;
        arg = {k, p, c};
      } else if (a > second) {
        second = a;
      }
    }
  }
  NearestMinimizer nm;
  nm.id.mass = m;
  const double d2_best = std::max(0.0, m + m - 2.0 * best);
  if (best <= 1e-300) {
    nm.id.center = k_lo;
    nm.id.phase = 0.0;
    nm.id.signs = kInPhase;
    nm.unique = false;
  } else {
    nm.id.center = arg.k;
    nm.id.phase = wrap_phase(std::arg(arg.pairing));
    nm.id.signs = kSignPatterns[static_cast<std::size_t>(arg.pattern)];
    const double d2_second = std::max(0.0, m + m - 2.0 * second);
    nm.unique = second < 0.0 || std::sqrt(d2_second) - std::sqrt(d2_best) > 1e-12;
  }
  nm.point = minimizer_state(nm.id, n);
  nm.distance = norm(b - nm.point);
  return nm;
}

}  // namespace

NearestMinimizer nearest_minimizer(const LatticeState& b) {
  const int kmax = max_center(b.half_width());
  return nearest_impl(b, -kmax, kmax);
}

NearestMinimizer nearest_on_center(const LatticeState& b, int k) {
  if (std::abs(k) > max_center(b.half_width()))
    throw DoesNotFit("center " + std::to_string(k) + " outside the admissible range");
  return nearest_impl(b, k, k);
}

LatticeState proj_perp(const LatticeState& b, const NearestMinimizer& nm, Projection mode) {
  const LatticeState u = (1.0 / norm(nm.point)) * nm.point;
  LatticeState xi = b - inner(b, u) * u;
  if (mode == Projection::AlongMinimizerAndPhase) {
    const LatticeState iu = Complex{0.0, 1.0} * u;
    xi = xi - inner(xi, iu) * iu;
  }
  return xi;
}

double g_form(const NearestMinimizer& nm, const LatticeState& xi) {
  return 0.5 * (kLagrangeFactor * nm.id.mass * mass(xi) + inner(hessian_apply(nm.point, xi), xi));
}

double g_value(const LatticeState& b) {
  const NearestMinimizer nm = nearest_minimizer(b);
  if (!nm.unique) throw NonUniqueNearest("g_value: nearest minimizer is not unique");
  return g_form(nm, proj_perp(b, nm));
}

double g_k_value(const LatticeState& b, int k) {
  const NearestMinimizer nm = nearest_on_center(b, k);
  return g_form(nm, proj_perp(b, nm));
}

double g_intrinsic(const LatticeState& b) {
  const NearestMinimizer nm = nearest_minimizer(b);
  return g_form(nm, log_map(nm.point, b));
}

LatticeState log_map(const LatticeState& x, const LatticeState& y) {
  const double m = mass(x);
  if (!(m > 0.0)) throw InvalidArgument("log_map: base point has zero mass");
  if (std::abs(mass(y) - m) > 1e-10 * m)
    throw InvalidArgument("log_map: points are not on the same sphere");
  if (x == y) return LatticeState(x.half_width());
  const double c = std::clamp(inner(x, y) / m, -1.0, 1.0);
  if (c <= -1.0 + 1e-14) throw Antipodal("log_map: antipodal points");
  const LatticeState w = y - c * x;
  const double wn = norm(w);
  if (wn == 0.0) return LatticeState(x.half_width());
  return (std::sqrt(m) * std::acos(c) / wn) * w;
}

LatticeState exp_map(const LatticeState& x, const LatticeState& v) {
  const double r = norm(x);
  const double vn = norm(v);
  if (vn == 0.0) return x;
  const double ang = vn / r;
  return std::cos(ang) * x + (r * std::sin(ang) / vn) * v;
}

double metropolis_accept_prob(double delta_h, double beta) {
  return delta_h <= 0.0 ? 1.0 : std::exp(-beta * delta_h);
}

void SamplerConfig::validate() const {
  if (half_width < 2) throw InvalidArgument("sampler needs N >= 2");
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("mass must be positive");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be >= 0");
  if (n_steps < 1) throw InvalidArgument("n_steps must be >= 1");
  if (burn_in < 0 || burn_in >= n_steps) throw InvalidArgument("need 0 <= burn_in < n_steps");
  if (thin < 1) throw InvalidArgument("thin must be >= 1");
  if (!(proposal_sigma > 0.0)) throw InvalidArgument("proposal_sigma must be > 0");
  if (!(target_accept.first > 0.0 && target_accept.first < target_accept.second &&
        target_accept.second < 1.0))
    throw InvalidArgument("target_accept must satisfy 0 < lo < hi < 1");
  if (symmetry_interval < 0) throw InvalidArgument("symmetry_interval must be >= 0");
}

namespace {

// One Metropolis chain on S(m) working on a raw amplitude array.
class Chain {
 public:
  Chain(const SamplerConfig& cfg, double beta, Rng rng)
      : cfg_(cfg), beta_(beta), sigma_(cfg.proposal_sigma), rng_(std::move(rng)) {
    const LatticeState start = sphere_point(cfg.half_width, cfg.m, rng_);
    amps_.assign(start.amplitudes().begin(), start.amplitudes().end());
    prop_.resize(amps_.size());
    h_ = energy(amps_);
  }

  double h() const { return h_; }
  double beta() const { return beta_; }
  double sigma() const { return sigma_; }
  std::vector<Complex>& amps() { return amps_; }
  void set_state(std::vector<Complex> a, double h) {
    amps_ = std::move(a);
    h_ = h;
  }
  LatticeState state() const { return {cfg_.half_width, amps_}; }

  // Advances one step; returns whether the local proposal was accepted.
  bool step(long index) {
    const bool accepted = local_move();
    if (cfg_.symmetry_interval > 0 && index % cfg_.symmetry_interval == 0) symmetry_moves();
    return accepted;
  }

  void tune(double rate) {
    if (rate < cfg_.target_accept.first) sigma_ *= 0.8;
    if (rate > cfg_.target_accept.second) sigma_ *= 1.25;
  }

  Rng& rng() { return rng_; }

 private:
  bool local_move() {
    const double m = cfg_.m;
    double radial = 0.0;
    for (std::size_t j = 0; j < amps_.size(); ++j) {
      const double re = gauss_(rng_);
      const double im = gauss_(rng_);
      prop_[j] = {re, im};
      radial += re * amps_[j].real() + im * amps_[j].imag();
    }
    radial /= m;
    double sq = 0.0;
    for (std::size_t j = 0; j < amps_.size(); ++j) {
      prop_[j] = amps_[j] + sigma_ * (prop_[j] - radial * amps_[j]);
      sq += std::norm(prop_[j]);
    }
    const double s = std::sqrt(m / sq);
    for (Complex& z : prop_) z *= s;
    const double hp = energy(prop_);
    if (uniform_(rng_) < metropolis_accept_prob(hp - h_, beta_)) {
      amps_.swap(prop_);
      h_ = hp;
      return true;
    }
    return false;
  }

  void symmetry_moves() {
    // Global phase and per-site sign flips leave H unchanged.
    const Complex phase = std::polar(1.0, kTwoPi * uniform_(rng_));
    for (Complex& z : amps_) {
      z *= phase;
      if (uniform_(rng_) < 0.5) z = -z;
    }
    // Cyclic shift by +-1 (an isometry of S(m)); Metropolis on the energy change.
    const std::size_t n = amps_.size();
    if (uniform_(rng_) < 0.5)
      std::rotate_copy(amps_.begin(), amps_.begin() + 1, amps_.end(), prop_.begin());
    else
      std::rotate_copy(amps_.begin(), amps_.begin() + static_cast<std::ptrdiff_t>(n - 1),
                       amps_.end(), prop_.begin());
    const double hp = energy(prop_);
    if (uniform_(rng_) < metropolis_accept_prob(hp - h_, beta_)) {
      amps_.swap(prop_);
      h_ = hp;
    }
  }

  const SamplerConfig& cfg_;
  double beta_;
  double sigma_;
  Rng rng_;
  std::vector<Complex> amps_;
  std::vector<Complex> prop_;
  double h_ = 0.0;
  std::normal_distribution<double> gauss_;
  std::uniform_real_distribution<double> uniform_;
};

constexpr long kTuneWindow = 200;

struct LevelRecorder {
  ChainResult result;
  long accepted = 0;
  long proposed = 0;
  long window_accepted = 0;
  long window_proposed = 0;

  void after_step(Chain& chain, const SamplerConfig& cfg, long s, bool accepted_move) {
    if (s < cfg.burn_in) {
      window_accepted += accepted_move;
      ++window_proposed;
      if (window_proposed == kTuneWindow) {
        chain.tune(static_cast<double>(window_accepted) / kTuneWindow);
        window_accepted = window_proposed = 0;
      }
      return;
    }
    accepted += accepted_move;
    ++proposed;
    if ((s - cfg.burn_in) % cfg.thin == 0) {
      result.samples.push_back(chain.state());
      result.h_values.push_back(chain.h());
    }
  }

  void finish(const Chain& chain, const SamplerConfig& cfg, double beta,
              const ReportOptions& report) {
    result.accept_rate = proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
    result.final_sigma = chain.sigma();
    result.diagnostics = concentration_report(result.samples, cfg.m, beta, report);
  }
};

}  // namespace

ChainResult mcmc_run(const SamplerConfig& cfg, const ReportOptions& report) {
  cfg.validate();
  Chain chain(cfg, cfg.beta, make_rng(cfg.seed, 0));
  LevelRecorder rec;
  const auto kept = static_cast<std::size_t>((cfg.n_steps - cfg.burn_in) / cfg.thin + 1);
  rec.result.samples.reserve(kept);
  rec.result.h_values.reserve(kept);
  for (long s = 0; s < cfg.n_steps; ++s) rec.after_step(chain, cfg, s, chain.step(s));
  rec.finish(chain, cfg, cfg.beta, report);
  return std::move(rec.result);
}

ReplicaResult replica_exchange(const ReplicaConfig& cfg, const ReportOptions& report) {
  if (cfg.betas.empty()) throw InvalidArgument("replica exchange needs at least one beta");
  if (cfg.swap_interval < 1) throw InvalidArgument("swap_interval must be >= 1");
  for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
    SamplerConfig c = cfg.base;
    c.beta = cfg.betas[i];
    c.validate();
  }
  const SamplerConfig& base = cfg.base;
  const std::size_t levels = cfg.betas.size();
  std::vector<Chain> chains;
  chains.reserve(levels);
  for (std::size_t i = 0; i < levels; ++i)
    chains.emplace_back(base, cfg.betas[i], make_rng(base.seed, i));
  std::vector<LevelRecorder> recs(levels);
  Rng swap_rng = make_rng(base.seed, 0x5a5a5a5aULL);
  std::uniform_real_distribution<double> uniform;
  std::vector<long> swap_tried(levels > 1 ? levels - 1 : 0, 0);
  std::vector<long> swap_done(swap_tried.size(), 0);

  auto advance = [&](std::size_t i, long from, long to) {
    for (long s = from; s < to; ++s) recs[i].after_step(chains[i], base, s, chains[i].step(s));
  };
  const int threads = std::clamp(cfg.threads, 1, static_cast<int>(levels));
  long parity = 0;
  for (long s = 0; s < base.n_steps; s += cfg.swap_interval) {
    const long to = std::min(base.n_steps, s + cfg.swap_interval);
    if (threads == 1) {
      for (std::size_t i = 0; i < levels; ++i) advance(i, s, to);
    } else {
      std::vector<std::jthread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (std::size_t i = static_cast<std::size_t>(t); i < levels;
               i += static_cast<std::size_t>(threads))
            advance(i, s, to);
        });
    }
    for (std::size_t i = static_cast<std::size_t>(parity % 2); i + 1 < levels; i += 2) {
      Chain& a = chains[i];
      Chain& b = chains[i + 1];
      ++swap_tried[i];
      const double log_ratio = (a.beta() - b.beta()) * (a.h() - b.h());
      if (log_ratio >= 0.0 || uniform(swap_rng) < std::exp(log_ratio)) {
        std::vector<Complex> sa = a.amps();
        const double ha = a.h();
        a.set_state(b.amps(), b.h());
        b.set_state(std::move(sa), ha);
        ++swap_done[i];
      }
    }
    ++parity;
  }
  ReplicaResult out;
  for (std::size_t i = 0; i < levels; ++i) {
    recs[i].finish(chains[i], base, cfg.betas[i], report);
    out.levels.push_back(std::move(recs[i].result));
  }
  for (std::size_t i = 0; i < swap_tried.size(); ++i)
    out.swap_accept.push_back(swap_tried[i] > 0
                                  ? static_cast<double>(swap_done[i]) / swap_tried[i]
                                  : 0.0);
  return out;
}

std::vector<GaussianDraw> gaussian_reference_draws(int half_width, double m, double beta,
                                                   int count, std::uint64_t seed,
                                                   CenterWeights weights) {
  if (half_width < 2) throw InvalidArgument("reference sampler needs N >= 2");
  if (!(m > 0.0)) throw InvalidArgument("mass must be positive");
  if (!(beta > 0.0) || !(std::sqrt(11.0 / (2.0 * beta * m)) < 0.1 * std::sqrt(m)))
    throw ValidityGuard("Gaussian reference needs sqrt(11/(2 beta m)) < 0.1 sqrt(m); beta = " +
                        std::to_string(beta) + ", m = " + std::to_string(m));
  const int kmax = max_center(half_width);
  const int n_centers = 2 * kmax + 1;

  // Scaled eigenvectors v_i / sqrt(beta lambda_i) for every (k, sigma) at
  // phase 0; other phases follow by rotating xi.
  struct Basis {
    LatticeState point{1};
    std::vector<RealVector> columns;
    double log_det = 0.0;  // sum of log lambda over the positive eigenvalues
  };
  std::vector<Basis> bases;
  for (int k = -kmax; k <= kmax; ++k)
    for (const SignPattern& s : kSignPatterns) {
      const MinimizerId id{m, k, 0.0, s};
      const SpectralReport rep = eigen_decompose(shifted_operator(id, half_width));
      Basis basis;
      basis.point = minimizer_state(id, half_width);
      for (std::size_t c = 0; c < rep.eigenvalues.size(); ++c) {
        const double lam = rep.eigenvalues[c];
        if (lam <= 1e-8 * m) continue;
        basis.log_det += std::log(lam);
        RealVector col(rep.eigenvectors.rows());
        for (std::size_t r = 0; r < col.size(); ++r)
          col[r] = rep.eigenvectors(r, c) / std::sqrt(beta * lam);
        basis.columns.push_back(std::move(col));
      }
      bases.push_back(std::move(basis));
    }

  Rng rng = make_rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> pick_center(0, n_centers - 1);
  // Gaussian mass of well k relative to the others is det^{-1/2}; all sign
  // patterns of one center share the spectrum, so pattern 0 stands in.
  RealVector laplace(static_cast<std::size_t>(n_centers));
  for (std::size_t c = 0; c < laplace.size(); ++c)
    laplace[c] = std::exp(-0.5 * (bases[4 * c].log_det - bases[0].log_det));
  std::discrete_distribution<int> pick_weighted(laplace.begin(), laplace.end());
  std::uniform_int_distribution<int> pick_signs(0, 3);
  std::uniform_real_distribution<double> pick_phase(0.0, kTwoPi);
  const std::size_t dim = static_cast<std::size_t>(2 * (2 * half_width + 1));
  std::vector<GaussianDraw> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const int ci = weights == CenterWeights::Uniform ? pick_center(rng) : pick_weighted(rng);
    const int si = pick_signs(rng);
    const double theta = pick_phase(rng);
    const Basis& basis = bases[static_cast<std::size_t>(ci * 4 + si)];
    RealVector x(dim, 0.0);
    for (const RealVector& col : basis.columns) {
      const double z = gauss(rng);
      for (std::size_t r = 0; r < dim; ++r) x[r] += z * col[r];
    }
    const Complex rot = std::polar(1.0, theta);
    GaussianDraw d;
    d.id = {m, ci - kmax, theta, kSignPatterns[static_cast<std::size_t>(si)]};
    d.xi = rot * LatticeState::from_real(half_width, x);
    const LatticeState raw = rot * basis.point + d.xi;
    d.state = (std::sqrt(m) / norm(raw)) * raw;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<LatticeState> gaussian_reference_sample(int half_width, double m, double beta,
                                                    int count, std::uint64_t seed,
                                                    CenterWeights weights) {
  std::vector<LatticeState> out;
  for (auto& d : gaussian_reference_draws(half_width, m, beta, count, seed, weights))
    out.push_back(std::move(d.state));
  return out;
}

RealVector tangent_frame_vector(const LatticeState& b, const NearestMinimizer& nm) {
  const int n = b.half_width();
  const int k = nm.id.center;
  const Complex unrotate = std::polar(1.0, -nm.id.phase);
  std::vector<Complex> w(b.size());
  for (int site = -n; site <= n; ++site) {
    Complex z = unrotate * b.at(site);
    const int off = site - k;
    if (off >= -1 && off <= 1) z *= static_cast<double>(nm.id.signs[static_cast<std::size_t>(off + 1)]);
    w[static_cast<std::size_t>(site + n)] = z;
  }
  const LatticeState frame(n, std::move(w));
  NearestMinimizer canon = nm;
  canon.id.phase = 0.0;
  canon.id.signs = kInPhase;
  canon.point = minimizer_state(canon.id, n);
  const LatticeState xi = proj_perp(frame, canon, Projection::AlongMinimizerAndPhase);
  RealVector out(static_cast<std::size_t>(2 * (4 * n + 1)), 0.0);
  for (int site = -n; site <= n; ++site) {
    const auto idx = static_cast<std::size_t>(site - k + 2 * n);
    out[2 * idx] = xi.at(site).real();
    out[2 * idx + 1] = xi.at(site).imag();
  }
  return out;
}

ConcentrationReport concentration_report(const std::vector<LatticeState>& samples, double m,
                                         double /*beta*/, const ReportOptions& opts) {
  ConcentrationReport r;
  if (samples.empty()) throw InvalidArgument("concentration_report needs samples");
  const int n = samples.front().half_width();
  const int kmax = max_center(n);
  r.site_histogram.assign(static_cast<std::size_t>(2 * kmax + 1), 0);
  r.phase_histogram.assign(static_cast<std::size_t>(std::max(opts.phase_bins, 1)), 0);
  for (double e : opts.eps) r.cap_fraction[e] = 0.0;
  const std::size_t dim = static_cast<std::size_t>(2 * (4 * n + 1));
  RealVector mean(dim, 0.0);
  Matrix second(opts.covariance ? dim : 0, opts.covariance ? dim : 0);
  const double hstar = minimal_energy(m);
  double g_sum = 0.0;

  for (const LatticeState& b : samples) {
    const NearestMinimizer nm = nearest_minimizer(b);
    ++r.sample_count;
    for (auto& [e, frac] : r.cap_fraction)
      if (nm.distance <= e * std::sqrt(m)) frac += 1.0;
    ++r.site_histogram[static_cast<std::size_t>(nm.id.center + kmax)];
    auto bin = static_cast<std::size_t>(nm.id.phase / kTwoPi *
                                        static_cast<double>(r.phase_histogram.size()));
    r.phase_histogram[std::min(bin, r.phase_histogram.size() - 1)] += 1;
    if (opts.covariance) {
      const RealVector v = tangent_frame_vector(b, nm);
      for (std::size_t i = 0; i < dim; ++i) {
        mean[i] += v[i];
        if (v[i] == 0.0) continue;
        for (std::size_t j = 0; j < dim; ++j) second(i, j) += v[i] * v[j];
      }
    }
    if (nm.unique && nm.distance <= opts.g_window * std::sqrt(m)) {
      const double diff = std::abs(hamiltonian(b) - hstar - g_form(nm, proj_perp(b, nm)));
      r.g_vs_h_max = std::max(r.g_vs_h_max, diff);
      g_sum += diff;
      ++r.g_vs_h_count;
    }
  }
  const double count = static_cast<double>(r.sample_count);
  for (auto& [e, frac] : r.cap_fraction) frac /= count;
  r.g_vs_h_mean = r.g_vs_h_count > 0 ? g_sum / static_cast<double>(r.g_vs_h_count) : 0.0;
  if (opts.covariance) {
    r.tangent_covariance = Matrix(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) mean[i] /= count;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        r.tangent_covariance(i, j) = second(i, j) / count - mean[i] * mean[j];
  }
  return r;
}

PhaseAverage phase_average_test(const std::function<double(const LatticeState&)>& phi,
                                const std::vector<LatticeState>& samples, int n_phases) {
  if (samples.empty()) throw InvalidArgument("phase_average_test needs samples");
  if (n_phases < 1) throw InvalidArgument("n_phases must be >= 1");
  PhaseAverage out;
  double diff_sum = 0.0, diff_sq = 0.0;
  for (const LatticeState& b : samples) {
    const double v = phi(b);
    double avg = 0.0;
    for (int l = 0; l < n_phases; ++l) avg += phi(phase_rotate(b, kTwoPi * l / n_phases));
    avg /= n_phases;
    out.mean += v;
    out.mean_averaged += avg;
    diff_sum += v - avg;
    diff_sq += (v - avg) * (v - avg);
  }
  const double n = static_cast<double>(samples.size());
  out.mean /= n;
  out.mean_averaged /= n;
  const double dm = diff_sum / n;
  out.stderr_diff = n > 1 ? std::sqrt(std::max(0.0, diff_sq / n - dm * dm) / (n - 1)) : 0.0;
  return out;
}

namespace {

void check_cap_direction(const LatticeState& b, const LatticeState& psi) {
  const LatticeState u = (1.0 / norm(b)) * b;
  if (std::abs(mass(psi) - 1.0) > 1e-10) throw InvalidArgument("cap direction must be a unit vector");
  if (std::abs(inner(psi, u)) > 1e-10 || std::abs(inner(psi, Complex{0.0, 1.0} * u)) > 1e-10)
    throw InvalidArgument("cap direction must be orthogonal to b* and i b*");
}

}  // namespace

LatticeState cap_point(const MinimizerId& id, int half_width, double t, const LatticeState& psi) {
  if (!(t >= 0.0 && t < 1.0)) throw InvalidArgument("cap parameter t must lie in [0, 1)");
  const LatticeState b = minimizer_state(id, half_width);
  check_cap_direction(b, psi);
  return (1.0 - t) * b + (std::sqrt(2.0 * t - t * t) * std::sqrt(id.mass)) * psi;
}

double cap_g_function(const MinimizerId& id, int half_width, double t, const LatticeState& psi) {
  const LatticeState b = minimizer_state(id, half_width);
  check_cap_direction(b, psi);
  const double q = kLagrangeFactor * id.mass * mass(psi) + inner(hessian_apply(b, psi), psi);
  return 0.5 * (1.0 - t) * (1.0 - t) * (2.0 * t - t * t) * id.mass * q;
}

double cap_g_ambient(const MinimizerId& id, int half_width, const LatticeState& b) {
  NearestMinimizer nm;
  nm.id = id;
  nm.point = minimizer_state(id, half_width);
  nm.distance = norm(b - nm.point);
  return g_form(nm, proj_perp(b, nm));
}

double integrated_autocorr_time(const RealVector& series) {
  const std::size_t n = series.size();
  if (n < 4) return 1.0;
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
  RealVector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = series[i] - mean;
  double c0 = 0.0;
  for (double v : d) c0 += v * v;
  if (c0 == 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t lag = 1; lag < n / 2; ++lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) c += d[i] * d[i + lag];
    tau += 2.0 * c / c0;
    if (static_cast<double>(lag) >= 5.0 * tau) break;
  }
  return std::max(tau, 1.0);
}

double effective_sample_size(const RealVector& series) {
  return static_cast<double>(series.size()) / integrated_autocorr_time(series);
}

double chi_square_uniform_p(const std::vector<long>& counts, double tau) {
  if (counts.size() < 2) throw InvalidArgument("chi-square needs at least two cells");
  if (!(tau >= 1.0)) throw InvalidArgument("tau must be >= 1");
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), 0L));
  if (total <= 0.0) throw InvalidArgument("chi-square needs a positive total count");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (long c : counts) stat += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat / tau));
}

std::pair<RealVector, RealVector> toy_chain_stationary(const RealVector& energies, double beta) {
  const std::size_t n = energies.size();
  if (n < 2) throw InvalidArgument("toy chain needs at least two states");
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double stay = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      p(i, j) = metropolis_accept_prob(energies[j] - energies[i], beta) / static_cast<double>(n - 1);
      stay -= p(i, j);
    }
    p(i, i) = stay;
  }
  // pi (P - I) = 0 with the last equation replaced by sum(pi) = 1.
  Matrix a(n, n);
  RealVector rhs(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = p(j, i) - (i == j ? 1.0 : 0.0);
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
  rhs[n - 1] = 1.0;
  RealVector pi = solve_dense(std::move(a), std::move(rhs));
  RealVector w(n);
  const double emin = *std::min_element(energies.begin(), energies.end());
  for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(-beta * (energies[i] - emin));
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= z;
  return {pi, w};
}

}  // namespace toycascade
