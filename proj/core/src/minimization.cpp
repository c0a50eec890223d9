#include "toycascade/minimization.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "toycascade/errors.hpp"
#include "toycascade/rng.hpp"

namespace toycascade {

RhoProfile::RhoProfile(RealVector rho) : rho_(std::move(rho)) {
  for (double v : rho_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InvalidArgument("rho profile entries must be finite and >= 0");
  mass_ = std::accumulate(rho_.begin(), rho_.end(), 0.0);
}

std::size_t RhoProfile::argmax() const {
  if (rho_.empty()) throw InvalidArgument("empty rho profile");
  return static_cast<std::size_t>(std::max_element(rho_.begin(), rho_.end()) - rho_.begin());
}

double h_inphase(const RhoProfile& p) {
  const auto& r = p.rho();
  double h = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    h += 0.5 * r[j] * r[j];
    if (j > 0) h -= 2.0 * r[j] * r[j - 1];
  }
  return h;
}

Rational make_rational(long long num, long long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  return {num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

Rational operator+(Rational a, Rational b) {
  return make_rational(a.num * b.den + b.num * a.den, a.den * b.den);
}
Rational operator-(Rational a, Rational b) {
  return make_rational(a.num * b.den - b.num * a.den, a.den * b.den);
}
Rational operator*(Rational a, Rational b) {
  return make_rational(a.num * b.num, a.den * b.den);
}
bool operator==(Rational a, Rational b) { return a.num * b.den == b.num * a.den; }
bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }

Rational h_inphase_exact(const std::vector<Rational>& rho) {
  const Rational half = make_rational(1, 2);
  const Rational two = make_rational(2, 1);
  Rational h{};
  for (std::size_t j = 0; j < rho.size(); ++j) {
    h = h + half * rho[j] * rho[j];
    if (j > 0) h = h - two * rho[j] * rho[j - 1];
  }
  return h;
}

std::vector<Rational> k_mode_profile_exact(int k) {
  switch (k) {
    case 1:
      return {make_rational(1, 1)};
    case 2:
      return {make_rational(1, 2), make_rational(1, 2)};
    case 3:
      return {make_rational(3, 11), make_rational(5, 11), make_rational(3, 11)};
    case 4:
      return {make_rational(1, 8), make_rational(3, 8), make_rational(3, 8), make_rational(1, 8)};
    default:
      throw InvalidArgument("k-mode candidates exist for k = 1..4, got " + std::to_string(k));
  }
}

KModeCandidate k_mode_energy(int k, double m) {
  if (!(m > 0.0)) throw InvalidArgument("mass must be positive");
  const auto exact = k_mode_profile_exact(k);
  RealVector rho;
  for (const Rational& r : exact) rho.push_back(m * r.value());
  return {RhoProfile(std::move(rho)), m * m * h_inphase_exact(exact).value()};
}

namespace {

// One sweep of the induction on indices > n0 of r (in place). The buffer
// carries at least one trailing zero so that k + 1 is always addressable.
void sort_right_side(RealVector& r, std::size_t n0) {
  for (std::size_t n = n0; n + 2 < r.size(); ++n) {
    std::size_t k = n + 1;
    for (std::size_t j = n + 2; j + 1 < r.size(); ++j)
      if (r[j] > r[k]) k = j;
    if (k == n + 1) continue;  // Case 1
    RealVector next = r;
    next[n + 1] = r[k];
    for (std::size_t j = n + 3; j <= k; ++j) next[j] = r[j - 2];
    if (r[k + 1] >= r[k - 1]) {  // Case 2a
      next[n + 2] = r[k + 1];
      next[k + 1] = r[k - 1];
    } else {  // Case 2b
      next[n + 2] = r[k - 1];
      next[k + 1] = r[k + 1];
    }
    r = std::move(next);
  }
}

}  // namespace

RhoProfile rearrange_monotone_sides(const RhoProfile& p) {
  if (p.size() == 0) return p;
  const std::size_t len = p.size();
  const std::size_t peak = p.argmax();
  // Zero padding on both sides keeps every index the induction touches
  // inside the buffer.
  const std::size_t pad = 2;
  RealVector buf(len + 2 * pad, 0.0);
  std::copy(p.rho().begin(), p.rho().end(), buf.begin() + pad);
  const std::size_t centre = peak + pad;
  sort_right_side(buf, centre);
  std::reverse(buf.begin(), buf.end());
  sort_right_side(buf, buf.size() - 1 - centre);
  std::reverse(buf.begin(), buf.end());
  // Non-zero values never move outward past the original window: each side
  // only permutes its own entries and pushes zeros outward.
  RealVector out(buf.begin() + pad, buf.begin() + pad + static_cast<std::ptrdiff_t>(len));
  return RhoProfile(std::move(out));
}

RhoProfile organ_pipe(const RhoProfile& p) {
  RealVector v = p.rho();
  std::sort(v.begin(), v.end(), std::greater<>());
  RealVector out(v.size(), 0.0);
  if (v.empty()) return RhoProfile(std::move(out));
  const std::size_t c = (v.size() - 1) / 2;
  out[c] = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    const std::size_t step = (i + 1) / 2;
    out[i % 2 == 1 ? c + step : c - step] = v[i];
  }
  return RhoProfile(std::move(out));
}

RhoProfile rearrange_nonincreasing(const RhoProfile& p) {
  // Ties keep the earlier candidate, so monotone inputs that are already
  // optimal come back unchanged.
  RhoProfile best = is_nonincreasing_about_max(p) ? p : rearrange_monotone_sides(p);
  RhoProfile pipe = organ_pipe(p);
  if (h_inphase(pipe) < h_inphase(best) - 1e-15 * std::max(1.0, p.mass() * p.mass()))
    best = std::move(pipe);
  return best;
}

bool is_nonincreasing_about_max(const RhoProfile& p, double tol) {
  if (p.size() == 0) return true;
  const auto& r = p.rho();
  const std::size_t c = p.argmax();
  for (std::size_t j = c; j + 1 < r.size(); ++j)
    if (r[j + 1] > r[j] + tol) return false;
  for (std::size_t j = c; j > 0; --j)
    if (r[j - 1] > r[j] + tol) return false;
  return true;
}

bool check_5over3(const RhoProfile& p) { return check_5over3(p, p.argmax()); }

bool check_5over3(const RhoProfile& p, std::size_t center) {
  if (center >= p.size()) throw InvalidArgument("center outside profile");
  const double left = center > 0 ? p[center - 1] : 0.0;
  const double right = center + 1 < p.size() ? p[center + 1] : 0.0;
  return p[center] <= 5.0 / 6.0 * (left + right) + 1e-12;
}

namespace {

std::pair<std::size_t, std::size_t> support(const RhoProfile& p) {
  const auto& r = p.rho();
  std::size_t lo = 0;
  while (lo < r.size() && r[lo] == 0.0) ++lo;
  if (lo == r.size()) return {0, 0};
  std::size_t hi = r.size() - 1;
  while (r[hi] == 0.0) --hi;
  return {lo, hi + 1};
}

}  // namespace

RhoProfile five_mode_reduction(const RhoProfile& p) {
  const auto [lo, hi] = support(p);
  if (hi - lo < 6)
    throw SupportTooSmall("five-mode reduction needs a support of at least 6 sites, got " +
                          std::to_string(hi - lo));
  const std::size_t c = p.argmax();
  const std::size_t d = std::max(c - lo, hi - 1 - c);
  RealVector r = p.rho();
  const double left = c >= d ? r[c - d] : 0.0;
  const double right = c + d < r.size() ? r[c + d] : 0.0;
  if (c >= d) r[c - d] = 0.0;
  if (c + d < r.size()) r[c + d] = 0.0;
  // A removed mass is zero whenever the matching neighbour is off the window.
  if (c > 0) r[c - 1] += 0.5 * left;
  r[c] += 0.5 * (left + right);
  if (c + 1 < r.size()) r[c + 1] += 0.5 * right;
  return RhoProfile(std::move(r));
}

bool five_mode_admissible(const RhoProfile& p) {
  const auto [lo, hi] = support(p);
  if (hi - lo < 6) return false;
  const std::size_t c = p.argmax();
  if (c == 0 || c + 1 >= p.size()) return false;
  return is_nonincreasing_about_max(p) && check_5over3(p, c);
}

namespace {

constexpr double kEps = 2.220446049250313e-16;

struct Objective {
  double sign;  // +1 minimise, -1 maximise
  double value(const LatticeState& b) const { return sign * hamiltonian(b); }
  RealVector gradient(const LatticeState& b) const {
    RealVector g = grad_h(b).to_real();
    for (double& v : g) v *= sign;
    return g;
  }
};

RealVector tangent(RealVector g, std::span<const double> x, double m) {
  const double c = dot(g, x) / m;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= c * x[i];
  return g;
}

RealVector retract(std::span<const double> x, std::span<const double> dir, double step,
                   double m) {
  RealVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - step * dir[i];
  const double s = std::sqrt(m) / norm(y);
  for (double& v : y) v *= s;
  return y;
}

MinimizeResult descend(const LatticeState& start, const Objective& obj,
                       const MinimizeOptions& opts) {
  const int n = start.half_width();
  const double m = mass(start);
  if (!(m > 0.0)) throw InvalidArgument("descent start must have positive mass");
  const double tol = opts.grad_tol * std::pow(m, 1.5);

  RealVector x = start.to_real();
  LatticeState b = start;
  double f = obj.value(b);
  RealVector tg = tangent(obj.gradient(b), x, m);
  double gnorm = norm(tg);
  double step = 1.0 / std::max(1.0, m);
  long it = 0;
  for (; it < opts.max_iter && gnorm > tol; ++it) {
    // Armijo backtracking from the current trial step.
    double alpha = step;
    RealVector y;
    LatticeState cand{n};
    double fc = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      y = retract(x, tg, alpha, m);
      cand = LatticeState::from_real(n, y);
      fc = obj.value(cand);
      // The slack admits steps whose decrease is below the rounding level
      // of H; near the optimum only the gradient still carries information.
      if (fc <= f - 1e-4 * alpha * gnorm * gnorm + 8.0 * kEps * std::abs(f)) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    RealVector tg_new = tangent(obj.gradient(cand), y, m);
    // Barzilai-Borwein trial step for the next iteration.
    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = y[i] - x[i];
      const double d = tg_new[i] - tg[i];
      ss += s * s;
      sy += s * d;
    }
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-6 / std::max(1.0, m), 1e3) : 2.0 * alpha;
    x = std::move(y);
    b = cand;
    f = fc;
    tg = std::move(tg_new);
    gnorm = norm(tg);
  }
  MinimizeResult r;
  r.state = b;
  r.energy = hamiltonian(b);
  r.iterations = it;
  r.grad_norm = gnorm;
  r.converged = gnorm <= tol;
  return r;
}

MinimizeResult multistart(int half_width, double m, int n_starts, std::uint64_t seed,
                          const MinimizeOptions& opts, double sign) {
  if (half_width < 2) throw InvalidArgument("optimizer needs N >= 2");
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("mass must be positive");
  if (n_starts < 1) throw InvalidArgument("n_starts must be >= 1");
  const Objective obj{sign};
  std::vector<MinimizeResult> results(static_cast<std::size_t>(n_starts));
  auto run = [&](int s) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(s));
    results[static_cast<std::size_t>(s)] = descend(sphere_point(half_width, m, rng), obj, opts);
  };
  const int threads = std::clamp(opts.threads, 1, n_starts);
  if (threads == 1) {
    for (int s = 0; s < n_starts; ++s) run(s);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int s = t; s < n_starts; s += threads) run(s);
      });
  }
  int best = 0;
  for (int s = 1; s < n_starts; ++s)
    if (sign * results[static_cast<std::size_t>(s)].energy <
        sign * results[static_cast<std::size_t>(best)].energy)
      best = s;
  MinimizeResult r = results[static_cast<std::size_t>(best)];
  r.seed = seed;
  r.best_start = best;
  return r;
}

}  // namespace

MinimizeResult minimize_h_on_sphere(int half_width, double m, int n_starts, std::uint64_t seed,
                                    const MinimizeOptions& opts) {
  return multistart(half_width, m, n_starts, seed, opts, 1.0);
}

MinimizeResult maximize_h_on_sphere(int half_width, double m, int n_starts, std::uint64_t seed,
                                    const MinimizeOptions& opts) {
  return multistart(half_width, m, n_starts, seed, opts, -1.0);
}

MinimizeResult descend_from(const LatticeState& start, const MinimizeOptions& opts) {
  return descend(start, Objective{1.0}, opts);
}

RealVector project_to_simplex(RealVector x, double total) {
  if (x.empty()) return x;
  RealVector u = x;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - total) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) tau = t;
  }
  for (double& v : x) v = std::max(v - tau, 0.0);
  return x;
}

namespace {

double h_inphase_raw(const RealVector& r) {
  double h = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    h += 0.5 * r[j] * r[j];
    if (j > 0) h -= 2.0 * r[j] * r[j - 1];
  }
  return h;
}

// Enumerates all compositions of `grid` into `parts` non-negative parts.
template <class F>
void for_each_composition(int parts, int grid, std::vector<int>& cur, int slot, int left,
                          F& visit) {
  if (slot == parts - 1) {
    cur[static_cast<std::size_t>(slot)] = left;
    visit(cur);
    return;
  }
  for (int v = 0; v <= left; ++v) {
    cur[static_cast<std::size_t>(slot)] = v;
    for_each_composition(parts, grid, cur, slot + 1, left - v, visit);
  }
}

}  // namespace

BruteForceResult brute_force_search(int half_width, double m, int grid) {
  if (half_width < 1) throw InvalidArgument("N must be >= 1");
  if (!(m > 0.0)) throw InvalidArgument("mass must be positive");
  if (grid < 1) throw InvalidArgument("grid must be >= 1");
  if (half_width > 3 || grid > 40)
    throw BudgetExceeded("brute_force_min is limited to N <= 3 and grid <= 40 (got N = " +
                         std::to_string(half_width) + ", grid = " + std::to_string(grid) + ")");
  const int parts = 2 * half_width + 1;
  const double h = m / grid;
  std::vector<int> cur(static_cast<std::size_t>(parts));
  RealVector rho(static_cast<std::size_t>(parts));
  BruteForceResult out;
  out.grid_min = INFINITY;
  auto visit = [&](const std::vector<int>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) rho[i] = h * c[i];
    const double e = h_inphase_raw(rho);
    if (e < out.grid_min) {
      out.grid_min = e;
      out.argmin = rho;
    }
  };
  for_each_composition(parts, grid, cur, 0, grid, visit);

  // Projected gradient on the simplex; the quadratic form has spectral
  // radius <= 5, so a step of 0.2 is a safe descent step.
  RealVector x = out.argmin;
  double fx = h_inphase_raw(x);
  for (int it = 0; it < 200000; ++it) {
    RealVector g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      g[j] = x[j];
      if (j > 0) g[j] -= 2.0 * x[j - 1];
      if (j + 1 < x.size()) g[j] -= 2.0 * x[j + 1];
    }
    RealVector y = x;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] -= 0.2 * g[j];
    y = project_to_simplex(std::move(y), m);
    const double fy = h_inphase_raw(y);
    double move = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) move = std::max(move, std::abs(y[j] - x[j]));
    if (fy > fx) break;
    x = std::move(y);
    fx = fy;
    if (move < 1e-15 * std::max(1.0, m)) break;
  }
  out.refined_min = fx;
  out.argmin = x;
  return out;
}

double brute_force_min(int half_width, double m, int grid) {
  return brute_force_search(half_width, m, grid).refined_min;
}

}  // namespace toycascade
