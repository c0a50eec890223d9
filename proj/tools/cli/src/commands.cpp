#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "internal.hpp"
#include "toycascade/dynamics.hpp"
#include "toycascade/errors.hpp"
#include "toycascade/gibbs.hpp"
#include "toycascade/io.hpp"
#include "toycascade/minimization.hpp"
#include "toycascade/rng.hpp"
#include "toycascade/spectral.hpp"
#include "toycascade/stationary.hpp"

namespace toycascade::cli {

namespace {

using nlohmann::json;

const json kEmpty = json::object();

const json& optional_object(const json& j, const std::string& key) {
  return j.contains(key) ? object_field(j, key) : kEmpty;
}

int half_width_field(const json& j) {
  const long n = integer_field(j, "N");
  if (n < 1 || n > 64) throw ConfigError("field 'N' must be in 1..64");
  return static_cast<int>(n);
}

double positive_field(const json& j, const std::string& key, double fallback) {
  const double v = number_field(j, key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("field '" + key + "' must be positive");
  return v;
}

RealVector number_list(const json& j, const std::string& key, RealVector fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError("field '" + key + "' must be a non-empty array");
  RealVector out;
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigError("field '" + key + "' must contain numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string drift_line(const char* name, double drift) {
  // Fixed threshold line so scripts can grep for conservation.
  std::ostringstream s;
  if (drift < 1e-7)
    s << name << "_drift<1e-07";
  else
    s << name << "_drift=" << format_double(drift);
  return s.str();
}

std::string csv_header(int n, const char* lead) {
  std::string h = lead;
  for (int j = -n; j <= n; ++j) h += ",re_" + std::to_string(j) + ",im_" + std::to_string(j);
  return h + "\n";
}

void append_state(std::string& row, const LatticeState& b) {
  for (const Complex& z : b.amplitudes()) {
    row += ',';
    row += format_double(z.real());
    row += ',';
    row += format_double(z.imag());
  }
}

json report_json(const ConcentrationReport& r) {
  json caps = json::object();
  for (const auto& [eps, frac] : r.cap_fraction) caps[format_double(eps)] = frac;
  return {{"cap_fraction", caps},
          {"site_histogram", r.site_histogram},
          {"phase_histogram", r.phase_histogram},
          {"g_vs_h_mean", r.g_vs_h_mean},
          {"g_vs_h_max", r.g_vs_h_max},
          {"g_vs_h_count", r.g_vs_h_count},
          {"sample_count", r.sample_count}};
}

ReportOptions report_options(const json& cfg) {
  ReportOptions ro;
  ro.eps = number_list(cfg, "eps", ro.eps);
  ro.phase_bins = static_cast<int>(integer_field(cfg, "phase_bins", ro.phase_bins));
  if (ro.phase_bins < 1) throw ConfigError("field 'phase_bins' must be >= 1");
  ro.covariance = false;
  return ro;
}

LatticeState initial_state(const json& init, int n, std::uint64_t seed) {
  if (init.contains("state")) {
    LatticeState b = lattice_from_json(init.at("state"));
    if (b.half_width() != n) throw ConfigError("initial state has N different from 'N'");
    return b;
  }
  const std::string preset = string_field(init, "preset", "");
  const double m = positive_field(init, "m", 1.0);
  if (preset == "minimizer") {
    MinimizerId id;
    id.mass = m;
    id.center = static_cast<int>(integer_field(init, "center", 0));
    id.phase = number_field(init, "phase", 0.0);
    return minimizer_state(id, n);
  }
  if (preset == "single_mode") {
    const int site = static_cast<int>(integer_field(init, "site", 0));
    if (std::abs(site) > n) throw ConfigError("single_mode site outside the lattice");
    return LatticeState(n).with(site, std::polar(std::sqrt(m), number_field(init, "phase", 0.0)));
  }
  if (preset == "uniform_random") {
    Rng rng = make_rng(seed);
    return sphere_point(n, m, rng);
  }
  throw ConfigError("initial: expected 'state' or preset minimizer|single_mode|uniform_random, got '" +
                    preset + "'");
}

// Archive rows: beta,H,re_-N,im_-N,...
struct Archive {
  double beta = 0.0;
  std::vector<LatticeState> samples;
};

Archive read_archive(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read archive " + path.string());
  std::string line;
  std::getline(in, line);
  const long columns = std::count(line.begin(), line.end(), ',') + 1;
  if (line.rfind("beta,H,", 0) != 0 || columns < 8 || (columns - 4) % 4 != 0)
    throw ConfigError("archive " + path.string() + " has an unexpected header");
  const int n = static_cast<int>((columns - 4) / 4);
  Archive a;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> v;
    std::istringstream s(line);
    std::string cell;
    while (std::getline(s, cell, ',')) {
      char* end = nullptr;
      v.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str()) throw ConfigError(path.string() + ": bad number on row " + std::to_string(row));
    }
    if (static_cast<long>(v.size()) != columns)
      throw ConfigError(path.string() + ": wrong column count on row " + std::to_string(row));
    a.beta = v[0];
    a.samples.push_back(LatticeState::from_real(n, std::span<const double>(v).subspan(2)));
  }
  if (a.samples.empty()) throw ConfigError("archive " + path.string() + " has no samples");
  return a;
}

}  // namespace

int cmd_simulate(Context& ctx) {
  const json& cfg = ctx.config;
  const int n = half_width_field(cfg);
  const LatticeState b0 = initial_state(object_field(cfg, "initial"), n, ctx.seed);

  const json& ic = optional_object(cfg, "integrator");
  IntegratorConfig ig;
  const std::string scheme = string_field(ic, "scheme", "rk4");
  if (scheme == "rk4")
    ig.scheme = Scheme::RK4;
  else if (scheme == "implicit_midpoint")
    ig.scheme = Scheme::ImplicitMidpoint;
  else
    throw ConfigError("integrator.scheme must be rk4 or implicit_midpoint");
  ig.dt = number_field(ic, "dt", ig.dt);
  ig.t_final = number_field(ic, "t_final", ig.t_final);
  ig.record_stride = static_cast<int>(integer_field(ic, "record_stride", 1));
  ig.newton_tol = number_field(ic, "newton_tol", ig.newton_tol);
  ig.newton_max_iter = static_cast<int>(integer_field(ic, "newton_max_iter", ig.newton_max_iter));
  ig.validate();

  const long max_steps = integer_field(cfg, "max_steps", 100'000'000);
  const double steps = std::round(ig.t_final / ig.dt);
  if (steps > static_cast<double>(max_steps))
    throw BudgetExceeded(format_double(steps) + " steps requested, max_steps is " + std::to_string(max_steps));

  const Trajectory tr = integrate(b0, ig);
  std::ostringstream csv;
  write_trajectory_csv(csv, tr);
  ctx.outputs.write("trajectory.csv", csv.str());
  const json summary{{"H_drift", tr.max_h_drift()},
                     {"M_drift", tr.max_m_drift()},
                     {"steps", static_cast<long>(steps)},
                     {"records", tr.states.size()},
                     {"H0", tr.h_series.front()},
                     {"M0", tr.m_series.front()}};
  ctx.outputs.write("summary.json", summary.dump(2) + "\n");
  ctx.out << drift_line("H", tr.max_h_drift()) << "\n" << drift_line("M", tr.max_m_drift()) << "\n";
  return kOk;
}

int cmd_stationary(Context& ctx) {
  const json& cfg = ctx.config;
  const long max_nodes = integer_field(cfg, "max_nodes", 8);
  if (max_nodes < 1 || max_nodes > 100000) throw ConfigError("field 'max_nodes' must be in 1..100000");
  const double omega = number_field(cfg, "omega", 1.0);

  std::string table = "n,positive,min_rho,mass\n";
  for (int k = 1; k <= max_nodes; ++k) {
    const PhaseLockedProfile p = solve_phase_locked(k, omega);
    const double mass = std::accumulate(p.rho.begin(), p.rho.end(), 0.0);
    table += std::to_string(k) + ',' + (p.positive ? "true" : "false") + ',' +
             format_double(*std::min_element(p.rho.begin(), p.rho.end())) + ',' + format_double(mass) + '\n';
  }
  ctx.outputs.write("positivity.csv", table);
  ctx.out << table;

  if (cfg.contains("profile")) {
    const json& pc = object_field(cfg, "profile");
    const PhaseLockedProfile p =
        solve_phase_locked(static_cast<int>(integer_field(pc, "nodes")), number_field(pc, "omega", omega));
    json out{{"n_nodes", p.n_nodes}, {"omega", p.omega}, {"rho", p.rho}, {"positive", p.positive}};
    if (pc.contains("N"))
      out["state"] = to_json(profile_to_state(p, half_width_field(pc),
                                              static_cast<int>(integer_field(pc, "center", 0)),
                                              number_field(pc, "theta", 0.0)));
    ctx.outputs.write("profile.json", out.dump(2) + "\n");
  }
  return kOk;
}

int cmd_minimize(Context& ctx) {
  const json& cfg = ctx.config;
  const int n = half_width_field(cfg);
  const double m = positive_field(cfg, "m", 1.0);
  const long starts = integer_field(cfg, "starts", 32);
  if (starts < 1) throw ConfigError("field 'starts' must be >= 1");
  MinimizeOptions mo;
  mo.max_iter = static_cast<int>(integer_field(cfg, "max_iter", mo.max_iter));
  mo.grad_tol = positive_field(cfg, "grad_tol", mo.grad_tol);
  mo.threads = ctx.threads;
  const std::string objective = string_field(cfg, "objective", "min");
  if (objective != "min" && objective != "max") throw ConfigError("field 'objective' must be min or max");

  const MinimizeResult r = objective == "min"
                               ? minimize_h_on_sphere(n, m, static_cast<int>(starts), ctx.seed, mo)
                               : maximize_h_on_sphere(n, m, static_cast<int>(starts), ctx.seed, mo);
  const NearestMinimizer nm = nearest_minimizer(r.state);
  json out{{"energy", r.energy},
           {"center", nm.center()},
           {"phase", nm.phase()},
           {"distance_to_Bstar", nm.distance},
           {"iterations", r.iterations},
           {"seed", ctx.seed},
           {"converged", r.converged},
           {"grad_norm", r.grad_norm},
           {"best_start", r.best_start},
           {"state", to_json(r.state)}};
  if (cfg.contains("brute_force")) {
    const json& bf = object_field(cfg, "brute_force");
    const BruteForceResult b = brute_force_search(n, m, static_cast<int>(integer_field(bf, "grid", 30)));
    out["brute_force"] = {{"grid_min", b.grid_min}, {"refined_min", b.refined_min}, {"argmin", b.argmin}};
  }
  ctx.outputs.write("minimize.json", out.dump(2) + "\n");
  ctx.out << "energy " << format_double(r.energy) << " distance_to_Bstar " << format_double(nm.distance)
          << (r.converged ? "" : " (not converged)") << "\n";
  return r.converged ? kOk : kNumericalFailure;
}

int cmd_hessian(Context& ctx) {
  const json& cfg = ctx.config;
  const int n = half_width_field(cfg);
  const double m = positive_field(cfg, "m", 1.0);
  const int k = static_cast<int>(integer_field(cfg, "k", 0));
  const double theta = number_field(cfg, "theta", 0.0);
  const SpectralReport r = spectral_report(n, m, k, theta);
  json labels = json::array();
  for (EigenLabel l : r.classification) labels.push_back(to_string(l));
  json out{{"shift", r.shift},
           {"eigenvalues", r.eigenvalues},
           {"labels", labels},
           {"catalogue_elevenths", catalogue_elevenths(n, k)},
           {"catalogue_match", r.catalogue_match},
           {"residual_max", r.residual_max()}};
  if (const long trials = integer_field(cfg, "coercivity_trials", 0); trials > 0) {
    const CoercivityResult c = coercivity_check(n, m, k, theta, static_cast<int>(trials), ctx.seed);
    out["coercivity"] = {{"ok", c.ok}, {"min_ratio", c.min_ratio}, {"bound", 2.0 * m / 11.0}};
  }
  ctx.outputs.write("hessian.json", out.dump(2) + "\n");
  ctx.out << "catalogue_match=" << (r.catalogue_match ? "true" : "false") << " residual_max "
          << format_double(r.residual_max()) << "\n";
  return kOk;
}

int cmd_sample(Context& ctx) {
  const json& cfg = ctx.config;
  SamplerConfig sc;
  sc.half_width = half_width_field(cfg);
  sc.m = positive_field(cfg, "m", 1.0);
  sc.n_steps = integer_field(cfg, "n_steps", sc.n_steps);
  sc.burn_in = integer_field(cfg, "burn_in", sc.burn_in);
  sc.thin = static_cast<int>(integer_field(cfg, "thin", sc.thin));
  sc.proposal_sigma = number_field(cfg, "proposal_sigma", sc.proposal_sigma);
  sc.symmetry_interval = static_cast<int>(integer_field(cfg, "symmetry_interval", sc.symmetry_interval));
  sc.seed = ctx.seed;
  RealVector betas;
  if (cfg.contains("betas"))
    betas = number_list(cfg, "betas", {});
  else
    betas = {number_field(cfg, "beta")};
  sc.beta = betas.front();
  sc.validate();
  const ReportOptions ro = report_options(cfg);

  const long max_steps = integer_field(cfg, "max_steps", 2'000'000'000);
  const double total = static_cast<double>(sc.n_steps) * static_cast<double>(betas.size());
  if (total > static_cast<double>(max_steps))
    throw BudgetExceeded(format_double(total) + " total steps requested, max_steps is " +
                         std::to_string(max_steps));

  std::vector<ChainResult> levels;
  json swaps = json::array();
  if (betas.size() == 1) {
    levels.push_back(mcmc_run(sc, ro));
  } else {
    ReplicaConfig rc;
    rc.base = sc;
    rc.betas = betas;
    rc.swap_interval = static_cast<int>(integer_field(cfg, "swap_interval", rc.swap_interval));
    rc.threads = ctx.threads;
    ReplicaResult rr = replica_exchange(rc, ro);
    levels = std::move(rr.levels);
    swaps = rr.swap_accept;
  }

  const bool write_samples = bool_field(cfg, "write_samples", true);
  json out_levels = json::array();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const ChainResult& c = levels[i];
    json level{{"beta", betas[i]},
               {"accept_rate", c.accept_rate},
               {"final_sigma", c.final_sigma},
               {"ess_H", effective_sample_size(c.h_values)},
               {"report", report_json(c.diagnostics)}};
    if (write_samples) {
      const std::string name = "samples_" + std::to_string(i) + ".csv";
      std::string csv = csv_header(sc.half_width, "beta,H");
      for (std::size_t s = 0; s < c.samples.size(); ++s) {
        std::string row = format_double(betas[i]) + ',' + format_double(c.h_values[s]);
        append_state(row, c.samples[s]);
        csv += row + '\n';
      }
      ctx.outputs.write(name, csv);
      level["archive"] = name;
    }
    out_levels.push_back(level);
    ctx.out << "beta " << format_double(betas[i]) << " accept " << format_double(c.accept_rate)
            << " cap_fraction(0.3) "
            << (c.diagnostics.cap_fraction.count(0.3) ? format_double(c.diagnostics.cap_fraction.at(0.3)) : "n/a")
            << "\n";
  }
  const json out{{"N", sc.half_width}, {"m", sc.m}, {"levels", out_levels}, {"swap_accept", swaps}};
  ctx.outputs.write("sample.json", out.dump(2) + "\n");
  return kOk;
}

int cmd_report(Context& ctx) {
  const json& cfg = ctx.config;
  if (!cfg.contains("archives") || !cfg.at("archives").is_array() || cfg.at("archives").empty())
    throw ConfigError("field 'archives' must be a non-empty array of paths");
  const ReportOptions ro = report_options(cfg);

  std::vector<std::pair<double, ConcentrationReport>> rows;
  for (const json& p : cfg.at("archives")) {
    if (!p.is_string()) throw ConfigError("archive paths must be strings");
    std::filesystem::path path = p.get<std::string>();
    if (path.is_relative()) path = ctx.config_dir / path;
    const Archive a = read_archive(path);
    const double m = number_field(cfg, "m", mass(a.samples.front()));
    rows.emplace_back(a.beta, concentration_report(a.samples, m, a.beta, ro));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  std::string csv = "beta,samples";
  for (double e : ro.eps) csv += ",cap_" + format_double(e);
  csv += ",site_chi2_p,g_vs_h_mean,g_vs_h_max\n";
  json levels = json::array();
  for (const auto& [beta, r] : rows) {
    csv += format_double(beta) + ',' + std::to_string(r.sample_count);
    for (double e : ro.eps) csv += ',' + format_double(r.cap_fraction.at(e));
    // Naive p-value: samples treated as independent.
    const double p = chi_square_uniform_p(r.site_histogram);
    csv += ',' + format_double(p) + ',' + format_double(r.g_vs_h_mean) + ',' + format_double(r.g_vs_h_max) + '\n';
    json level = report_json(r);
    level["beta"] = beta;
    levels.push_back(level);
  }
  ctx.outputs.write("report.csv", csv);
  ctx.outputs.write("report.json", json{{"levels", levels}}.dump(2) + "\n");
  ctx.out << csv;
  return kOk;
}

}  // namespace toycascade::cli
