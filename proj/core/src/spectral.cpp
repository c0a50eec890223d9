#include "toycascade/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "toycascade/errors.hpp"
#include "toycascade/rng.hpp"

namespace toycascade {

std::string to_string(EigenLabel label) {
  switch (label) {
    case EigenLabel::Negative:
      return "negative";
    case EigenLabel::Null:
      return "null";
    case EigenLabel::Far:
      return "far";
    case EigenLabel::Discrete:
      return "discrete";
    case EigenLabel::Unmatched:
      return "unmatched";
  }
  return "unmatched";
}

double SpectralReport::residual_max() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

HessianMatrix shifted_operator(const MinimizerId& id, int half_width) {
  const LatticeState b = minimizer_state(id, half_width);
  HessianMatrix a = hessian_h(b);
  const double shift = kLagrangeFactor * id.mass;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += shift;
  return a;
}

HessianMatrix shifted_operator(int half_width, double m, int k, double theta) {
  return shifted_operator(MinimizerId{m, k, theta, kInPhase}, half_width);
}

SpectralReport eigen_decompose(const HessianMatrix& input) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw NotSymmetric("eigen_decompose: matrix is not square");
  const double scale = std::max(1.0, input.max_abs());
  if (input.max_asymmetry() > 1e-10 * scale)
    throw NotSymmetric("eigen_decompose: asymmetry exceeds 1e-10");

  Matrix a = input;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  Matrix v = Matrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  const double target = 1e-15 * scale * static_cast<double>(std::max<std::size_t>(n, 1));
  int sweep = 0;
  for (; sweep < 100 && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  if (off_norm() > target * 1e3)
    throw IterationFailure("Jacobi eigensolver did not converge in 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });

  SpectralReport r;
  r.eigenvalues.resize(n);
  r.eigenvectors = Matrix(n, n);
  r.residuals.resize(n);
  r.classification.assign(n, EigenLabel::Unmatched);
  for (std::size_t c = 0; c < n; ++c) {
    r.eigenvalues[c] = a(order[c], order[c]);
    for (std::size_t k = 0; k < n; ++k) r.eigenvectors(k, c) = v(k, order[c]);
  }
  RealVector col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t k = 0; k < n; ++k) col[k] = r.eigenvectors(k, c);
    RealVector av = input.apply(col);
    double res = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = av[k] - r.eigenvalues[c] * col[k];
      res += d * d;
    }
    r.residuals[c] = std::sqrt(res);
  }
  return r;
}

std::vector<int> catalogue_elevenths(int half_width, int k) {
  if (std::abs(k) > max_center(half_width))
    throw DoesNotFit("catalogue: center outside the admissible range");
  std::vector<int> vals{-28, 0, 12, 40, 60, 88};
  int far_sites = 2 * half_width + 1 - 3;
  for (int site : {k - 2, k + 2}) {
    if (site < -half_width || site > half_width) continue;
    vals.push_back(2);
    vals.push_back(26);
    --far_sites;
  }
  for (int i = 0; i < far_sites; ++i) {
    vals.push_back(14);
    vals.push_back(14);
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

SpectralReport spectral_report(int half_width, double m, int k, double theta) {
  SpectralReport r = eigen_decompose(shifted_operator(half_width, m, k, theta));
  r.shift = kLagrangeFactor * m;
  const auto expected = catalogue_elevenths(half_width, k);
  const double tol = 1e-9 * m;
  r.catalogue_match = expected.size() == r.eigenvalues.size();
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    const double lam = r.eigenvalues[i];
    const auto hit = std::find_if(expected.begin(), expected.end(), [&](int e) {
      return std::abs(lam - m * e / 11.0) <= tol;
    });
    if (hit == expected.end()) {
      r.classification[i] = EigenLabel::Unmatched;
    } else if (*hit < 0) {
      r.classification[i] = EigenLabel::Negative;
    } else if (*hit == 0) {
      r.classification[i] = EigenLabel::Null;
    } else if (*hit == 14) {
      r.classification[i] = EigenLabel::Far;
    } else {
      r.classification[i] = EigenLabel::Discrete;
    }
    if (i < expected.size() && std::abs(lam - m * expected[i] / 11.0) > tol)
      r.catalogue_match = false;
  }
  return r;
}

std::vector<CatalogueVector> catalogue_vectors(int half_width, double m, int k) {
  if (std::abs(k) > max_center(half_width))
    throw DoesNotFit("catalogue: center outside the admissible range");
  const Complex one{1.0, 0.0}, i{0.0, 1.0};
  auto unit = [&](int site, Complex v) { return LatticeState(half_width).with(site, v); };
  std::vector<CatalogueVector> out;
  for (int off : {-2, 2}) {
    const int site = k + off;
    if (site < -half_width || site > half_width) continue;
    const std::string tag = "e_" + std::to_string(off);
    out.push_back({tag, unit(site, one), 2.0 * m / 11.0});
    out.push_back({"i " + tag, unit(site, i), 26.0 * m / 11.0});
  }
  const double r53 = std::sqrt(5.0 / 3.0);
  for (Complex ph : {one, i}) {
    const bool im = ph == i;
    const std::string pre = im ? "i " : "";
    out.push_back({pre + "(e_1 - e_-1)", unit(k + 1, ph) - unit(k - 1, ph),
                   (im ? 40.0 : 12.0) * m / 11.0});
    out.push_back({pre + "(sqrt(5/3)(e_1 + e_-1) - 2 e_0)",
                   r53 * (unit(k + 1, ph) + unit(k - 1, ph)) - 2.0 * unit(k, ph),
                   (im ? 88.0 : 60.0) * m / 11.0});
  }
  const LatticeState b = minimizer_state(MinimizerId{m, k, 0.0, kInPhase}, half_width);
  out.push_back({"b*", b, -28.0 * m / 11.0});
  out.push_back({"i b*", i * b, 0.0});
  return out;
}

double quadratic_form(const HessianMatrix& a, const LatticeState& xi) {
  const RealVector x = xi.to_real();
  return dot(a.apply(x), x);
}

CoercivityResult coercivity_check(int half_width, double m, int k, double theta, int trials,
                                  std::uint64_t seed) {
  const MinimizerId id{m, k, theta, kInPhase};
  const HessianMatrix a = shifted_operator(id, half_width);
  const LatticeState b = minimizer_state(id, half_width);
  const LatticeState u = (1.0 / norm(b)) * b;
  const LatticeState iu = Complex{0.0, 1.0} * u;
  Rng rng = make_rng(seed);
  CoercivityResult r;
  for (int t = 0; t < trials; ++t) {
    LatticeState xi = sphere_point(half_width, 1.0, rng);
    xi = xi - inner(xi, u) * u;
    xi = xi - inner(xi, iu) * iu;
    const double n2 = mass(xi);
    if (n2 == 0.0) continue;
    const double q = quadratic_form(a, xi);
    r.min_ratio = std::min(r.min_ratio, q / n2);
    if (q < 2.0 * m / 11.0 * n2 - 1e-10) {
      r.ok = false;
      if (!r.witness) r.witness = xi;
    }
  }
  return r;
}

}  // namespace toycascade
