#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "toycascade/lattice.hpp"

namespace toycascade {

// SplitMix64 step; used to derive independent stream seeds from
// (seed, stream) so that multistart runs and replica chains replay exactly.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

// Uniform point on S(m): isotropic Gaussian in the 4N+2 real coordinates,
// rescaled to norm sqrt(m).
inline LatticeState sphere_point(int half_width, double m, Rng& rng) {
  std::normal_distribution<double> gauss;
  const auto sites = static_cast<std::size_t>(2 * half_width + 1);
  std::vector<Complex> amps(sites);
  double sq = 0.0;
  while (sq == 0.0) {
    sq = 0.0;
    for (Complex& z : amps) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z = {re, im};
      sq += re * re + im * im;
    }
  }
  const double s = std::sqrt(m / sq);
  for (Complex& z : amps) z *= s;
  return {half_width, std::move(amps)};
}

}  // namespace toycascade
