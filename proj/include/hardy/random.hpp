#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>

#include "hardy/error.hpp"
#include "hardy/exponent.hpp"
#include "hardy/hardy_space.hpp"
#include "hardy/tree.hpp"
#include "hardy/tree_function.hpp"

namespace hardy {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic generator with independent streams: (seed, stream) pairs
/// give the same sequence on every run, so per-trial streams let trials run
/// in any order. Sampling is done on raw 64-bit outputs rather than through
/// <random> distributions, whose algorithms vary between library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(seed ^ splitmix64(stream + 0x5851f42d4c957f2dULL))) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on {0, ..., n-1}; n must be positive.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  double exponential() { return -std::log1p(-uniform()); }

  complex unit_phase() {
    double theta = 2.0 * std::numbers::pi * uniform();
    return {std::cos(theta), std::sin(theta)};
  }

  // Heavy-tailed modulus: half uniform on [0, 2), half Exp(1) scaled by a
  // random power of ten in [1e-2, 1e2].
  double modulus() {
    if (uniform() < 0.5) return 2.0 * uniform();
    return exponential() * std::pow(10.0, uniform(-2.0, 2.0));
  }

  complex value() { return modulus() * unit_phase(); }

 private:
  std::mt19937_64 engine_;
};

enum class Distribution {
  unit_sphere_per_level,  // every level up to the support depth, each with M_p(n,f) = 1
  single_level,           // one random level, all of it
  sparse,                 // a handful of random vertices
};

inline const char* to_string(Distribution d) noexcept {
  switch (d) {
    case Distribution::unit_sphere_per_level: return "unit-sphere-per-level";
    case Distribution::single_level: return "single-level";
    case Distribution::sparse: return "sparse";
  }
  return "?";
}

inline Distribution parse_distribution(std::string_view s) {
  if (s == "unit-sphere-per-level") return Distribution::unit_sphere_per_level;
  if (s == "single-level") return Distribution::single_level;
  if (s == "sparse") return Distribution::sparse;
  throw error(errc::parameter, "unknown distribution '" + std::string(s) + "'");
}

/// A random nonzero function supported on levels 0..support_depth and
/// vanishing below. `p` only matters for unit-sphere-per-level.
inline TreeFunction random_function(const TreePtr& tree, Rng& rng, std::size_t support_depth,
                                    Distribution dist, const Exponent& p = Exponent::inf()) {
  support_depth = std::min(support_depth, tree->depth());
  TreeFunction f(tree, Extension::zero);
  switch (dist) {
    case Distribution::unit_sphere_per_level:
      for (std::size_t n = 0; n <= support_depth; ++n) {
        auto level = f.level(n);
        for (auto& z : level) z = rng.value();
        double m = power_mean(level, p);
        if (m == 0.0) {
          level[0] = 1.0;
          m = power_mean(level, p);
        }
        for (auto& z : level) z /= m;
      }
      break;
    case Distribution::single_level: {
      auto level = f.level(static_cast<std::size_t>(rng.below(support_depth + 1)));
      for (auto& z : level) z = rng.value();
      if (power_mean(level, Exponent::inf()) == 0.0) level[0] = 1.0;
      break;
    }
    case Distribution::sparse: {
      std::size_t count = 1 + static_cast<std::size_t>(rng.below(4));
      for (std::size_t k = 0; k < count; ++k) {
        std::size_t n = static_cast<std::size_t>(rng.below(support_depth + 1));
        std::size_t i = static_cast<std::size_t>(rng.below(tree->level_size(n)));
        f.set({n, i}, rng.value());
      }
      if (f.is_zero()) f.set({0, 0}, 1.0);
      break;
    }
  }
  return f;
}

}  // namespace hardy
