#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/random.hpp"
#include "hardy/tree.hpp"
#include "hardy/tree_function.hpp"

// Builtin symbols, named as `NAME[,PARAM...]`:
//   constant,C           psi = C everywhere
//   level-power,ALPHA    psi(v) = c_{|v|}^ALPHA
//   level-decay          psi(v) = 1/(|v|+1)
//   indicator,N          psi = 1 on level N, 0 elsewhere (vanishes below)
//   random,SEED[,D]      random values; with D, only on levels 0..D

namespace hardy::generators {

inline TreeFunction constant(const TreePtr& tree, complex c) {
  return TreeFunction::generate(tree, [c](const VertexId&) { return c; });
}

inline TreeFunction level_power(const TreePtr& tree, double alpha) {
  return TreeFunction::generate(
      tree, [&](const VertexId& v) { return tree->level_size_power(v.level, alpha); });
}

inline TreeFunction level_decay(const TreePtr& tree) {
  return TreeFunction::generate(
      tree, [](const VertexId& v) { return 1.0 / (static_cast<double>(v.level) + 1.0); });
}

inline TreeFunction level_indicator(const TreePtr& tree, std::size_t n) {
  if (n > tree->depth())
    throw error(errc::level_range, "indicator level " + std::to_string(n) + " exceeds tree depth");
  TreeFunction f(tree, Extension::zero);
  for (auto& z : f.level(n)) z = 1.0;
  return f;
}

inline TreeFunction random_symbol(const TreePtr& tree, std::uint64_t seed) {
  Rng rng(seed);
  return TreeFunction::generate(tree, [&](const VertexId&) { return rng.value(); });
}

inline TreeFunction random_symbol(const TreePtr& tree, std::uint64_t seed, std::size_t support_depth) {
  if (support_depth > tree->depth())
    throw error(errc::level_range, "support depth " + std::to_string(support_depth) + " exceeds tree depth");
  Rng rng(seed);
  auto f = TreeFunction::generate(
      tree, [&](const VertexId& v) { return v.level <= support_depth ? rng.value() : complex{}; },
      Extension::zero);
  return f;
}

inline std::vector<std::string> split_spec(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = spec.find(',', start);
    parts.emplace_back(spec.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

namespace detail {

inline double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw error(errc::parameter, "expected a number, got '" + s + "'");
  return v;
}

inline std::uint64_t to_count(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-')
    throw error(errc::parameter, "expected a non-negative integer, got '" + s + "'");
  return v;
}

}  // namespace detail

inline TreeFunction from_spec(const TreePtr& tree, std::string_view spec) {
  auto parts = split_spec(spec);
  const auto& name = parts[0];
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi)
      throw error(errc::parameter, "generator '" + name + "' takes " + std::to_string(lo) +
                                       (lo == hi ? "" : "-" + std::to_string(hi)) + " parameter(s)");
  };
  if (name == "constant") {
    want(1, 1);
    return constant(tree, detail::to_double(parts[1]));
  }
  if (name == "level-power") {
    want(1, 1);
    return level_power(tree, detail::to_double(parts[1]));
  }
  if (name == "level-decay") {
    want(0, 0);
    return level_decay(tree);
  }
  if (name == "indicator") {
    want(1, 1);
    return level_indicator(tree, static_cast<std::size_t>(detail::to_count(parts[1])));
  }
  if (name == "random") {
    want(1, 2);
    auto seed = detail::to_count(parts[1]);
    if (parts.size() == 3) return random_symbol(tree, seed, static_cast<std::size_t>(detail::to_count(parts[2])));
    return random_symbol(tree, seed);
  }
  throw error(errc::parameter, "unknown generator '" + name + "'");
}

}  // namespace hardy::generators
