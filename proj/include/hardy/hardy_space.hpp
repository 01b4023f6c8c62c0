#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/exponent.hpp"
#include "hardy/tree.hpp"
#include "hardy/tree_function.hpp"

namespace hardy {

inline constexpr double default_tolerance = 1e-9;

/// Power mean of the moduli over one level: ((1/c) sum |z|^p)^(1/p), or the
/// maximum modulus for p = inf.
///
/// The sum is taken over |z|/m with m the level maximum, then rescaled by m,
/// so extreme values or large p neither overflow nor flush to zero.
inline double power_mean(std::span<const complex> level, const Exponent& p) {
  double m = 0.0;
  for (auto z : level) m = std::max(m, std::abs(z));
  if (p.is_inf() || m == 0.0) return m;
  double sum = 0.0;
  for (auto z : level) sum += std::pow(std::abs(z) / m, p.value());
  return m * std::pow(sum / static_cast<double>(level.size()), 1.0 / p.value());
}

// M_p(n, f).
inline double level_mean(const TreeFunction& f, const Exponent& p, std::size_t n) {
  if (n > f.tree().depth())
    throw error(errc::level_range, "level " + std::to_string(n) + " exceeds tree depth " +
                                       std::to_string(f.tree().depth()));
  return power_mean(f.level(n), p);
}

struct LevelMeans {
  Exponent p;
  std::vector<double> means;
};

inline LevelMeans level_means(const TreeFunction& f, const Exponent& p) {
  LevelMeans out{p, {}};
  out.means.reserve(f.tree().depth() + 1);
  for (std::size_t n = 0; n <= f.tree().depth(); ++n) out.means.push_back(power_mean(f.level(n), p));
  return out;
}

/// Truncated supremum of the level means. `exact` holds when the function is
/// known to vanish below the truncation; otherwise `value` is a lower bound
/// for the norm on the full tree.
struct NormResult {
  double value = 0.0;
  bool exact = false;
  std::size_t depth = 0;
  std::size_t argmax_level = 0;
};

inline NormResult tp_norm(const TreeFunction& f, const Exponent& p) {
  NormResult r;
  r.depth = f.tree().depth();
  r.exact = f.finitely_supported();
  for (std::size_t n = 0; n <= r.depth; ++n) {
    double m = power_mean(f.level(n), p);
    if (m > r.value) {
      r.value = m;
      r.argmax_level = n;
    }
  }
  return r;
}

// Evidence for membership in the little space: the deepest level means.
struct TailReport {
  std::size_t first_level = 0;
  std::vector<double> means;
  double tail_max = 0.0;
  bool decreasing = false;  // strictly decreasing until it reaches 0
  bool clamped = false;     // the requested window exceeded depth + 1
  std::size_t requested_window = 0;
};

// True when each entry is strictly below its predecessor, or both are 0.
inline bool decreasing_to_zero(std::span<const double> xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i - 1] == 0.0 ? xs[i] != 0.0 : !(xs[i] < xs[i - 1])) return false;
  }
  return true;
}

inline TailReport little_space_tail(const TreeFunction& f, const Exponent& p, std::size_t window) {
  if (window == 0) throw error(errc::parameter, "window must be >= 1");
  const std::size_t levels = f.tree().depth() + 1;
  TailReport r;
  r.requested_window = window;
  r.clamped = window > levels;
  window = std::min(window, levels);
  r.first_level = levels - window;
  for (std::size_t n = r.first_level; n < levels; ++n) {
    r.means.push_back(power_mean(f.level(n), p));
    r.tail_max = std::max(r.tail_max, r.means.back());
  }
  r.decreasing = decreasing_to_zero(r.means);
  return r;
}

/// c_{|v|}^(1/p) ||f||_p - |f(v)|, which the pointwise growth bound says is
/// non-negative whenever the norm is exact.
inline double growth_bound_margin(const TreeFunction& f, const Exponent& p, const VertexId& v) {
  if (p.is_inf()) throw error(errc::unsupported_exponent, "growth bound needs a finite exponent");
  double norm = tp_norm(f, p).value;
  return f.tree().level_size_power(v.level, p.reciprocal()) * norm - std::abs(f(v));
}

/// The five level quantities
///   M_inf/c^(1/p) <= c^-(1/p-1/q) M_q <= M_p <= M_q <= M_inf
/// for 0 < p < q < inf, and whether they are ordered within `rel_tol`.
struct ChainResult {
  std::array<double, 5> values{};
  bool holds = false;
};

inline ChainResult inequality_chain(const TreeFunction& f, const Exponent& p, const Exponent& q,
                                    std::size_t n, double rel_tol = default_tolerance) {
  if (p.is_inf() || q.is_inf()) throw error(errc::unsupported_exponent, "chain needs finite p and q");
  if (!(p < q)) throw error(errc::exponent_order, "chain needs p < q");
  const double mp = level_mean(f, p, n);
  const double mq = level_mean(f, q, n);
  const double minf = level_mean(f, Exponent::inf(), n);
  const auto& tree = f.tree();

  ChainResult r;
  r.values = {minf * tree.level_size_power(n, -p.reciprocal()),
              mq * tree.level_size_power(n, q.reciprocal() - p.reciprocal()), mp, mq, minf};
  r.holds = true;
  for (std::size_t i = 0; i + 1 < r.values.size(); ++i) {
    double a = r.values[i], b = r.values[i + 1];
    if (a > b + rel_tol * std::max(a, b)) r.holds = false;
  }
  return r;
}

/// f(v_n) = c_n^(1/r) at index 0 of every level n >= 1, zero elsewhere.
/// M_p(n,f) = c_n^(1/r-1/p) stays bounded while M_q(n,f) = c_n^(1/r-1/q)
/// grows with c_n, separating the two spaces when {c_n} is unbounded.
inline TreeFunction inclusion_witness(const Exponent& p, const Exponent& q, double r,
                                      const TreePtr& tree) {
  if (p.is_inf() || q.is_inf()) throw error(errc::unsupported_exponent, "witness needs finite p and q");
  if (!(p < q)) throw error(errc::exponent_order, "witness needs p < q");
  if (!(r > p.value() && r < q.value()))
    throw error(errc::parameter, "r must lie strictly between p and q");
  TreeFunction f(tree);
  for (std::size_t n = 1; n <= tree->depth(); ++n) f.set({n, 0}, tree->level_size_power(n, 1.0 / r));
  return f;
}

}  // namespace hardy
