#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/exponent.hpp"
#include "hardy/hardy_space.hpp"
#include "hardy/tree.hpp"
#include "hardy/tree_function.hpp"

namespace hardy {

// Exponent regime of M_psi : T_p -> T_q.
enum class OperatorCase {
  equal,     // p = q, including p = q = inf
  down,      // 0 < q < p < inf
  from_inf,  // p = inf, q < inf
  to_inf,    // p < inf, q = inf
  up,        // 0 < p < q < inf
};

inline const char* to_string(OperatorCase c) noexcept {
  switch (c) {
    case OperatorCase::equal: return "EQUAL";
    case OperatorCase::down: return "DOWN";
    case OperatorCase::from_inf: return "FROM_INF";
    case OperatorCase::to_inf: return "TO_INF";
    case OperatorCase::up: return "UP";
  }
  return "?";
}

inline OperatorCase classify(const Exponent& p, const Exponent& q) noexcept {
  if (p == q) return OperatorCase::equal;
  if (p.is_inf()) return OperatorCase::from_inf;
  if (q.is_inf()) return OperatorCase::to_inf;
  return q < p ? OperatorCase::down : OperatorCase::up;
}

// pq/(p-q), the exponent governing the DOWN case.
inline Exponent down_exponent(const Exponent& p, const Exponent& q) {
  return Exponent::finite(p.value() * q.value() / (p.value() - q.value()));
}

// One-line statement of the governing norm formula for a regime.
inline std::string governing_formula(OperatorCase c) {
  switch (c) {
    case OperatorCase::equal: return "||M_psi|| = ||psi||_inf = sup_n M_inf(n,psi)";
    case OperatorCase::down: return "||M_psi|| = ||psi||_r = sup_n M_r(n,psi), r = pq/(p-q)";
    case OperatorCase::from_inf: return "||M_psi|| = ||psi||_q = sup_n M_q(n,psi)";
    case OperatorCase::to_inf: return "||M_psi|| = sup_n c_n^(1/p) M_inf(n,psi)";
    case OperatorCase::up: return "||M_psi|| = sup_n c_n^(1/p-1/q) M_inf(n,psi)";
  }
  return {};
}

inline TreeFunction apply(const TreeFunction& psi, const TreeFunction& f) {
  require_same_tree(psi, f);
  auto a = psi.values();
  auto b = f.values();
  std::vector<complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  bool vanishes = psi.extension() == Extension::zero || f.extension() == Extension::zero;
  return TreeFunction(f.tree_ptr(), std::move(out), vanishes ? Extension::zero : Extension::unknown);
}

// 1/psi, the symbol of the inverse operator. Zero values map to zero; callers
// check injectivity first.
inline TreeFunction reciprocal(const TreeFunction& psi) {
  std::vector<complex> out(psi.values().begin(), psi.values().end());
  for (auto& z : out) z = (z == complex{}) ? complex{} : 1.0 / z;
  return TreeFunction(psi.tree_ptr(), std::move(out), Extension::unknown);
}

/// Per-level quantity b_n whose supremum over levels is ||M_psi|| and whose
/// vanishing as n grows characterises compactness.
///
///   EQUAL     b_n = M_inf(n,psi)
///   DOWN      b_n = M_{pq/(p-q)}(n,psi)
///   FROM_INF  b_n = M_q(n,psi)
///   TO_INF    b_n = c_n^(1/p) M_inf(n,psi)
///   UP        b_n = c_n^(1/p-1/q) M_inf(n,psi)
struct IndicatorSequence {
  OperatorCase op_case = OperatorCase::equal;
  std::vector<double> values;
  double sup = 0.0;
  std::size_t argmax_level = 0;  // first level attaining sup
  bool exact = false;            // psi vanishes below the truncation
};

inline double indicator_value(const TreeFunction& psi, const Exponent& p, const Exponent& q,
                              std::size_t n) {
  const auto& tree = psi.tree();
  auto level = psi.level(n);
  switch (classify(p, q)) {
    case OperatorCase::equal: return power_mean(level, Exponent::inf());
    case OperatorCase::down: return power_mean(level, down_exponent(p, q));
    case OperatorCase::from_inf: return power_mean(level, q);
    case OperatorCase::to_inf:
      return tree.level_size_power(n, p.reciprocal()) * power_mean(level, Exponent::inf());
    case OperatorCase::up:
      return tree.level_size_power(n, p.reciprocal() - q.reciprocal()) *
             power_mean(level, Exponent::inf());
  }
  return 0.0;
}

inline IndicatorSequence indicator_sequence(const TreeFunction& psi, const Exponent& p,
                                            const Exponent& q) {
  IndicatorSequence s;
  s.op_case = classify(p, q);
  s.exact = psi.finitely_supported();
  const std::size_t depth = psi.tree().depth();
  s.values.reserve(depth + 1);
  for (std::size_t n = 0; n <= depth; ++n) {
    s.values.push_back(indicator_value(psi, p, q, n));
    if (s.values.back() > s.sup) {
      s.sup = s.values.back();
      s.argmax_level = n;
    }
  }
  return s;
}

struct OpNorm {
  double value = 0.0;
  bool exact = false;
};

inline OpNorm opnorm_formula(const TreeFunction& psi, const Exponent& p, const Exponent& q) {
  auto s = indicator_sequence(psi, p, q);
  return {s.sup, s.exact};
}

// First vertex of level n attaining max |psi|.
inline VertexId level_argmax(const TreeFunction& psi, std::size_t n) {
  auto level = psi.level(n);
  std::size_t best = 0;
  for (std::size_t i = 1; i < level.size(); ++i)
    if (std::abs(level[i]) > std::abs(level[best])) best = i;
  return {n, best};
}

/// A unit-norm test function supported on D_n with ||psi f||_q = b_n.
/// `function` is empty only in the degenerate DOWN case where psi vanishes
/// on the whole level (the normaliser would be 0; the ratio is 0).
struct Witness {
  std::optional<TreeFunction> function;
  std::size_t level = 0;
  std::optional<VertexId> vertex;  // the point-mass location, when there is one
  bool degenerate = false;
};

namespace detail {

// f_n = |psi|^(q/(p-q)) / A_n on D_n, A_n = ((1/c_n) sum |psi|^(pq/(p-q)))^(1/p).
// Moduli are divided by the level maximum first; the scale cancels in f_n.
inline Witness down_witness(const TreeFunction& psi, const Exponent& p, const Exponent& q,
                            std::size_t n, double power) {
  Witness w;
  w.level = n;
  auto level = psi.level(n);
  double m = 0.0;
  for (auto z : level) m = std::max(m, std::abs(z));
  if (m == 0.0) {
    w.degenerate = true;
    return w;
  }
  const double r = p.value() * q.value() / (p.value() - q.value());
  double sum = 0.0;
  for (auto z : level) sum += std::pow(std::abs(z) / m, r);
  const double normaliser = std::pow(sum / static_cast<double>(level.size()), 1.0 / p.value());

  TreeFunction f(psi.tree_ptr(), Extension::zero);
  auto out = f.level(n);
  for (std::size_t i = 0; i < level.size(); ++i)
    out[i] = std::pow(std::abs(level[i]) / m, power) / normaliser;
  w.function = std::move(f);
  return w;
}

}  // namespace detail

inline Witness witness_function(const TreeFunction& psi, const Exponent& p, const Exponent& q,
                                std::size_t n) {
  const auto& tree = psi.tree();
  if (n > tree.depth())
    throw error(errc::level_range, "witness level " + std::to_string(n) + " exceeds tree depth " +
                                       std::to_string(tree.depth()));
  const auto c = classify(p, q);
  if (c == OperatorCase::down)
    return detail::down_witness(psi, p, q, n, q.value() / (p.value() - q.value()));

  Witness w;
  w.level = n;
  TreeFunction f(psi.tree_ptr(), Extension::zero);
  if (c == OperatorCase::from_inf) {
    for (auto& z : f.level(n)) z = 1.0;
  } else {
    // c_n^(1/p) chi_{v_n} at the level argmax; 1/p = 0 covers p = inf.
    w.vertex = level_argmax(psi, n);
    f.set(*w.vertex, tree.level_size_power(n, p.reciprocal()));
  }
  w.function = std::move(f);
  return w;
}

enum class CompactnessVerdict {
  compact_exact,
  compact_evidence,
  not_compact_evidence,
  inconclusive,
};

inline const char* to_string(CompactnessVerdict v) noexcept {
  switch (v) {
    case CompactnessVerdict::compact_exact: return "compact-exact";
    case CompactnessVerdict::compact_evidence: return "compact-evidence";
    case CompactnessVerdict::not_compact_evidence: return "not-compact-evidence";
    case CompactnessVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline std::string compactness_criterion(OperatorCase c) {
  switch (c) {
    case OperatorCase::equal: return "compact iff psi(v) -> 0 as |v| -> inf";
    case OperatorCase::down: return "compact iff M_r(n,psi) -> 0, r = pq/(p-q)";
    case OperatorCase::from_inf: return "compact iff M_q(n,psi) -> 0";
    case OperatorCase::to_inf: return "compact iff c_n^(1/p) M_inf(n,psi) -> 0";
    case OperatorCase::up: return "compact iff c_n^(1/p-1/q) M_inf(n,psi) -> 0";
  }
  return {};
}

struct CompactnessReport {
  OperatorCase op_case = OperatorCase::equal;
  std::size_t first_tail_level = 0;
  std::vector<double> tail;
  double tail_max = 0.0;
  CompactnessVerdict verdict = CompactnessVerdict::inconclusive;
  double tolerance = default_tolerance;
};

/// Reads the deepest `window` values of b_n. Finitely supported symbols are
/// decided exactly (b_n = 0 past the support); otherwise the verdict is
/// evidence: a tail below `tol` suggests compactness, a non-decreasing tail
/// bounded away from 0 suggests the opposite.
inline CompactnessReport compactness_report(const TreeFunction& psi, const Exponent& p,
                                            const Exponent& q, std::size_t window,
                                            double tol = default_tolerance) {
  if (window == 0) throw error(errc::parameter, "window must be >= 1");
  auto seq = indicator_sequence(psi, p, q);
  CompactnessReport r;
  r.op_case = seq.op_case;
  r.tolerance = tol;
  window = std::min(window, seq.values.size());
  r.first_tail_level = seq.values.size() - window;
  r.tail.assign(seq.values.begin() + static_cast<std::ptrdiff_t>(r.first_tail_level), seq.values.end());
  for (double b : r.tail) r.tail_max = std::max(r.tail_max, b);

  if (seq.exact) {
    r.verdict = CompactnessVerdict::compact_exact;
  } else if (r.tail_max <= tol) {
    r.verdict = CompactnessVerdict::compact_evidence;
  } else {
    bool non_decreasing = r.tail.front() > tol;
    for (std::size_t i = 1; i < r.tail.size(); ++i)
      if (r.tail[i] < r.tail[i - 1] * (1.0 - tol)) non_decreasing = false;
    r.verdict = non_decreasing ? CompactnessVerdict::not_compact_evidence : CompactnessVerdict::inconclusive;
  }
  return r;
}

enum class OperatorVerdict {
  holds_evidence,             // isometry / invertible on the truncation
  fails,                      // not an isometry / not invertible
  impossible_by_theorem,      // p != q and {c_n} grows on the truncation
  theorem_inapplicable_on_evidence,
};

inline const char* isometry_token(OperatorVerdict v) noexcept {
  switch (v) {
    case OperatorVerdict::holds_evidence: return "isometry";
    case OperatorVerdict::fails: return "not-isometry";
    case OperatorVerdict::impossible_by_theorem: return "impossible-by-theorem";
    case OperatorVerdict::theorem_inapplicable_on_evidence: return "theorem-inapplicable-on-evidence";
  }
  return "?";
}

inline const char* invertibility_token(OperatorVerdict v) noexcept {
  switch (v) {
    case OperatorVerdict::holds_evidence: return "invertible-evidence";
    case OperatorVerdict::fails: return "not-invertible";
    case OperatorVerdict::impossible_by_theorem: return "impossible-by-theorem";
    case OperatorVerdict::theorem_inapplicable_on_evidence: return "theorem-inapplicable-on-evidence";
  }
  return "?";
}

// Number of trailing level steps over which c_n must strictly grow before the
// "{c_n} unbounded" hypothesis is taken as supported.
inline constexpr std::size_t growth_evidence_window = 3;

// Which of the four mixed regimes the non-isometry argument runs through:
// 1 = T_p -> T_inf, 2 = T_inf -> T_p, 3 = q < p, 4 = p < q. 0 for EQUAL.
inline int mixed_case_number(OperatorCase c) noexcept {
  switch (c) {
    case OperatorCase::to_inf: return 1;
    case OperatorCase::from_inf: return 2;
    case OperatorCase::down: return 3;
    case OperatorCase::up: return 4;
    case OperatorCase::equal: return 0;
  }
  return 0;
}

struct IsometryReport {
  OperatorCase op_case = OperatorCase::equal;
  OperatorVerdict verdict = OperatorVerdict::fails;
  int theorem_case = 0;
  std::optional<VertexId> worst_vertex;  // EQUAL: largest ||psi(v)| - 1|
  double worst_deviation = 0.0;
  // p != q: the modulus |psi| would need on each level for unit-norm point
  // masses to be preserved; informational only.
  std::vector<double> implied_modulus;
  double tolerance = default_tolerance;
};

inline IsometryReport isometry_verdict(const TreeFunction& psi, const Exponent& p, const Exponent& q,
                                       double tol = default_tolerance) {
  IsometryReport r;
  r.op_case = classify(p, q);
  r.tolerance = tol;
  const auto& tree = psi.tree();

  if (r.op_case == OperatorCase::equal) {
    for (std::size_t n = 0; n <= tree.depth(); ++n) {
      auto level = psi.level(n);
      for (std::size_t i = 0; i < level.size(); ++i) {
        double dev = std::abs(std::abs(level[i]) - 1.0);
        if (!r.worst_vertex || dev > r.worst_deviation) {
          r.worst_deviation = dev;
          r.worst_vertex = VertexId{n, i};
        }
      }
    }
    r.verdict = r.worst_deviation <= tol ? OperatorVerdict::holds_evidence : OperatorVerdict::fails;
    return r;
  }

  r.theorem_case = mixed_case_number(r.op_case);
  // ||psi f||_q = ||f||_p for f = c^(1/p) chi_v forces |psi(v)| = c^(1/q-1/p).
  const double exponent = q.reciprocal() - p.reciprocal();
  for (std::size_t n = 0; n <= tree.depth(); ++n)
    r.implied_modulus.push_back(tree.level_size_power(n, exponent));
  r.verdict = level_sizes_growing(tree, growth_evidence_window)
                  ? OperatorVerdict::impossible_by_theorem
                  : OperatorVerdict::theorem_inapplicable_on_evidence;
  return r;
}

struct InjectivityReport {
  bool injective = true;
  std::vector<VertexId> zero_set;  // |psi(v)| <= tol
  double tolerance = default_tolerance;
};

inline InjectivityReport injectivity_check(const TreeFunction& psi, double tol = default_tolerance) {
  InjectivityReport r;
  r.tolerance = tol;
  for (std::size_t n = 0; n <= psi.tree().depth(); ++n) {
    auto level = psi.level(n);
    for (std::size_t i = 0; i < level.size(); ++i)
      if (std::abs(level[i]) <= tol) r.zero_set.push_back({n, i});
  }
  r.injective = r.zero_set.empty();
  return r;
}

struct InvertibilityReport {
  OperatorCase op_case = OperatorCase::equal;
  OperatorVerdict verdict = OperatorVerdict::fails;
  double min_modulus = 0.0;  // m
  double max_modulus = 0.0;  // M
  std::optional<VertexId> min_vertex;
  std::optional<TreeFunction> inverse;  // 1/psi when invertible-evidence
  bool infimum_trend_to_zero = false;   // level minima strictly fall over the tail
  bool never_onto = false;              // p != q, p,q >= 1, c_n growing
  double tolerance = default_tolerance;
};

inline InvertibilityReport invertibility_verdict(const TreeFunction& psi, const Exponent& p,
                                                 const Exponent& q, double tol = default_tolerance) {
  InvertibilityReport r;
  r.op_case = classify(p, q);
  r.tolerance = tol;
  const auto& tree = psi.tree();

  std::vector<double> level_min;
  for (std::size_t n = 0; n <= tree.depth(); ++n) {
    auto level = psi.level(n);
    double lo = std::abs(level[0]);
    for (std::size_t i = 0; i < level.size(); ++i) {
      double a = std::abs(level[i]);
      lo = std::min(lo, a);
      r.max_modulus = std::max(r.max_modulus, a);
      if (!r.min_vertex || a < r.min_modulus) {
        r.min_modulus = a;
        r.min_vertex = VertexId{n, i};
      }
    }
    level_min.push_back(lo);
  }
  if (level_min.size() > 1) {
    std::size_t steps = std::min(growth_evidence_window, level_min.size() - 1);
    r.infimum_trend_to_zero = true;
    for (std::size_t n = level_min.size() - 1 - steps; n + 1 < level_min.size(); ++n)
      if (!(level_min[n + 1] < level_min[n])) r.infimum_trend_to_zero = false;
  }

  if (r.op_case == OperatorCase::equal) {
    if (r.min_modulus > tol) {
      r.verdict = OperatorVerdict::holds_evidence;
      r.inverse = reciprocal(psi);
    } else {
      r.verdict = OperatorVerdict::fails;
    }
    return r;
  }

  const bool growing = level_sizes_growing(tree, growth_evidence_window);
  r.verdict = growing ? OperatorVerdict::impossible_by_theorem
                      : OperatorVerdict::theorem_inapplicable_on_evidence;
  // The no-onto argument goes through the inverse mapping theorem, so it
  // needs Banach spaces: p, q >= 1.
  const auto one = Exponent::finite(1.0);
  r.never_onto = growing && p >= one && q >= one;
  return r;
}

struct FixedPointSet {
  std::vector<VertexId> non_e;  // |psi(v) - 1| <= tol
  double tolerance = default_tolerance;
};

inline FixedPointSet fixed_point_support(const TreeFunction& psi, double tol = default_tolerance) {
  FixedPointSet s;
  s.tolerance = tol;
  for (std::size_t n = 0; n <= psi.tree().depth(); ++n) {
    auto level = psi.level(n);
    for (std::size_t i = 0; i < level.size(); ++i)
      if (std::abs(level[i] - 1.0) <= tol) s.non_e.push_back({n, i});
  }
  return s;
}

// Zeroes f outside the fixed-point support of psi.
inline TreeFunction project_to_fixed_support(const TreeFunction& psi, const TreeFunction& f,
                                             double tol = default_tolerance) {
  require_same_tree(psi, f);
  TreeFunction out(f.tree_ptr(), f.extension());
  for (const auto& v : fixed_point_support(psi, tol).non_e) out.set(v, f(v));
  return out;
}

// (psi - 1) f = 0 up to tol (1 + max |f|).
inline bool is_fixed_point(const TreeFunction& psi, const TreeFunction& f,
                           double tol = default_tolerance) {
  require_same_tree(psi, f);
  auto a = psi.values();
  auto b = f.values();
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs((a[i] - 1.0) * b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return worst <= tol * (1.0 + scale);
}

}  // namespace hardy
