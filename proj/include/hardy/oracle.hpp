#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "hardy/error.hpp"
#include "hardy/exponent.hpp"
#include "hardy/hardy_space.hpp"
#include "hardy/mult_operator.hpp"
#include "hardy/random.hpp"
#include "hardy/tree_function.hpp"

// Brute-force checks of the operator norm. Nothing here evaluates the closed
// form sup_n b_n: norms come from direct level means of psi*f and f, and the
// candidate functions are random draws plus the level witnesses.

namespace hardy::oracle {

// ||psi f||_q / ||f||_p over the materialized levels.
inline double ratio(const TreeFunction& psi, const TreeFunction& f, const Exponent& p,
                    const Exponent& q) {
  require_same_tree(psi, f);
  if (f.is_zero()) throw error(errc::degenerate_input, "ratio of the zero function");
  return tp_norm(apply(psi, f), q).value / tp_norm(f, p).value;
}

struct SearchConfig {
  std::size_t depth = 0;  // deepest level a candidate may touch
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::single_level;
};

inline void validate_config(const SearchConfig& cfg, const RootedTree& tree) {
  if (cfg.trials == 0) throw error(errc::parameter, "trials must be >= 1");
  if (cfg.depth > tree.depth())
    throw error(errc::parameter, "search depth " + std::to_string(cfg.depth) + " exceeds tree depth " +
                                     std::to_string(tree.depth()));
}

struct EmpiricalResult {
  double best_ratio = 0.0;
  std::string best_descriptor = "none";
  std::optional<std::size_t> best_witness_level;
  bool degenerate = false;  // every candidate gave ratio 0
  std::size_t candidates = 0;
};

/// Lower bound for ||M_psi|| on the truncation: the best ratio over
/// `cfg.trials` random functions and the witnesses of levels 0..cfg.depth.
/// Trial t draws from stream t of `cfg.seed`.
inline EmpiricalResult empirical_opnorm(const TreeFunction& psi, const Exponent& p, const Exponent& q,
                                        const SearchConfig& cfg) {
  validate_config(cfg, psi.tree());
  EmpiricalResult best;
  auto consider = [&](double r, std::string descriptor, std::optional<std::size_t> level) {
    ++best.candidates;
    if (r > best.best_ratio) {
      best.best_ratio = r;
      best.best_descriptor = std::move(descriptor);
      best.best_witness_level = level;
    }
  };

  for (std::size_t n = 0; n <= cfg.depth; ++n) {
    auto w = witness_function(psi, p, q, n);
    if (w.function) consider(ratio(psi, *w.function, p, q), "witness level " + std::to_string(n), n);
  }
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng(cfg.seed, t);
    auto f = random_function(psi.tree_ptr(), rng, cfg.depth, cfg.distribution, p);
    consider(ratio(psi, f, p, q), "trial " + std::to_string(t) + " (" + to_string(cfg.distribution) + ")",
             std::nullopt);
  }
  best.degenerate = best.best_ratio == 0.0;
  return best;
}

struct WitnessCheck {
  bool passed = false;
  bool vacuous = false;  // b_n = 0, nothing to attain
  double ratio = 0.0;
  double indicator = 0.0;  // b_n
};

// Does `f` attain b_n, i.e. ||psi f||_q / ||f||_p = b_n within relative tol?
inline WitnessCheck check_witness(const TreeFunction& psi, const TreeFunction& f, const Exponent& p,
                                  const Exponent& q, std::size_t n, double tol) {
  WitnessCheck c;
  c.indicator = indicator_value(psi, p, q, n);
  if (c.indicator == 0.0) {
    c.vacuous = c.passed = true;
    return c;
  }
  c.ratio = ratio(psi, f, p, q);
  c.passed = std::abs(c.ratio - c.indicator) <= tol * c.indicator;
  return c;
}

inline WitnessCheck verify_witness_equality(const TreeFunction& psi, const Exponent& p,
                                            const Exponent& q, std::size_t n,
                                            double tol = default_tolerance) {
  auto w = witness_function(psi, p, q, n);
  if (!w.function) {
    WitnessCheck c;
    c.vacuous = c.passed = true;
    return c;
  }
  return check_witness(psi, *w.function, p, q, n, tol);
}

}  // namespace hardy::oracle
