#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hardy/exponent.hpp"
#include "hardy/hardy_space.hpp"
#include "hardy/mult_operator.hpp"
#include "hardy/oracle.hpp"
#include "hardy/random.hpp"
#include "hardy/tree.hpp"
#include "hardy/tree_function.hpp"

// Randomized invariant suites behind `hardy check`. Each trial draws from its
// own stream of the seed, so results do not depend on suite order.

namespace hardy::suite {

struct Options {
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  // Testing hook: build DOWN witnesses with a wrong exponent so the
  // witness-equality suite must report failures.
  bool corrupt_witness = false;
};

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;

  bool ok() const noexcept { return failed == 0; }
};

inline constexpr std::array<double, 6> exponent_pool{0.5, 1.0, 1.5, 2.0, 3.0, 7.0};

// Two distinct exponents from the pool, ordered lo < hi.
inline std::pair<Exponent, Exponent> ordered_pair(Rng& rng) {
  std::size_t a = rng.below(exponent_pool.size());
  std::size_t b = rng.below(exponent_pool.size() - 1);
  if (b >= a) ++b;
  if (a > b) std::swap(a, b);
  return {Exponent::finite(exponent_pool[a]), Exponent::finite(exponent_pool[b])};
}

// A symbol on levels 0..support with roughly a quarter of its values zeroed.
inline TreeFunction sparse_symbol(const TreePtr& tree, Rng& rng, std::size_t support) {
  TreeFunction psi(tree, Extension::zero);
  for (std::size_t n = 0; n <= std::min(support, tree->depth()); ++n)
    for (auto& z : psi.level(n)) z = rng.uniform() < 0.25 ? complex{} : rng.value();
  return psi;
}

namespace detail {

inline void record(SuiteResult& r, bool ok, std::size_t trial, const std::string& what) {
  if (ok) {
    ++r.passed;
    return;
  }
  if (r.failed++ == 0) r.first_failure = "trial " + std::to_string(trial) + ": " + what;
}

inline std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t salt) { return splitmix64(seed + salt); }

}  // namespace detail

inline SuiteResult inequality_chain_suite(const TreePtr& tree, const Options& opt) {
  SuiteResult r;
  r.name = "inequality-chain";
  for (std::size_t t = 0; t < opt.trials; ++t) {
    Rng rng(detail::suite_seed(opt.seed, 1), t);
    auto f = random_function(tree, rng, tree->depth(), Distribution::unit_sphere_per_level);
    auto [p, q] = ordered_pair(rng);
    std::size_t n = rng.below(tree->depth() + 1);
    auto chain = inequality_chain(f, p, q, n, 1e-12);
    double reverse_rhs = tree->level_size_power(n, p.reciprocal() - q.reciprocal()) * level_mean(f, p, n);
    bool reverse = level_mean(f, q, n) <= reverse_rhs * (1.0 + 1e-12);
    detail::record(r, chain.holds && reverse, t,
                   "p=" + p.to_string() + " q=" + q.to_string() + " level " + std::to_string(n));
  }
  return r;
}

inline SuiteResult growth_bound_suite(const TreePtr& tree, const Options& opt) {
  constexpr std::array<double, 4> pool{0.5, 1.0, 2.0, 5.0};
  SuiteResult r;
  r.name = "growth-bound";
  for (std::size_t t = 0; t < opt.trials; ++t) {
    Rng rng(detail::suite_seed(opt.seed, 2), t);
    auto dist = static_cast<Distribution>(rng.below(3));
    auto f = random_function(tree, rng, tree->depth(), dist);
    auto p = Exponent::finite(pool[rng.below(pool.size())]);
    const double norm = tp_norm(f, p).value;
    bool ok = true;
    for (std::size_t n = 0; n <= tree->depth() && ok; ++n) {
      const double scale = norm * tree->level_size_power(n, p.reciprocal());
      for (std::size_t i = 0; i < tree->level_size(n); ++i)
        if (growth_bound_margin(f, p, {n, i}) < -1e-12 * scale) ok = false;
    }
    detail::record(r, ok, t, "p=" + p.to_string());
  }
  return r;
}

inline SuiteResult witness_equality_suite(const TreePtr& tree, const Options& opt) {
  SuiteResult r;
  r.name = "witness-equality";
  for (std::size_t t = 0; t < opt.trials; ++t) {
    Rng rng(detail::suite_seed(opt.seed, 3), t);
    auto psi = sparse_symbol(tree, rng, tree->depth());
    auto [q, p] = ordered_pair(rng);
    std::size_t n = rng.below(tree->depth() + 1);
    if (power_mean(psi.level(n), Exponent::inf()) == 0.0) psi.set({n, 0}, rng.value());

    oracle::WitnessCheck check;
    if (opt.corrupt_witness) {
      auto w = hardy::detail::down_witness(psi, p, q, n, q.value() / (p.value() - q.value()) + 0.5);
      check = oracle::check_witness(psi, *w.function, p, q, n, 1e-10);
    } else {
      check = oracle::verify_witness_equality(psi, p, q, n, 1e-10);
    }
    detail::record(r, check.passed && !check.vacuous, t,
                   "p=" + p.to_string() + " q=" + q.to_string() + " level " + std::to_string(n) +
                       " ratio " + std::to_string(check.ratio) + " vs b_n " + std::to_string(check.indicator));
  }
  return r;
}

// Exponent pair for a given regime, drawn from the pool.
inline std::pair<Exponent, Exponent> exponents_for(OperatorCase c, Rng& rng) {
  auto single = Exponent::finite(exponent_pool[rng.below(exponent_pool.size())]);
  switch (c) {
    case OperatorCase::equal:
      return rng.uniform() < 0.2 ? std::pair{Exponent::inf(), Exponent::inf()} : std::pair{single, single};
    case OperatorCase::from_inf: return {Exponent::inf(), single};
    case OperatorCase::to_inf: return {single, Exponent::inf()};
    case OperatorCase::down: {
      auto [lo, hi] = ordered_pair(rng);
      return {hi, lo};
    }
    case OperatorCase::up: return ordered_pair(rng);
  }
  return {single, single};
}

inline SuiteResult oracle_bounds_suite(const TreePtr& tree, const Options& opt) {
  SuiteResult r;
  r.name = "oracle-bounds";
  for (std::size_t t = 0; t < opt.trials; ++t) {
    Rng rng(detail::suite_seed(opt.seed, 4), t);
    auto c = static_cast<OperatorCase>(t % 5);
    auto [p, q] = exponents_for(c, rng);
    std::size_t support = rng.below(tree->depth() + 1);
    auto psi = sparse_symbol(tree, rng, support);
    auto formula = opnorm_formula(psi, p, q);
    oracle::SearchConfig cfg{tree->depth(), 8, rng.next(), static_cast<Distribution>(rng.below(3))};
    auto emp = oracle::empirical_opnorm(psi, p, q, cfg);
    bool ok = emp.best_ratio <= formula.value * (1.0 + 1e-9) &&
              std::abs(emp.best_ratio - formula.value) <= 1e-9 * formula.value;
    detail::record(r, ok, t,
                   std::string(to_string(c)) + " p=" + p.to_string() + " q=" + q.to_string() +
                       " formula " + std::to_string(formula.value) + " empirical " +
                       std::to_string(emp.best_ratio));
  }
  return r;
}

inline SuiteResult fixed_point_suite(const TreePtr& tree, const Options& opt) {
  SuiteResult r;
  r.name = "fixed-point-equivalence";
  for (std::size_t t = 0; t < opt.trials; ++t) {
    Rng rng(detail::suite_seed(opt.seed, 5), t);
    auto psi = TreeFunction::generate(tree, [&](const VertexId&) {
      return rng.uniform() < 0.5 ? complex(1.0) : rng.value();
    });
    auto f = TreeFunction::generate(tree, [&](const VertexId&) { return 10.0 * rng.uniform() * rng.unit_phase(); });
    bool ok = is_fixed_point(psi, project_to_fixed_support(psi, f));

    // Planting mass on a vertex where psi is far from 1 must break it.
    VertexId v{rng.below(tree->depth() + 1), 0};
    v.index = rng.below(tree->level_size(v.level));
    auto g = project_to_fixed_support(psi, f);
    psi.set(v, 1.0 + 1e-3 * rng.unit_phase() * (1.0 + rng.uniform()));
    g.set(v, 1e-3 * rng.unit_phase() * (1.0 + rng.uniform()));
    ok = ok && !is_fixed_point(psi, g);
    detail::record(r, ok, t, "vertex " + to_string(v));
  }
  return r;
}

inline std::vector<SuiteResult> run_all(const TreePtr& tree, const Options& opt) {
  return {inequality_chain_suite(tree, opt), growth_bound_suite(tree, opt),
          witness_equality_suite(tree, opt), oracle_bounds_suite(tree, opt),
          fixed_point_suite(tree, opt)};
}

}  // namespace hardy::suite
