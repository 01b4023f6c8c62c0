#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardy/exponent.hpp"
#include "hardy/hardy_space.hpp"
#include "hardy/mult_operator.hpp"
#include "hardy/oracle.hpp"
#include "hardy/tree_function.hpp"

// Aggregated operator analysis and its two renderings. The machine form is a
// single JSON document with a fixed key order; serialising it, parsing it
// back and serialising again reproduces the bytes.

namespace hardy::report {

using json = nlohmann::ordered_json;

struct AnalysisOptions {
  std::size_t window = 5;
  double tol = default_tolerance;
  oracle::SearchConfig search;
};

struct Analysis {
  Exponent p = Exponent::inf();
  Exponent q = Exponent::inf();
  std::size_t depth = 0;
  std::size_t window = 0;
  double tol = default_tolerance;
  IndicatorSequence indicator;
  oracle::EmpiricalResult empirical;
  std::size_t search_trials = 0;
  std::uint64_t search_seed = 0;
  CompactnessReport compactness;
  IsometryReport isometry;
  InjectivityReport injectivity;
  InvertibilityReport invertibility;
  FixedPointSet fixed_points;
};

inline Analysis analyze(const TreeFunction& psi, const Exponent& p, const Exponent& q,
                        const AnalysisOptions& opt) {
  Analysis a;
  a.p = p;
  a.q = q;
  a.depth = psi.tree().depth();
  a.window = opt.window;
  a.tol = opt.tol;
  a.indicator = indicator_sequence(psi, p, q);
  a.empirical = oracle::empirical_opnorm(psi, p, q, opt.search);
  a.search_trials = opt.search.trials;
  a.search_seed = opt.search.seed;
  a.compactness = compactness_report(psi, p, q, opt.window, opt.tol);
  a.isometry = isometry_verdict(psi, p, q, opt.tol);
  a.injectivity = injectivity_check(psi, opt.tol);
  a.invertibility = invertibility_verdict(psi, p, q, opt.tol);
  a.fixed_points = fixed_point_support(psi, opt.tol);
  return a;
}

inline std::string exactness_token(bool exact, std::size_t depth) {
  return exact ? "exact" : "truncated at depth " + std::to_string(depth);
}

// |empirical - formula| / formula, 0 when both vanish.
inline double agreement_margin(double empirical, double formula) {
  if (formula == 0.0) return empirical == 0.0 ? 0.0 : std::abs(empirical);
  return std::abs(empirical - formula) / formula;
}

inline json vertex_json(const std::optional<VertexId>& v) {
  if (!v) return nullptr;
  return json::array({v->level, v->index});
}

inline json to_json(const Analysis& a) {
  const auto& b = a.indicator.values;
  const std::size_t w = std::min(a.window, b.size());
  json doc;
  doc["command"] = "analyze";
  doc["p"] = a.p.to_string();
  doc["q"] = a.q.to_string();
  doc["depth"] = a.depth;
  doc["case"] = to_string(a.indicator.op_case);
  doc["formula"] = governing_formula(a.indicator.op_case);
  doc["b_head"] = std::vector<double>(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(w));
  doc["b_tail_first_level"] = b.size() - w;
  doc["b_tail"] = std::vector<double>(b.end() - static_cast<std::ptrdiff_t>(w), b.end());
  doc["b_sup"] = a.indicator.sup;
  doc["argmax_level"] = a.indicator.argmax_level;
  doc["exactness"] = exactness_token(a.indicator.exact, a.depth);
  doc["witness_level"] = a.empirical.best_witness_level ? json(*a.empirical.best_witness_level) : json(nullptr);
  doc["empirical"] = {
      {"best_ratio", a.empirical.best_ratio},
      {"descriptor", a.empirical.best_descriptor},
      {"agreement_margin", agreement_margin(a.empirical.best_ratio, a.indicator.sup)},
      {"degenerate", a.empirical.degenerate},
      {"trials", a.search_trials},
      {"seed", a.search_seed},
  };
  doc["compactness"] = {
      {"verdict", to_string(a.compactness.verdict)},
      {"criterion", compactness_criterion(a.compactness.op_case)},
      {"tail_first_level", a.compactness.first_tail_level},
      {"tail_max", a.compactness.tail_max},
  };
  doc["isometry"] = {
      {"verdict", isometry_token(a.isometry.verdict)},
      {"theorem_case", a.isometry.theorem_case},
      {"worst_vertex", vertex_json(a.isometry.worst_vertex)},
      {"worst_deviation", a.isometry.worst_deviation},
  };
  doc["injectivity"] = {
      {"verdict", a.injectivity.injective ? "injective" : "not-injective"},
      {"zero_set_size", a.injectivity.zero_set.size()},
  };
  doc["invertibility"] = {
      {"verdict", invertibility_token(a.invertibility.verdict)},
      {"m", a.invertibility.min_modulus},
      {"M", a.invertibility.max_modulus},
      {"min_vertex", vertex_json(a.invertibility.min_vertex)},
      {"infimum_trend_to_zero", a.invertibility.infimum_trend_to_zero},
      {"never_onto", a.invertibility.never_onto},
  };
  doc["fixed_points"] = {{"non_E_size", a.fixed_points.non_e.size()}};
  doc["tolerance"] = a.tol;
  return doc;
}

inline std::string serialize(const json& doc) { return doc.dump(2) + "\n"; }

inline json parse(const std::string& text) { return json::parse(text); }

inline std::string fmt(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + fmt(xs[i]);
  return s;
}

inline void write_text(std::ostream& out, const Analysis& a) {
  const auto& b = a.indicator.values;
  const std::size_t w = std::min(a.window, b.size());
  out << "case: " << to_string(a.indicator.op_case) << " (p=" << a.p.to_string() << ", q=" << a.q.to_string()
      << ")\n";
  out << "governing formula: " << governing_formula(a.indicator.op_case) << '\n';
  out << "b_n head (levels 0.." << w - 1 << "): " << join({b.begin(), b.begin() + static_cast<std::ptrdiff_t>(w)})
      << '\n';
  out << "b_n tail (levels " << b.size() - w << ".." << b.size() - 1
      << "): " << join({b.end() - static_cast<std::ptrdiff_t>(w), b.end()}) << '\n';
  out << "operator norm (formula): " << fmt(a.indicator.sup) << " at level " << a.indicator.argmax_level << ", "
      << exactness_token(a.indicator.exact, a.depth) << '\n';
  out << "operator norm (empirical): " << fmt(a.empirical.best_ratio) << " from " << a.empirical.best_descriptor
      << ", relative gap " << fmt(agreement_margin(a.empirical.best_ratio, a.indicator.sup)) << '\n';
  out << "compactness: " << to_string(a.compactness.verdict) << " (tail max " << fmt(a.compactness.tail_max)
      << "; " << compactness_criterion(a.compactness.op_case) << ")\n";
  out << "isometry: " << isometry_token(a.isometry.verdict);
  if (a.isometry.theorem_case) out << " (case " << a.isometry.theorem_case << ")";
  if (a.isometry.worst_vertex)
    out << " (worst vertex " << to_string(*a.isometry.worst_vertex) << ", deviation "
        << fmt(a.isometry.worst_deviation) << ")";
  out << '\n';
  out << "injectivity: " << (a.injectivity.injective ? "injective" : "not-injective") << ", zero set size "
      << a.injectivity.zero_set.size() << '\n';
  out << "invertibility: " << invertibility_token(a.invertibility.verdict) << " (m=" << fmt(a.invertibility.min_modulus)
      << ", M=" << fmt(a.invertibility.max_modulus) << ")";
  if (a.invertibility.infimum_trend_to_zero) out << " infimum-trend-to-zero";
  if (a.invertibility.never_onto) out << " never-onto";
  out << '\n';
  out << "fixed points: non_E size " << a.fixed_points.non_e.size() << '\n';
  out << "tolerance: " << fmt(a.tol) << '\n';
}

}  // namespace hardy::report
