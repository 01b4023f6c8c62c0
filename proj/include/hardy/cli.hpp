#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardy/error.hpp"
#include "hardy/exponent.hpp"
#include "hardy/generators.hpp"
#include "hardy/hardy_space.hpp"
#include "hardy/io.hpp"
#include "hardy/mult_operator.hpp"
#include "hardy/oracle.hpp"
#include "hardy/property_suite.hpp"
#include "hardy/report.hpp"
#include "hardy/tree.hpp"

// Command-line frontend. `run` is the whole program minus process plumbing,
// so tests can drive it with in-memory streams.

namespace hardy::cli {

enum exit_status : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_file = 2,
  exit_suite_failure = 3,
};

struct Request {
  std::string tree_file;
  std::optional<std::uint64_t> homogeneous;
  std::optional<std::size_t> depth;
  std::string symbol_file;
  std::string generator;
  std::string p = "2";
  std::string q = "2";
  double tol = default_tolerance;
  std::size_t window = 5;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  std::string distribution = "single-level";
  bool machine = false;
  std::string out_file;
  std::size_t level = 0;
  bool corrupt = false;
};

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class file_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void add_tree_options(CLI::App* cmd, Request& r) {
  cmd->add_option("--tree", r.tree_file, "tree file");
  cmd->add_option("--homogeneous", r.homogeneous, "build the K-homogeneous tree");
  cmd->add_option("--depth", r.depth, "truncation depth for --homogeneous");
}

inline void add_symbol_options(CLI::App* cmd, Request& r) {
  cmd->add_option("--symbol,--func", r.symbol_file, "function file");
  cmd->add_option("--gen", r.generator, "builtin generator NAME[,PARAMS]");
}

inline void add_output_options(CLI::App* cmd, Request& r) {
  cmd->add_flag("--machine", r.machine, "emit one JSON document");
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw file_error("cannot open '" + path + "'");
  return in;
}

inline TreePtr load_tree(const Request& r, bool required = true) {
  if (!r.tree_file.empty()) {
    if (r.homogeneous) throw usage_error("give either --tree or --homogeneous, not both");
    auto in = open_input(r.tree_file);
    return std::make_shared<const RootedTree>(io::read_tree(in));
  }
  if (r.homogeneous) {
    if (!r.depth) throw usage_error("--homogeneous needs --depth");
    return std::make_shared<const RootedTree>(build_homogeneous(*r.homogeneous, *r.depth));
  }
  if (required) throw usage_error("a tree is required: --tree FILE or --homogeneous K --depth D");
  return nullptr;
}

inline TreeFunction load_symbol(const Request& r, const TreePtr& tree) {
  if (!r.symbol_file.empty() && !r.generator.empty())
    throw usage_error("give either --symbol or --gen, not both");
  if (!r.symbol_file.empty()) {
    auto in = open_input(r.symbol_file);
    return io::read_function(in, tree);
  }
  if (!r.generator.empty()) return generators::from_spec(tree, r.generator);
  throw usage_error("a function is required: --symbol FILE or --gen NAME[,PARAMS]");
}

inline Exponent exponent(const std::string& text) { return Exponent::parse(text); }

template <class Fn>
void with_output(const Request& r, std::ostream& out, Fn&& fn) {
  if (r.out_file.empty() || r.out_file == "-") {
    fn(out);
    return;
  }
  std::ofstream file(r.out_file);
  if (!file) throw file_error("cannot write '" + r.out_file + "'");
  fn(file);
}

}  // namespace detail

inline int cmd_gen_tree(const Request& r, std::ostream& out) {
  if (!r.homogeneous || !r.depth) throw usage_error("gen-tree needs --homogeneous K --depth D");
  auto tree = build_homogeneous(*r.homogeneous, *r.depth);
  detail::with_output(r, out, [&](std::ostream& os) { io::write_tree(os, tree); });
  return exit_ok;
}

inline int cmd_norm(const Request& r, std::ostream& out) {
  auto tree = detail::load_tree(r);
  auto f = detail::load_symbol(r, tree);
  auto p = detail::exponent(r.p);
  auto means = level_means(f, p);
  auto norm = tp_norm(f, p);
  if (r.machine) {
    report::json doc;
    doc["command"] = "norm";
    doc["p"] = p.to_string();
    doc["depth"] = tree->depth();
    doc["level_means"] = means.means;
    doc["norm"] = norm.value;
    doc["argmax_level"] = norm.argmax_level;
    doc["exactness"] = report::exactness_token(norm.exact, norm.depth);
    out << report::serialize(doc);
    return exit_ok;
  }
  out << "||f||_p := sup_n M_p(n,f), p = " << p.to_string() << '\n';
  for (std::size_t n = 0; n < means.means.size(); ++n)
    out << "M_p(" << n << ",f) = " << report::fmt(means.means[n]) << '\n';
  out << "norm = " << report::fmt(norm.value) << " (" << report::exactness_token(norm.exact, norm.depth)
      << ", attained at level " << norm.argmax_level << ")\n";
  return exit_ok;
}

inline report::AnalysisOptions analysis_options(const Request& r, const RootedTree& tree) {
  if (r.trials == 0) throw usage_error("--trials must be >= 1");
  if (r.window == 0) throw usage_error("--window must be >= 1");
  report::AnalysisOptions opt;
  opt.window = r.window;
  opt.tol = r.tol;
  opt.search = {tree.depth(), r.trials, r.seed, parse_distribution(r.distribution)};
  return opt;
}

inline int cmd_analyze(const Request& r, std::ostream& out) {
  auto tree = detail::load_tree(r);
  auto psi = detail::load_symbol(r, tree);
  auto p = detail::exponent(r.p);
  auto q = detail::exponent(r.q);
  auto a = report::analyze(psi, p, q, analysis_options(r, *tree));
  if (r.machine)
    out << report::serialize(report::to_json(a));
  else
    report::write_text(out, a);
  return exit_ok;
}

inline int cmd_witness(const Request& r, std::ostream& out) {
  auto tree = detail::load_tree(r);
  auto psi = detail::load_symbol(r, tree);
  auto p = detail::exponent(r.p);
  auto q = detail::exponent(r.q);
  auto w = witness_function(psi, p, q, r.level);
  const double b = indicator_value(psi, p, q, r.level);
  const double ratio = w.function ? oracle::ratio(psi, *w.function, p, q) : 0.0;

  if (r.machine) {
    report::json doc;
    doc["command"] = "witness";
    doc["case"] = to_string(classify(p, q));
    doc["witness_level"] = r.level;
    doc["b_n"] = b;
    doc["ratio"] = ratio;
    doc["degenerate"] = w.degenerate;
    doc["vertex"] = report::vertex_json(w.vertex);
    report::json values = report::json::array();
    if (w.function) {
      auto level = w.function->level(r.level);
      for (std::size_t i = 0; i < level.size(); ++i)
        if (level[i] != complex{}) values.push_back({r.level, i, level[i].real(), level[i].imag()});
    }
    doc["values"] = std::move(values);
    out << report::serialize(doc);
  } else {
    out << "case: " << to_string(classify(p, q)) << ", level " << r.level << '\n';
    out << "b_n = " << report::fmt(b) << ", ratio ||psi f||_q/||f||_p = " << report::fmt(ratio)
        << (w.degenerate ? " (degenerate: psi vanishes on the level)" : "") << '\n';
  }
  if (w.function && !r.machine) {
    if (r.out_file.empty()) out << '\n';
    detail::with_output(r, out, [&](std::ostream& os) { io::write_function(os, *w.function); });
  }
  return exit_ok;
}

inline int cmd_check(const Request& r, std::ostream& out) {
  if (r.trials == 0) throw usage_error("--trials must be >= 1");
  auto tree = detail::load_tree(r, false);
  if (!tree) tree = std::make_shared<const RootedTree>(build_homogeneous(3, 6));
  suite::Options opt{r.trials, r.seed, r.corrupt};
  auto results = suite::run_all(tree, opt);
  bool all_ok = true;
  if (r.machine) {
    report::json doc;
    doc["command"] = "check";
    doc["trials"] = r.trials;
    doc["seed"] = r.seed;
    report::json suites = report::json::array();
    for (const auto& s : results) {
      suites.push_back({{"name", s.name}, {"passed", s.passed}, {"failed", s.failed},
                        {"verdict", s.ok() ? "pass" : "fail"}, {"first_failure", s.first_failure}});
      all_ok = all_ok && s.ok();
    }
    doc["suites"] = std::move(suites);
    doc["verdict"] = all_ok ? "pass" : "fail";
    out << report::serialize(doc);
  } else {
    for (const auto& s : results) {
      out << (s.ok() ? "PASS " : "FAIL ") << s.name << ": " << s.passed << " passed, " << s.failed << " failed";
      if (!s.ok()) out << " (first: " << s.first_failure << ")";
      out << '\n';
      all_ok = all_ok && s.ok();
    }
  }
  return all_ok ? exit_ok : exit_suite_failure;
}

/// Runs one command line (args excludes the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Request r;
  CLI::App app{"Multiplication operators between discrete Hardy spaces on rooted trees", "hardy"};
  app.require_subcommand(1);

  auto* gen_tree = app.add_subcommand("gen-tree", "write a homogeneous tree file");
  detail::add_tree_options(gen_tree, r);
  gen_tree->add_option("--out", r.out_file, "output file (default stdout)");

  auto* norm = app.add_subcommand("norm", "level means and T_p norm of a function");
  detail::add_tree_options(norm, r);
  detail::add_symbol_options(norm, r);
  norm->add_option("--p", r.p, "exponent (decimal or inf)");
  detail::add_output_options(norm, r);

  auto add_operator_options = [&](CLI::App* cmd) {
    detail::add_tree_options(cmd, r);
    detail::add_symbol_options(cmd, r);
    cmd->add_option("--p", r.p, "source exponent (decimal or inf)");
    cmd->add_option("--q", r.q, "target exponent (decimal or inf)");
    cmd->add_option("--tol", r.tol, "tolerance");
    detail::add_output_options(cmd, r);
  };

  auto* analyze = app.add_subcommand("analyze", "full analysis of M_psi : T_p -> T_q");
  add_operator_options(analyze);
  analyze->add_option("--window", r.window, "tail window");
  analyze->add_option("--trials", r.trials, "random trials for the empirical norm");
  analyze->add_option("--seed", r.seed, "random seed");
  analyze->add_option("--distribution", r.distribution, "unit-sphere-per-level | single-level | sparse");

  auto* witness = app.add_subcommand("witness", "norm-attaining test function at one level");
  add_operator_options(witness);
  witness->add_option("--level", r.level, "level n")->required();
  witness->add_option("--out", r.out_file, "write the function file here");

  auto* check = app.add_subcommand("check", "run the randomized property suites");
  detail::add_tree_options(check, r);
  check->add_option("--trials", r.trials, "trials per suite");
  check->add_option("--seed", r.seed, "random seed");
  check->add_flag("--corrupt", r.corrupt, "corrupt DOWN witnesses (testing hook)");
  detail::add_output_options(check, r);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (gen_tree->parsed()) return cmd_gen_tree(r, out);
    if (norm->parsed()) return cmd_norm(r, out);
    if (analyze->parsed()) return cmd_analyze(r, out);
    if (witness->parsed()) return cmd_witness(r, out);
    if (check->parsed()) return cmd_check(r, out);
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const file_error& e) {
    err << "file error: " << e.what() << '\n';
    return exit_file;
  } catch (const parse_error& e) {
    err << e.what() << '\n';
    return exit_file;
  } catch (const error& e) {
    err << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace hardy::cli
