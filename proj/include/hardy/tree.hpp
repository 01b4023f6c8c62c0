#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/error.hpp"

namespace hardy {

// Positional vertex identity: `level` is the edge distance from the root,
// `index` the 0-based position within that level.
struct VertexId {
  std::size_t level = 0;
  std::size_t index = 0;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

inline std::string to_string(const VertexId& v) {
  return "(" + std::to_string(v.level) + "," + std::to_string(v.index) + ")";
}

/// A finite truncation of a rooted tree, stored level by level.
///
/// Level n holds c_n vertices; every vertex at level n >= 1 names its parent
/// by index into level n-1. Instances built through the factories are valid
/// and immutable. `unchecked` exists so that corrupted structures can be fed
/// to `validate`.
class RootedTree {
 public:
  using count_type = std::uint64_t;

  RootedTree() : level_sizes_{1}, parents_(1) { index_levels(); }

  static RootedTree unchecked(std::vector<count_type> level_sizes,
                              std::vector<std::vector<count_type>> parents) {
    RootedTree t;
    t.level_sizes_ = std::move(level_sizes);
    t.parents_ = std::move(parents);
    t.index_levels();
    return t;
  }

  std::size_t depth() const noexcept {
    return level_sizes_.empty() ? 0 : level_sizes_.size() - 1;
  }

  count_type level_size(std::size_t n) const {
    check_level(n);
    return level_sizes_[n];
  }

  std::span<const count_type> level_sizes() const noexcept { return level_sizes_; }

  // Parent indices of the vertices at level n (empty for n = 0).
  std::span<const count_type> parents(std::size_t n) const {
    check_level(n);
    if (n >= parents_.size()) return {};
    return parents_[n];
  }

  std::optional<VertexId> parent(const VertexId& v) const {
    if (!contains(v)) throw error(errc::level_range, "vertex " + hardy::to_string(v) + " not in tree");
    if (v.level == 0) return std::nullopt;
    return VertexId{v.level - 1, static_cast<std::size_t>(parents_[v.level][v.index])};
  }

  bool contains(const VertexId& v) const noexcept {
    return v.level < level_sizes_.size() && v.index < level_sizes_[v.level];
  }

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }

  // Position of the first vertex of level n in level-order flat storage.
  std::size_t offset(std::size_t n) const {
    check_level(n);
    return offsets_[n];
  }

  std::size_t flat_index(const VertexId& v) const {
    if (!contains(v)) throw error(errc::level_range, "vertex " + hardy::to_string(v) + " not in tree");
    return offsets_[v.level] + v.index;
  }

  VertexId vertex_at(std::size_t flat) const {
    std::size_t n = 0;
    while (n + 1 < offsets_.size() && offsets_[n + 1] <= flat) ++n;
    return {n, flat - offsets_[n]};
  }

  // c_n^a, evaluated as exp(a log c_n).
  double level_size_power(std::size_t n, double a) const {
    return std::exp(a * std::log(static_cast<double>(level_size(n))));
  }

  // The parent sequences for levels 1..depth, suitable for build_from_parent_lists.
  std::vector<std::vector<count_type>> parent_lists() const {
    if (parents_.size() <= 1) return {};
    return std::vector<std::vector<count_type>>(parents_.begin() + 1, parents_.end());
  }

  friend bool operator==(const RootedTree& a, const RootedTree& b) noexcept {
    return a.level_sizes_ == b.level_sizes_ && a.parents_ == b.parents_;
  }

 private:
  void check_level(std::size_t n) const {
    if (n >= level_sizes_.size())
      throw error(errc::level_range,
                  "level " + std::to_string(n) + " exceeds tree depth " + std::to_string(depth()));
  }

  void index_levels() {
    offsets_.assign(level_sizes_.size() + 1, 0);
    for (std::size_t n = 0; n < level_sizes_.size(); ++n)
      offsets_[n + 1] = offsets_[n] + static_cast<std::size_t>(level_sizes_[n]);
  }

  std::vector<count_type> level_sizes_;
  std::vector<std::vector<count_type>> parents_;  // parents_[0] is empty
  std::vector<std::size_t> offsets_;
};

using TreePtr = std::shared_ptr<const RootedTree>;

struct Violation {
  std::size_t level = 0;
  std::optional<std::size_t> index;
  std::string message;
};

// Every structural invariant violation, located by level (and index where it
// applies). An empty result means the tree is valid.
inline std::vector<Violation> validate(const RootedTree& tree) {
  std::vector<Violation> out;
  auto sizes = tree.level_sizes();
  if (sizes.empty()) {
    out.push_back({0, std::nullopt, "tree has no levels"});
    return out;
  }
  if (sizes[0] != 1) out.push_back({0, std::nullopt, "root level size != 1"});
  if (!tree.parents(0).empty()) out.push_back({0, std::nullopt, "root level carries parent links"});

  for (std::size_t n = 1; n < sizes.size(); ++n) {
    if (sizes[n] == 0) out.push_back({n, std::nullopt, "level is empty"});
    auto par = tree.parents(n);
    if (par.size() != sizes[n]) {
      out.push_back({n, std::nullopt,
                     "parent list has " + std::to_string(par.size()) + " entries but level size is " +
                         std::to_string(sizes[n])});
    }
    for (std::size_t i = 0; i < par.size(); ++i) {
      if (par[i] >= sizes[n - 1]) {
        out.push_back({n, i,
                       "parent index " + std::to_string(par[i]) + " out of range (level " +
                           std::to_string(n - 1) + " has " + std::to_string(sizes[n - 1]) +
                           " vertices)"});
      }
    }
  }
  return out;
}

inline void throw_if_invalid(const RootedTree& tree) {
  auto report = validate(tree);
  if (report.empty()) return;
  const auto& v = report.front();
  std::string where = "level " + std::to_string(v.level);
  if (v.index) where += ", index " + std::to_string(*v.index);
  throw error(errc::structure, where + ": " + v.message);
}

/// The k-homogeneous tree truncated at `depth`: the root has k children and
/// every other vertex k-1, so c_n = k(k-1)^(n-1) for n >= 1. Children of
/// vertex i precede those of vertex i+1.
inline RootedTree build_homogeneous(std::uint64_t k, std::size_t depth) {
  using count_type = RootedTree::count_type;
  if (k < 2) throw error(errc::invalid_degree, "k must be >= 2, got " + std::to_string(k));

  constexpr count_type max_count = std::numeric_limits<count_type>::max();
  std::vector<count_type> sizes{1};
  for (std::size_t n = 1; n <= depth; ++n) {
    count_type branching = (n == 1) ? k : k - 1;
    if (sizes.back() > max_count / branching)
      throw error(errc::overflow, "level size overflows at level " + std::to_string(n));
    sizes.push_back(sizes.back() * branching);
  }
  count_type total = 0;
  for (auto c : sizes) {
    if (total > max_count - c || total + c > std::numeric_limits<std::size_t>::max() / sizeof(count_type))
      throw error(errc::overflow, "vertex count exceeds addressable storage");
    total += c;
  }

  std::vector<std::vector<count_type>> parents(depth + 1);
  for (std::size_t n = 1; n <= depth; ++n) {
    count_type branching = (n == 1) ? k : k - 1;
    auto& level = parents[n];
    level.resize(static_cast<std::size_t>(sizes[n]));
    for (std::size_t j = 0; j < level.size(); ++j) level[j] = j / branching;
  }
  return RootedTree::unchecked(std::move(sizes), std::move(parents));
}

// Level n (1-based) of the result is levels[n-1]; each entry names a parent
// index at the previous level.
inline RootedTree build_from_parent_lists(std::vector<std::vector<RootedTree::count_type>> levels) {
  std::vector<RootedTree::count_type> sizes{1};
  std::vector<std::vector<RootedTree::count_type>> parents(1);
  for (auto& level : levels) {
    sizes.push_back(level.size());
    parents.push_back(std::move(level));
  }
  auto tree = RootedTree::unchecked(std::move(sizes), std::move(parents));
  throw_if_invalid(tree);
  return tree;
}

// Evidence (never proof) that {c_n} is unbounded: c_n strictly increases over
// the last `transitions` level steps of the truncation.
inline bool level_sizes_growing(const RootedTree& tree, std::size_t transitions = 3) {
  std::size_t d = tree.depth();
  if (d == 0 || transitions == 0) return false;
  std::size_t steps = std::min(transitions, d);
  auto sizes = tree.level_sizes();
  for (std::size_t n = d - steps; n < d; ++n)
    if (sizes[n + 1] <= sizes[n]) return false;
  return true;
}

}  // namespace hardy
