#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/tree.hpp"

namespace hardy {

using complex = std::complex<double>;

// What is known about a function beyond the deepest materialized level.
enum class Extension {
  unknown,  // values past the truncation are not given
  zero,     // the function vanishes past the truncation
};

/// A complex-valued function on the vertices of a truncated tree.
///
/// Values are stored in level order. Norms of a function are exact when it is
/// known to vanish below the truncation: either its extension is `zero` or
/// its support ends above the deepest level.
class TreeFunction {
 public:
  explicit TreeFunction(TreePtr tree, Extension ext = Extension::unknown)
      : tree_(std::move(tree)), extension_(ext) {
    if (!tree_) throw error(errc::parameter, "null tree");
    values_.assign(tree_->vertex_count(), complex{});
  }

  TreeFunction(TreePtr tree, std::vector<complex> values, Extension ext = Extension::unknown)
      : tree_(std::move(tree)), values_(std::move(values)), extension_(ext) {
    if (!tree_) throw error(errc::parameter, "null tree");
    if (values_.size() != tree_->vertex_count())
      throw error(errc::structure, "value count " + std::to_string(values_.size()) +
                                       " does not match vertex count " +
                                       std::to_string(tree_->vertex_count()));
  }

  // Fills every materialized vertex with fn(VertexId).
  template <class Fn>
  static TreeFunction generate(TreePtr tree, Fn&& fn, Extension ext = Extension::unknown) {
    TreeFunction f(std::move(tree), ext);
    for (std::size_t n = 0; n <= f.tree().depth(); ++n) {
      auto level = f.level(n);
      for (std::size_t i = 0; i < level.size(); ++i) level[i] = complex(fn(VertexId{n, i}));
    }
    return f;
  }

  const RootedTree& tree() const noexcept { return *tree_; }
  const TreePtr& tree_ptr() const noexcept { return tree_; }

  complex operator()(const VertexId& v) const { return values_[tree_->flat_index(v)]; }
  void set(const VertexId& v, complex value) { values_[tree_->flat_index(v)] = value; }

  std::span<const complex> level(std::size_t n) const {
    return std::span<const complex>(values_).subspan(tree_->offset(n),
                                                     static_cast<std::size_t>(tree_->level_size(n)));
  }
  std::span<complex> level(std::size_t n) {
    return std::span<complex>(values_).subspan(tree_->offset(n),
                                               static_cast<std::size_t>(tree_->level_size(n)));
  }

  std::span<const complex> values() const noexcept { return values_; }

  Extension extension() const noexcept { return extension_; }
  void set_extension(Extension ext) noexcept { extension_ = ext; }

  // Deepest level carrying a nonzero value; 0 for the zero function.
  std::size_t support_depth() const {
    for (std::size_t n = tree_->depth(); n > 0; --n) {
      auto lv = level(n);
      if (std::any_of(lv.begin(), lv.end(), [](complex z) { return z != complex{}; })) return n;
    }
    return 0;
  }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](complex z) { return z == complex{}; });
  }

  bool finitely_supported() const {
    return extension_ == Extension::zero || support_depth() < tree_->depth();
  }

  double max_modulus() const {
    double m = 0.0;
    for (auto z : values_) m = std::max(m, std::abs(z));
    return m;
  }

 private:
  TreePtr tree_;
  std::vector<complex> values_;
  Extension extension_;
};

inline bool same_tree(const TreeFunction& a, const TreeFunction& b) {
  return a.tree_ptr() == b.tree_ptr() || a.tree() == b.tree();
}

inline void require_same_tree(const TreeFunction& a, const TreeFunction& b) {
  if (!same_tree(a, b)) throw error(errc::tree_mismatch, "functions live on different trees");
}

// chi_v scaled by `value`; vanishes past the truncation.
inline TreeFunction point_mass(TreePtr tree, const VertexId& v, complex value = 1.0) {
  TreeFunction f(std::move(tree), Extension::zero);
  f.set(v, value);
  return f;
}

}  // namespace hardy
