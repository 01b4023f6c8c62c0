#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/tree.hpp"
#include "hardy/tree_function.hpp"

// Text formats.
//
//   tree v1                    homogeneous K D
//   depth D                    (single-line shorthand)
//   level 1: p_0 p_1 ...
//   ...
//   level D: ...
//
//   func v1
//   n i re im                  one line per vertex, (n, i) strictly increasing;
//   ...                        omitted vertices are zero
//
// Blank lines are ignored. Errors carry the 1-based line number.

namespace hardy::io {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw parse_error(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  return value;
}

inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

// Yields non-blank lines with their 1-based numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!split_ws(line).empty()) return true;
    }
    return false;
  }

  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

}  // namespace detail

inline RootedTree read_tree(std::istream& in) {
  using detail::parse_number;
  using count_type = RootedTree::count_type;
  detail::LineReader lines(in);
  std::string line;
  if (!lines.next(line)) throw parse_error(lines.number() + 1, "empty tree file");

  auto head = detail::split_ws(line);
  if (head.size() == 3 && head[0] == "homogeneous") {
    auto k = parse_number<std::uint64_t>(head[1], lines.number(), "degree");
    auto d = parse_number<std::size_t>(head[2], lines.number(), "depth");
    if (lines.next(line)) throw parse_error(lines.number(), "unexpected content after homogeneous line");
    return build_homogeneous(k, d);
  }
  if (head.size() != 2 || head[0] != "tree" || head[1] != "v1")
    throw parse_error(lines.number(), "expected 'tree v1' or 'homogeneous K D'");

  if (!lines.next(line)) throw parse_error(lines.number() + 1, "missing 'depth D' line");
  auto dl = detail::split_ws(line);
  if (dl.size() != 2 || dl[0] != "depth") throw parse_error(lines.number(), "expected 'depth D'");
  auto depth = parse_number<std::size_t>(dl[1], lines.number(), "depth");

  std::vector<std::vector<count_type>> levels;
  count_type prev_size = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    if (!lines.next(line)) throw parse_error(lines.number() + 1, "missing line for level " + std::to_string(n));
    auto tok = detail::split_ws(line);
    const std::string expected = std::to_string(n) + ":";
    if (tok.size() < 2 || tok[0] != "level" || tok[1] != expected)
      throw parse_error(lines.number(), "expected 'level " + expected + " ...'");
    if (tok.size() == 2) throw parse_error(lines.number(), "level " + std::to_string(n) + " is empty");
    std::vector<count_type> parents;
    for (std::size_t t = 2; t < tok.size(); ++t) {
      auto idx = parse_number<count_type>(tok[t], lines.number(), "parent index");
      if (idx >= prev_size)
        throw parse_error(lines.number(), "level " + std::to_string(n) + ", index " +
                                              std::to_string(parents.size()) + ": parent index " +
                                              std::to_string(idx) + " out of range");
      parents.push_back(idx);
    }
    prev_size = parents.size();
    levels.push_back(std::move(parents));
  }
  if (lines.next(line)) throw parse_error(lines.number(), "unexpected content after level " + std::to_string(depth));
  return build_from_parent_lists(std::move(levels));
}

inline void write_tree(std::ostream& out, const RootedTree& tree) {
  out << "tree v1\n" << "depth " << tree.depth() << '\n';
  for (std::size_t n = 1; n <= tree.depth(); ++n) {
    out << "level " << n << ':';
    for (auto p : tree.parents(n)) out << ' ' << p;
    out << '\n';
  }
}

inline TreeFunction read_function(std::istream& in, const TreePtr& tree,
                                  Extension ext = Extension::unknown) {
  using detail::parse_number;
  detail::LineReader lines(in);
  std::string line;
  if (!lines.next(line) || detail::split_ws(line) != std::vector<std::string_view>{"func", "v1"})
    throw parse_error(lines.number() == 0 ? 1 : lines.number(), "expected 'func v1'");

  TreeFunction f(tree, ext);
  std::optional<VertexId> last;
  while (lines.next(line)) {
    auto tok = detail::split_ws(line);
    if (tok.size() != 4) throw parse_error(lines.number(), "expected 'n i re im'");
    VertexId v{parse_number<std::size_t>(tok[0], lines.number(), "level"),
               parse_number<std::size_t>(tok[1], lines.number(), "index")};
    double re = parse_number<double>(tok[2], lines.number(), "real part");
    double im = parse_number<double>(tok[3], lines.number(), "imaginary part");
    if (!tree->contains(v)) throw parse_error(lines.number(), "vertex " + to_string(v) + " not in tree");
    if (last && !(*last < v))
      throw parse_error(lines.number(), "vertex " + to_string(v) + " out of (level, index) order");
    f.set(v, {re, im});
    last = v;
  }
  return f;
}

// Writes the nonzero values only.
inline void write_function(std::ostream& out, const TreeFunction& f) {
  out << "func v1\n";
  const auto& tree = f.tree();
  for (std::size_t n = 0; n <= tree.depth(); ++n) {
    auto level = f.level(n);
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (level[i] == complex{}) continue;
      out << n << ' ' << i << ' ' << detail::format_double(level[i].real()) << ' '
          << detail::format_double(level[i].imag()) << '\n';
    }
  }
}

inline RootedTree tree_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_tree(in);
}

inline TreeFunction function_from_string(const std::string& text, const TreePtr& tree,
                                         Extension ext = Extension::unknown) {
  std::istringstream in(text);
  return read_function(in, tree, ext);
}

}  // namespace hardy::io
