#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hardy {

enum class errc {
  invalid_degree,
  overflow,
  structure,
  level_range,
  unsupported_exponent,
  exponent_order,
  parameter,
  tree_mismatch,
  degenerate_input,
  parse,
};

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_degree: return "invalid-degree";
    case errc::overflow: return "overflow";
    case errc::structure: return "structure";
    case errc::level_range: return "level-range";
    case errc::unsupported_exponent: return "unsupported-exponent";
    case errc::exponent_order: return "exponent-order";
    case errc::parameter: return "parameter";
    case errc::tree_mismatch: return "tree-mismatch";
    case errc::degenerate_input: return "degenerate-input";
    case errc::parse: return "parse";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Raised by the text readers; `line()` is 1-based.
class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : error(errc::parse, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hardy
