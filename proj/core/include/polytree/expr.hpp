#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "polytree/polynomial.hpp"

namespace polytree {

/// Arithmetic expression over complex numbers with named variables.
/// Grammar: numbers (`2`, `1.5e-3`, `2i`), the constant `i`, identifiers
/// (letters), `+ - * / ^`, parentheses, unary minus. `^` binds tightest and
/// associates to the right, so `10^-j` and `-t^2` read as usual.
class Expr {
 public:
  using Bindings = std::map<std::string, Complex, std::less<>>;

  /// Throws ParseError with offsets shifted by `base_offset`.
  static Expr parse(std::string_view text, std::size_t base_offset = 0);

  /// Throws InvalidArgument on unbound variables.
  Complex eval(const Bindings& vars) const;

  /// Identifiers appearing in the expression.
  std::vector<std::string> variables() const;

  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace polytree
