#pragma once

#include <string>

#include "dvr/poly.hpp"

namespace dvr {

class ParseError : public DomainError {
 public:
  ParseError(const std::string& msg, size_t column)
      : DomainError(msg + " at column " + std::to_string(column)), column_(column) {}
  size_t column() const { return column_; }

 private:
  size_t column_;
};

// Grammar: integer and rational literals, the ring's variables and t,
// operators + - * ^ and parentheses. Columns are 1-based.
Poly parse_poly(const std::string& text, const RingPtr& ring);

}  // namespace dvr
