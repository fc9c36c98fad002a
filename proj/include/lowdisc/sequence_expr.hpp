#pragma once

// Integer expressions in k for user-defined growth sequences.
//
//   expr    := term ('+' term)*
//   term    := power ('*' power)*
//   power   := postfix ('^' power)?        right associative
//   postfix := primary '!'*
//   primary := integer | 'k' | '(' expr ')' | 'fact' '(' expr ')'
//
// Whitespace is ignored. Evaluation is exact.

#include "lowdisc/alpha.hpp"
#include "lowdisc/numeric.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lowdisc {

class ExpressionError : public std::invalid_argument {
 public:
  ExpressionError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class SequenceExpr {
 public:
  /// Throws ExpressionError with the offending character offset.
  static SequenceExpr parse(std::string_view text);

  /// Throws std::domain_error when an exponent or factorial argument is too
  /// large to evaluate.
  Integer evaluate(std::uint64_t k) const;

  const std::string& source() const { return source_; }

  struct Node;

 private:
  std::string source_;
  std::shared_ptr<const Node> root_;
};

/// "factorial", "k_pow_k", "powQ" (q^k), or any expression accepted by
/// SequenceExpr::parse. Custom expressions carry no declared kappa.
GrowthSequence make_sequence(std::string_view text);

}  // namespace lowdisc
