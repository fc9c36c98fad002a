#include "lowdisc/sequence_expr.hpp"

#include <cctype>

namespace lowdisc {

namespace {

constexpr unsigned long kMaxExponent = 1000000;
constexpr unsigned long kMaxFactorial = 100000;

}  // namespace

struct SequenceExpr::Node {
  enum class Op { literal, var, add, mul, pow, fact };
  Op op;
  Integer value;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

ExpressionError::ExpressionError(const std::string& what, std::size_t offset)
    : std::invalid_argument(what + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace {

using Node = SequenceExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  return std::make_shared<const Node>(Node{op, 0, std::move(lhs), std::move(rhs)});
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw ExpressionError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) {
      throw ExpressionError(std::string("expected '") + ch + "'", pos_);
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (accept('+')) {
      lhs = make(Node::Op::add, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = power();
    while (accept('*')) {
      lhs = make(Node::Op::mul, lhs, power());
    }
    return lhs;
  }

  NodePtr power() {
    NodePtr base = postfix();
    if (accept('^')) {
      return make(Node::Op::pow, base, power());
    }
    return base;
  }

  NodePtr postfix() {
    NodePtr operand = primary();
    while (accept('!')) {
      operand = make(Node::Op::fact, operand);
    }
    return operand;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ExpressionError("unexpected end of expression", pos_);
    }
    const char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
        ++end;
      }
      auto node = std::make_shared<Node>(Node{Node::Op::literal, 0, nullptr, nullptr});
      node->value = Integer(std::string(text_.substr(pos_, end - pos_)), 10);
      pos_ = end;
      return node;
    }
    if (text_.substr(pos_).starts_with("fact")) {
      pos_ += 4;
      expect('(');
      NodePtr inner = expr();
      expect(')');
      return make(Node::Op::fact, inner);
    }
    if (ch == 'k') {
      ++pos_;
      return make(Node::Op::var, nullptr);
    }
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    throw ExpressionError("unexpected '" + std::string(1, ch) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

unsigned long small_operand(const Integer& v, unsigned long limit, const char* what) {
  if (!v.fits_ulong_p() || v.get_ui() > limit) {
    throw std::domain_error(std::string(what) + " " + v.get_str() + " exceeds " +
                            std::to_string(limit));
  }
  return v.get_ui();
}

Integer eval(const Node& node, const Integer& k) {
  switch (node.op) {
    case Node::Op::literal:
      return node.value;
    case Node::Op::var:
      return k;
    case Node::Op::add:
      return eval(*node.lhs, k) + eval(*node.rhs, k);
    case Node::Op::mul:
      return eval(*node.lhs, k) * eval(*node.rhs, k);
    case Node::Op::pow: {
      Integer base = eval(*node.lhs, k);
      unsigned long e = small_operand(eval(*node.rhs, k), kMaxExponent, "exponent");
      Integer r;
      mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
      return r;
    }
    case Node::Op::fact: {
      unsigned long n = small_operand(eval(*node.lhs, k), kMaxFactorial, "factorial argument");
      Integer r;
      mpz_fac_ui(r.get_mpz_t(), n);
      return r;
    }
  }
  throw std::logic_error("unknown expression node");
}

}  // namespace

SequenceExpr SequenceExpr::parse(std::string_view text) {
  SequenceExpr e;
  e.source_ = std::string(text);
  e.root_ = Parser(text).parse();
  return e;
}

Integer SequenceExpr::evaluate(std::uint64_t k) const {
  return eval(*root_, Integer(static_cast<unsigned long>(k)));
}

GrowthSequence make_sequence(std::string_view text) {
  if (text == "factorial") {
    return GrowthSequence::factorial();
  }
  if (text == "k_pow_k") {
    return GrowthSequence::self_power();
  }
  if (text.starts_with("pow") && text.size() > 3) {
    std::string_view digits = text.substr(3);
    bool numeric = true;
    for (char ch : digits) {
      numeric = numeric && std::isdigit(static_cast<unsigned char>(ch));
    }
    if (numeric) {
      unsigned long q = std::stoul(std::string(digits));
      if (q < 2) {
        throw std::invalid_argument("geometric ratio must be at least 2");
      }
      return GrowthSequence::geometric(q);
    }
  }
  SequenceExpr expr = SequenceExpr::parse(text);
  return GrowthSequence(expr.source(), [expr](std::uint64_t k) { return expr.evaluate(k); });
}

}  // namespace lowdisc
