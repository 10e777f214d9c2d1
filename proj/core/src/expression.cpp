#include "cqd/expression.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "cqd/error.hpp"

namespace cqd::query {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const Expression::Resolver& resolve, Expression& out)
      : text_(text), resolve_(resolve), out_(out) {}

  void run() {
    parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    // Verify the stack never exceeds the evaluation buffer.
    std::size_t depth = 0;
    std::size_t peak = 0;
    for (const auto& ins : out_.code_) {
      switch (ins.op) {
        case Expression::Op::constant:
        case Expression::Op::variable: ++depth; break;
        case Expression::Op::neg:
        case Expression::Op::abs: break;
        default: --depth; break;
      }
      peak = std::max(peak, depth);
    }
    if (peak > Expression::kMaxDepth) fail("expression nests too deeply");
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse, what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void emit(Op op, double value = 0.0, std::size_t slot = 0) { out_.code_.push_back({op, value, slot}); }

  void parse_sum() {
    parse_product();
    for (;;) {
      if (accept('+')) {
        parse_product();
        emit(Op::add);
      } else if (accept('-')) {
        parse_product();
        emit(Op::sub);
      } else {
        return;
      }
    }
  }

  void parse_product() {
    parse_unary();
    for (;;) {
      if (accept('*')) {
        parse_unary();
        emit(Op::mul);
      } else if (accept('/')) {
        parse_unary();
        emit(Op::div);
      } else {
        return;
      }
    }
  }

  // Bounds recursion on inputs like "((((...".
  struct Nest {
    explicit Nest(ExpressionParser& p) : p(p) {
      if (++p.nesting_ > Expression::kMaxDepth) p.fail("expression nests too deeply");
    }
    ~Nest() { --p.nesting_; }
    ExpressionParser& p;
  };

  void parse_unary() {
    const Nest guard(*this);
    if (accept('-')) {
      parse_unary();
      emit(Op::neg);
      return;
    }
    if (accept('+')) {
      parse_unary();
      return;
    }
    parse_power();
  }

  void parse_power() {
    parse_primary();
    if (accept('^')) {
      parse_unary();  // right associative, binds tighter than unary minus on the left
      emit(Op::pow);
    }
  }

  void parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (accept('(')) {
      parse_sum();
      if (!accept(')')) fail("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
      if (ec != std::errc{}) fail("bad number");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      emit(Op::constant, v);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "abs") {
        if (!accept('(')) fail("expected '(' after abs");
        parse_sum();
        if (!accept(')')) fail("expected ')'");
        emit(Op::abs);
        return;
      }
      const auto slot = resolve_(name);
      if (!slot) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      emit(Op::variable, 0.0, *slot);
      if (std::find(out_.slots_.begin(), out_.slots_.end(), *slot) == out_.slots_.end()) {
        out_.slots_.push_back(*slot);
      }
      return;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Expression::Resolver& resolve_;
  Expression& out_;
  std::size_t pos_ = 0;
  std::size_t nesting_ = 0;
};

Expression Expression::compile(std::string_view text, const Resolver& resolve) {
  Expression e;
  e.text_ = std::string(text);
  ExpressionParser(e.text_, resolve, e).run();
  std::sort(e.slots_.begin(), e.slots_.end());
  return e;
}

double Expression::evaluate(std::span<const double> vars) const {
  std::array<double, kMaxDepth> stack{};
  std::size_t top = 0;
  for (const auto& ins : code_) {
    switch (ins.op) {
      case Op::constant: stack[top++] = ins.value; break;
      case Op::variable: stack[top++] = vars[ins.slot]; break;
      case Op::neg: stack[top - 1] = -stack[top - 1]; break;
      case Op::abs: stack[top - 1] = std::abs(stack[top - 1]); break;
      default: {
        const double b = stack[--top];
        double& a = stack[top - 1];
        switch (ins.op) {
          case Op::add: a += b; break;
          case Op::sub: a -= b; break;
          case Op::mul: a *= b; break;
          case Op::div: a /= b; break;
          case Op::pow: a = std::pow(a, b); break;
          default: break;
        }
      }
    }
  }
  return top == 1 ? stack[0] : 0.0;
}

}  // namespace cqd::query
