#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cqd::query {

// Restricted arithmetic: numbers, named variables, + - * / ^, unary minus,
// parentheses and abs(). Compiled once to postfix code, evaluated without
// allocation.
class Expression {
 public:
  // Maps a variable name to a slot in the evaluation vector.
  using Resolver = std::function<std::optional<std::size_t>(std::string_view)>;

  // Throws Error(parse) with the offending position.
  static Expression compile(std::string_view text, const Resolver& resolve);

  double evaluate(std::span<const double> vars) const;

  // Slots referenced by the expression, ascending, without repeats.
  const std::vector<std::size_t>& slots() const { return slots_; }
  const std::string& text() const { return text_; }

 private:
  enum class Op : unsigned char { constant, variable, add, sub, mul, div, pow, neg, abs };
  struct Instr {
    Op op;
    double value;
    std::size_t slot;
  };
  static constexpr std::size_t kMaxDepth = 64;

  friend class ExpressionParser;
  std::vector<Instr> code_;
  std::vector<std::size_t> slots_;
  std::string text_;
};

}  // namespace cqd::query
