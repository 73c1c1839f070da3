#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitaylor/numeric.hpp"

namespace unitaylor::approx {

// Closed-form expression in z (d = 1) or z1..z9. Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := ('+'|'-') unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'i' | 'pi' | 'e' | variable | func '(' expr ')' | '(' expr ')'
// Functions: exp log sqrt sin cos tan sinh cosh conj.
class Expression {
 public:
  static Expression parse(std::string_view text, std::size_t dimension);

  const std::string& text() const { return text_; }
  std::size_t dimension() const { return dimension_; }
  // True when conj() appears; such targets are not holomorphic.
  bool uses_conjugate() const { return uses_conj_; }

  Complex evaluate(std::span<const Complex> z) const;
  HiComplex evaluate(std::span<const HiComplex> z) const;

  struct Node;

 private:
  std::string text_;
  std::size_t dimension_ = 1;
  bool uses_conj_ = false;
  std::vector<Node> nodes_;
  int root_ = -1;
};

struct Expression::Node {
  enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Func } op = Op::Const;
  Complex value{};
  int var = 0;
  int lhs = -1, rhs = -1;
  std::string func;
};

}  // namespace unitaylor::approx
