#include "unitaylor/approx/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "unitaylor/errors.hpp"

namespace unitaylor::approx {

namespace {

const std::set<std::string> kFunctions = {"exp", "log", "sqrt", "sin", "cos", "tan", "sinh", "cosh", "conj"};

class Parser {
 public:
  Parser(std::string_view text, std::size_t dim, std::vector<Expression::Node>& nodes)
      : s_(text), dim_(dim), nodes_(nodes) {}

  int parse() {
    int root = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return root;
  }
  bool used_conj() const { return conj_; }

 private:
  using Op = Expression::Node::Op;

  [[noreturn]] void fail(const std::string& why) const {
    std::ostringstream msg;
    msg << "expression \"" << s_ << "\": " << why << " at offset " << pos_;
    throw ConfigError(msg.str());
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  int push(Expression::Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }
  int binary(Op op, int l, int r) {
    Expression::Node n;
    n.op = op;
    n.lhs = l;
    n.rhs = r;
    return push(n);
  }
  int expr() {
    int l = term();
    while (true) {
      if (eat('+'))
        l = binary(Op::Add, l, term());
      else if (eat('-'))
        l = binary(Op::Sub, l, term());
      else
        return l;
    }
  }
  int term() {
    int l = unary();
    while (true) {
      if (eat('*'))
        l = binary(Op::Mul, l, unary());
      else if (eat('/'))
        l = binary(Op::Div, l, unary());
      else
        return l;
    }
  }
  int unary() {
    if (eat('-')) {
      Expression::Node n;
      n.op = Op::Neg;
      n.lhs = unary();
      return push(n);
    }
    if (eat('+')) return unary();
    return power();
  }
  int power() {
    int base = atom();
    if (eat('^')) return binary(Op::Pow, base, unary());
    return base;
  }
  int atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      int inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      Expression::Node n;
      n.op = Op::Const;
      n.func = std::string(s_.substr(start, pos_ - start));
      try {
        n.value = std::stod(n.func);
      } catch (const std::exception&) {
        fail("bad number");
      }
      return push(n);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      Expression::Node n;
      if (name == "i") {
        n.value = Complex(0, 1);
        n.func = "i";
        return push(n);
      }
      if (name == "pi") {
        n.value = std::numbers::pi;
        n.func = "pi";
        return push(n);
      }
      if (name == "e") {
        n.value = std::numbers::e;
        n.func = "e";
        return push(n);
      }
      if (name == "z" && dim_ == 1) {
        n.op = Op::Var;
        n.var = 0;
        return push(n);
      }
      if (name.size() == 2 && name[0] == 'z' && std::isdigit(static_cast<unsigned char>(name[1]))) {
        int v = name[1] - '1';
        if (v < 0 || static_cast<std::size_t>(v) >= dim_) fail("variable " + name + " out of range");
        n.op = Op::Var;
        n.var = v;
        return push(n);
      }
      if (kFunctions.count(name)) {
        if (!eat('(')) fail("expected '(' after " + name);
        n.op = Op::Func;
        n.func = name;
        n.lhs = expr();
        if (!eat(')')) fail("expected ')'");
        if (name == "conj") conj_ = true;
        return push(n);
      }
      fail("unknown identifier '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t dim_;
  std::vector<Expression::Node>& nodes_;
  std::size_t pos_ = 0;
  bool conj_ = false;
};

template <class C>
C from_complex(Complex v);
template <>
Complex from_complex<Complex>(Complex v) {
  return v;
}
template <>
HiComplex from_complex<HiComplex>(Complex v) {
  return to_hi(v);
}

template <class C>
C constant_of(const Expression::Node& n);
template <>
Complex constant_of<Complex>(const Expression::Node& n) {
  return n.value;
}
template <>
HiComplex constant_of<HiComplex>(const Expression::Node& n) {
  if (n.func == "i") return HiComplex(HiReal(0), HiReal(1));
  if (n.func == "pi") return HiComplex(boost::math::constants::pi<HiReal>(), HiReal(0));
  if (n.func == "e") return HiComplex(boost::math::constants::e<HiReal>(), HiReal(0));
  return HiComplex(HiReal(n.func), HiReal(0));
}

template <class C>
C conj_of(const C& x) {
  return C(x.real(), -x.imag());
}

template <class C>
C eval_node(const std::vector<Expression::Node>& nodes, int id, std::span<const C> z) {
  using Op = Expression::Node::Op;
  const auto& n = nodes[static_cast<std::size_t>(id)];
  switch (n.op) {
    case Op::Const:
      return constant_of<C>(n);
    case Op::Var:
      return z[static_cast<std::size_t>(n.var)];
    case Op::Add:
      return eval_node(nodes, n.lhs, z) + eval_node(nodes, n.rhs, z);
    case Op::Sub:
      return eval_node(nodes, n.lhs, z) - eval_node(nodes, n.rhs, z);
    case Op::Mul:
      return eval_node(nodes, n.lhs, z) * eval_node(nodes, n.rhs, z);
    case Op::Div:
      return eval_node(nodes, n.lhs, z) / eval_node(nodes, n.rhs, z);
    case Op::Neg:
      return -eval_node(nodes, n.lhs, z);
    case Op::Pow: {
      const auto& ex = nodes[static_cast<std::size_t>(n.rhs)];
      C base = eval_node(nodes, n.lhs, z);
      // Integer exponents by repeated multiplication keep full accuracy.
      if (ex.op == Op::Const && ex.value.imag() == 0 && std::abs(ex.value.real()) <= 64 &&
          ex.value.real() == std::floor(ex.value.real())) {
        int k = static_cast<int>(ex.value.real());
        C r = from_complex<C>(1.0);
        for (int i = 0; i < std::abs(k); ++i) r *= base;
        return k < 0 ? from_complex<C>(1.0) / r : r;
      }
      return pow(base, eval_node(nodes, n.rhs, z));
    }
    case Op::Func: {
      C a = eval_node(nodes, n.lhs, z);
      const std::string& f = n.func;
      if (f == "exp") return exp(a);
      if (f == "log") return log(a);
      if (f == "sqrt") return sqrt(a);
      if (f == "sin") return sin(a);
      if (f == "cos") return cos(a);
      if (f == "tan") return tan(a);
      if (f == "sinh") return sinh(a);
      if (f == "cosh") return cosh(a);
      if (f == "conj") return conj_of(a);
      break;
    }
  }
  throw PreconditionError("malformed expression node");
}

template <class C>
C eval_root(const std::vector<Expression::Node>& nodes, int root, std::span<const C> z) {
  return eval_node<C>(nodes, root, z);
}

}  // namespace

Expression Expression::parse(std::string_view text, std::size_t dimension) {
  if (dimension == 0) throw ConfigError("expression dimension must be >= 1");
  Expression e;
  e.text_ = std::string(text);
  e.dimension_ = dimension;
  Parser p(text, dimension, e.nodes_);
  e.root_ = p.parse();
  e.uses_conj_ = p.used_conj();
  return e;
}

Complex Expression::evaluate(std::span<const Complex> z) const {
  if (z.size() != dimension_) throw PreconditionError("expression point dimension mismatch");
  return eval_root<Complex>(nodes_, root_, z);
}

HiComplex Expression::evaluate(std::span<const HiComplex> z) const {
  if (z.size() != dimension_) throw PreconditionError("expression point dimension mismatch");
  return eval_root<HiComplex>(nodes_, root_, z);
}

}  // namespace unitaylor::approx
