#include "bhm/expr.hpp"

#include <sstream>
#include <vector>

#include "bhm/error.hpp"

namespace bhm {

struct Expr::Node {
  Op op = Op::Const;
  Complex value{};
  int index = 0;     // Var
  int exponent = 0;  // Pow
  std::vector<Expr> args;
  bool has_vars = false;
};

Expr::Expr() : Expr(constant(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(Complex c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  return Expr(std::move(n));
}

Expr Expr::variable(int index) {
  if (index < 0) fail(ErrorCode::InvalidInput, "negative variable index");
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  n->has_vars = true;
  return Expr(std::move(n));
}

Expr Expr::make(Op op, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->has_vars = a.has_variables() || b.has_variables();
  n->args = {std::move(a), std::move(b)};
  return Expr(std::move(n));
}

Expr Expr::power(const Expr& base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base.is_constant() && (exponent > 0 || base.value() != Complex(0.0)))
    return constant(std::pow(base.value(), exponent));
  if (base.op() == Op::Pow) {
    // (f^m)^n = f^(mn) for integer exponents.
    return power(base.arg(0), base.exponent() * exponent);
  }
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->exponent = exponent;
  n->has_vars = base.has_variables();
  n->args = {base};
  return Expr(std::move(n));
}

Expr::Op Expr::op() const { return node_->op; }
Complex Expr::value() const { return node_->value; }
int Expr::var_index() const { return node_->index; }
int Expr::exponent() const { return node_->exponent; }
std::size_t Expr::arity() const { return node_->args.size(); }
const Expr& Expr::arg(std::size_t i) const { return node_->args.at(i); }
bool Expr::has_variables() const { return node_->has_vars; }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr::make(Expr::Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
  if (b.is_constant(0.0)) return a;
  return Expr::make(Expr::Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return Expr::make(Expr::Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant() && b.is_constant() && b.value() != Complex(0.0))
    return Expr::constant(a.value() / b.value());
  return Expr::make(Expr::Op::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  return Expr::constant(0.0) - a;
}

namespace {

Complex checked_divide(Complex num, Complex den, double tol) {
  if (negligible(std::abs(den), std::abs(num), tol))
    fail(ErrorCode::PoleEncountered, "division by a negligible value");
  return num / den;
}

}  // namespace

Complex Expr::eval(std::span<const Complex> vars, double tol) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const:
      return n.value;
    case Op::Var:
      if (static_cast<std::size_t>(n.index) >= vars.size())
        fail(ErrorCode::InvalidInput, "expression uses an unbound variable x" + std::to_string(n.index));
      return vars[n.index];
    case Op::Add:
      return n.args[0].eval(vars, tol) + n.args[1].eval(vars, tol);
    case Op::Sub:
      return n.args[0].eval(vars, tol) - n.args[1].eval(vars, tol);
    case Op::Mul:
      return n.args[0].eval(vars, tol) * n.args[1].eval(vars, tol);
    case Op::Div:
      return checked_divide(n.args[0].eval(vars, tol), n.args[1].eval(vars, tol), tol);
    case Op::Pow: {
      const Complex base = n.args[0].eval(vars, tol);
      Complex r = 1.0;
      const int m = n.exponent < 0 ? -n.exponent : n.exponent;
      for (int k = 0; k < m; ++k) r *= base;
      return n.exponent < 0 ? checked_divide(1.0, r, tol) : r;
    }
  }
  return {};
}

Complex Expr::eval(Complex x0, double tol) const { return eval(std::span<const Complex>(&x0, 1), tol); }

Expr Expr::derivative(int var) const {
  const Node& n = *node_;
  if (!n.has_vars) return constant(0.0);
  switch (n.op) {
    case Op::Const:
      return constant(0.0);
    case Op::Var:
      return constant(n.index == var ? 1.0 : 0.0);
    case Op::Add:
      return n.args[0].derivative(var) + n.args[1].derivative(var);
    case Op::Sub:
      return n.args[0].derivative(var) - n.args[1].derivative(var);
    case Op::Mul:
      return n.args[0].derivative(var) * n.args[1] + n.args[0] * n.args[1].derivative(var);
    case Op::Div: {
      const Expr& f = n.args[0];
      const Expr& g = n.args[1];
      return (f.derivative(var) * g - f * g.derivative(var)) / power(g, 2);
    }
    case Op::Pow: {
      const Expr& f = n.args[0];
      return constant(static_cast<double>(n.exponent)) * power(f, n.exponent - 1) * f.derivative(var);
    }
  }
  return constant(0.0);
}

Expr Expr::substitute(std::span<const Expr> replacements) const {
  const Node& n = *node_;
  if (!n.has_vars) return *this;
  switch (n.op) {
    case Op::Const:
      return *this;
    case Op::Var:
      if (static_cast<std::size_t>(n.index) >= replacements.size())
        fail(ErrorCode::InvalidInput, "substitution leaves x" + std::to_string(n.index) + " unbound");
      return replacements[n.index];
    case Op::Add:
      return n.args[0].substitute(replacements) + n.args[1].substitute(replacements);
    case Op::Sub:
      return n.args[0].substitute(replacements) - n.args[1].substitute(replacements);
    case Op::Mul:
      return n.args[0].substitute(replacements) * n.args[1].substitute(replacements);
    case Op::Div:
      return n.args[0].substitute(replacements) / n.args[1].substitute(replacements);
    case Op::Pow:
      return power(n.args[0].substitute(replacements), n.exponent);
  }
  return *this;
}

std::size_t Expr::node_count() const {
  std::size_t count = 1;
  for (const Expr& a : node_->args) count += a.node_count();
  return count;
}

std::string Expr::to_string() const {
  const Node& n = *node_;
  std::ostringstream os;
  switch (n.op) {
    case Op::Const:
      if (n.value.imag() == 0.0) os << n.value.real();
      else os << '(' << n.value.real() << (n.value.imag() < 0 ? "-" : "+") << std::abs(n.value.imag()) << "i)";
      break;
    case Op::Var:
      os << 'x' << n.index;
      break;
    case Op::Add: os << '(' << n.args[0].to_string() << " + " << n.args[1].to_string() << ')'; break;
    case Op::Sub: os << '(' << n.args[0].to_string() << " - " << n.args[1].to_string() << ')'; break;
    case Op::Mul: os << n.args[0].to_string() << '*' << n.args[1].to_string(); break;
    case Op::Div: os << n.args[0].to_string() << '/' << n.args[1].to_string(); break;
    case Op::Pow: os << n.args[0].to_string() << '^' << n.exponent; break;
  }
  return os.str();
}

}  // namespace bhm
