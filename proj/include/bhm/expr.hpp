#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>

#include "bhm/bicomplex.hpp"

namespace bhm {

/// Immutable expression tree over complex variables x0, x1, ... with rational
/// operations and integer powers. Single-variable functions use x0.
///
/// Nodes are shared, so copying an Expr is cheap and subtrees may be reused
/// freely across trees (derivatives and substitutions share structure).
class Expr {
 public:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Pow };

  Expr();  // the constant 0

  static Expr constant(Complex c);
  static Expr variable(int index = 0);
  static Expr power(const Expr& base, int exponent);

  Op op() const;
  Complex value() const;      // Const only
  int var_index() const;      // Var only
  int exponent() const;       // Pow only
  std::size_t arity() const;
  const Expr& arg(std::size_t i) const;

  bool is_constant() const { return op() == Op::Const; }
  bool is_constant(Complex c) const { return is_constant() && value() == c; }
  /// True if some Var node occurs in the tree.
  bool has_variables() const;

  /// Evaluates with xk = vars[k]. Throws PoleEncountered when a divisor is
  /// negligible relative to its numerator, or a negative power hits zero.
  Complex eval(std::span<const Complex> vars, double tol = kIdentityTol) const;
  Complex eval(Complex x0, double tol = kIdentityTol) const;

  /// Exact symbolic partial derivative with respect to x_var.
  Expr derivative(int var = 0) const;

  /// Replaces every xk by replacements[k] (tree substitution / composition).
  Expr substitute(std::span<const Expr> replacements) const;

  std::size_t node_count() const;
  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  static Expr make(Op op, Expr a, Expr b);

  std::shared_ptr<const Node> node_;
};

}  // namespace bhm
