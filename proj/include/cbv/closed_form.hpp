#pragma once

// Expression trees for the right-hand sides of identities. Leaves are exact
// literals or named constants; evaluation yields a Ball.

#include <memory>
#include <string>
#include <vector>

#include "cbv/ball.hpp"
#include "cbv/exact.hpp"

namespace cbv {

enum class NodeKind {
  Constant,
  Rational,
  Surd,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Sqrt,
  Ln,
  PowInt,
  Arcsin,
  Psi,      // 2G + pi - 2 - ln2 - pi ln2
  PsiStar,  // 2 + pi - 2 ln8
};

std::string_view to_string(NodeKind k);

struct Node;

class ClosedForm {
 public:
  ClosedForm();  // rational 0
  explicit ClosedForm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const { return *node_; }
  NodeKind kind() const;

  /// Throws DomainError naming the offending node.
  Ball eval(Precision prec) const;
  std::string to_string() const;
  /// Number of nodes.
  std::size_t size() const;
  /// Subtrees built only from exact literals collapse into one surd literal.
  ClosedForm folded() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Node {
  NodeKind kind = NodeKind::Rational;
  ConstantName constant = ConstantName::Pi;
  SurdQ5 value;  // Rational / Surd leaves
  long k = 0;    // PowInt exponent
  std::vector<ClosedForm> args;
};

namespace expr {

ClosedForm cst(ConstantName c);
ClosedForm lit(long v);
ClosedForm lit(long num, long den);
ClosedForm lit(const BigRational& v);
ClosedForm surd(const SurdQ5& v);
ClosedForm sqrt(const ClosedForm& x);
ClosedForm ln(const ClosedForm& x);
ClosedForm pow(const ClosedForm& x, long k);
ClosedForm arcsin(const ClosedForm& x);
ClosedForm psi();
ClosedForm psi_star();

ClosedForm operator+(const ClosedForm& a, const ClosedForm& b);
ClosedForm operator-(const ClosedForm& a, const ClosedForm& b);
ClosedForm operator*(const ClosedForm& a, const ClosedForm& b);
ClosedForm operator/(const ClosedForm& a, const ClosedForm& b);
ClosedForm operator-(const ClosedForm& a);

inline ClosedForm pi() { return cst(ConstantName::Pi); }
inline ClosedForm ln2() { return cst(ConstantName::Ln2); }
inline ClosedForm catalan() { return cst(ConstantName::CatalanG); }
inline ClosedForm zeta3() { return cst(ConstantName::Zeta3); }
inline ClosedForm sqrt5() { return cst(ConstantName::Sqrt5); }
inline ClosedForm alpha() { return cst(ConstantName::Alpha); }
inline ClosedForm zeta2() { return cst(ConstantName::Zeta2); }

}  // namespace expr

/// Exact structural equality.
bool structurally_equal(const ClosedForm& a, const ClosedForm& b);

/// Count of minimal differing subtrees: a node whose kind or leaf value
/// differs counts once and is not descended into.
int structural_difference(const ClosedForm& a, const ClosedForm& b);

}  // namespace cbv
