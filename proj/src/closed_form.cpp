#include "cbv/closed_form.hpp"

#include <optional>

#include "cbv/error.hpp"

namespace cbv {

namespace {

constexpr Precision kEvalGuard = 32;

ClosedForm make(NodeKind k, std::vector<ClosedForm> args, long e = 0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = std::move(args);
  n->k = e;
  return ClosedForm(std::move(n));
}

ClosedForm leaf(NodeKind k, const SurdQ5& v) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->value = v;
  return ClosedForm(std::move(n));
}

bool is_literal(const Node& n) { return n.kind == NodeKind::Rational || n.kind == NodeKind::Surd; }

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::PowInt: return 4;
    default: return 5;
  }
}

std::string literal_text(const Node& n) {
  if (n.kind == NodeKind::Rational) return n.value.rational_part().get_str();
  return "(" + n.value.to_string() + ")";
}

std::string render(const ClosedForm& f);

std::string wrap(const ClosedForm& child, int parent_prec, bool right_assoc_strict) {
  int p = precedence(child.kind());
  if (child.kind() == NodeKind::Rational && child.node().value.rational_part().get_den() != 1) p = 2;
  std::string s = render(child);
  if (p < parent_prec || (right_assoc_strict && p == parent_prec)) return "(" + s + ")";
  return s;
}

std::string render(const ClosedForm& f) {
  const Node& n = f.node();
  switch (n.kind) {
    case NodeKind::Constant: return std::string(to_string(n.constant));
    case NodeKind::Rational:
    case NodeKind::Surd: return literal_text(n);
    case NodeKind::Add: return wrap(n.args[0], 1, false) + " + " + wrap(n.args[1], 1, false);
    case NodeKind::Sub: return wrap(n.args[0], 1, false) + " - " + wrap(n.args[1], 1, true);
    case NodeKind::Mul: return wrap(n.args[0], 2, false) + "*" + wrap(n.args[1], 2, false);
    case NodeKind::Div: return wrap(n.args[0], 2, false) + "/" + wrap(n.args[1], 2, true);
    case NodeKind::Neg: return "-" + wrap(n.args[0], 3, false);
    case NodeKind::Sqrt: return "sqrt(" + render(n.args[0]) + ")";
    case NodeKind::Ln: return "ln(" + render(n.args[0]) + ")";
    case NodeKind::Arcsin: return "arcsin(" + render(n.args[0]) + ")";
    case NodeKind::PowInt: return wrap(n.args[0], 5, false) + "^" + std::to_string(n.k);
    case NodeKind::Psi: return "PSI";
    case NodeKind::PsiStar: return "PSI_STAR";
  }
  return "?";
}

Ball psi_value(Precision p) {
  const Ball pi = constant(ConstantName::Pi, p);
  const Ball l2 = constant(ConstantName::Ln2, p);
  Ball g = constant(ConstantName::CatalanG, p);
  g.mul_si(2);
  return g + pi - Ball(2, p) - l2 - pi * l2;
}

Ball psi_star_value(Precision p) {
  Ball l8 = constant(ConstantName::Ln2, p);
  l8.mul_si(6);  // 2 ln 8
  return Ball(2, p) + constant(ConstantName::Pi, p) - l8;
}

Ball eval_node(const ClosedForm& f, Precision p) {
  const Node& n = f.node();
  auto arg = [&](std::size_t i) { return eval_node(n.args[i], p); };
  auto guarded = [&](auto&& fn) -> Ball {
    try {
      return fn();
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " at node " + render(f));
    }
  };
  switch (n.kind) {
    case NodeKind::Constant: return constant(n.constant, p);
    case NodeKind::Rational: return Ball(n.value.rational_part(), p);
    case NodeKind::Surd: return from_surd(n.value, p);
    case NodeKind::Add: return arg(0) + arg(1);
    case NodeKind::Sub: return arg(0) - arg(1);
    case NodeKind::Mul: return arg(0) * arg(1);
    case NodeKind::Div: {
      Ball a = arg(0), b = arg(1);
      return guarded([&] { return a / b; });
    }
    case NodeKind::Neg: return -arg(0);
    case NodeKind::Sqrt: {
      Ball a = arg(0);
      return guarded([&] { return sqrt(a); });
    }
    case NodeKind::Ln: {
      Ball a = arg(0);
      return guarded([&] { return log(a); });
    }
    case NodeKind::Arcsin: {
      Ball a = arg(0);
      return guarded([&] { return asin(a); });
    }
    case NodeKind::PowInt: {
      Ball a = arg(0);
      return guarded([&] { return pow_int(a, n.k); });
    }
    case NodeKind::Psi: return psi_value(p);
    case NodeKind::PsiStar: return psi_star_value(p);
  }
  throw UsageError("unknown closed-form node");
}

std::optional<SurdQ5> fold_value(const Node& n, const std::vector<ClosedForm>& args) {
  auto lit = [&](std::size_t i) -> std::optional<SurdQ5> {
    if (!is_literal(args[i].node())) return std::nullopt;
    return args[i].node().value;
  };
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      auto a = lit(0), b = lit(1);
      if (!a || !b) return std::nullopt;
      if (n.kind == NodeKind::Add) return *a + *b;
      if (n.kind == NodeKind::Sub) return *a - *b;
      if (n.kind == NodeKind::Mul) return *a * *b;
      if (b->is_zero()) return std::nullopt;
      return *a / *b;
    }
    case NodeKind::Neg: {
      auto a = lit(0);
      if (!a) return std::nullopt;
      return -*a;
    }
    case NodeKind::PowInt: {
      auto a = lit(0);
      if (!a || (a->is_zero() && n.k < 0)) return std::nullopt;
      return a->pow(n.k);
    }
    case NodeKind::Constant:
      if (n.constant == ConstantName::Sqrt5) return SurdQ5::sqrt5();
      if (n.constant == ConstantName::Alpha) return SurdQ5::alpha();
      return std::nullopt;
    default: return std::nullopt;
  }
}

ClosedForm fold(const ClosedForm& f) {
  const Node& n = f.node();
  if (is_literal(n)) return f;
  std::vector<ClosedForm> args;
  for (const auto& a : n.args) args.push_back(fold(a));
  if (auto v = fold_value(n, args)) return v->is_rational() ? expr::lit(v->rational_part()) : expr::surd(*v);
  auto copy = std::make_shared<Node>(n);
  copy->args = std::move(args);
  return ClosedForm(std::move(copy));
}

bool same_leaf(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Constant: return a.constant == b.constant;
    case NodeKind::Rational:
    case NodeKind::Surd: return a.value == b.value;
    case NodeKind::PowInt: return a.k == b.k;
    default: return a.args.size() == b.args.size();
  }
}

}  // namespace

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Constant: return "constant";
    case NodeKind::Rational: return "rational";
    case NodeKind::Surd: return "surd";
    case NodeKind::Add: return "add";
    case NodeKind::Sub: return "sub";
    case NodeKind::Mul: return "mul";
    case NodeKind::Div: return "div";
    case NodeKind::Neg: return "neg";
    case NodeKind::Sqrt: return "sqrt";
    case NodeKind::Ln: return "ln";
    case NodeKind::PowInt: return "pow_int";
    case NodeKind::Arcsin: return "arcsin";
    case NodeKind::Psi: return "PSI";
    case NodeKind::PsiStar: return "PSI_STAR";
  }
  return "?";
}

ClosedForm::ClosedForm() : node_(std::make_shared<Node>()) {}

NodeKind ClosedForm::kind() const { return node_->kind; }

Ball ClosedForm::eval(Precision prec) const {
  if (prec < 2) throw UsageError("precision must be at least 2 bits");
  return eval_node(*this, prec + kEvalGuard).rounded_to(prec);
}

std::string ClosedForm::to_string() const { return render(*this); }

std::size_t ClosedForm::size() const {
  std::size_t s = 1;
  for (const auto& a : node_->args) s += a.size();
  return s;
}

ClosedForm ClosedForm::folded() const { return fold(*this); }

bool structurally_equal(const ClosedForm& a, const ClosedForm& b) { return structural_difference(a, b) == 0; }

int structural_difference(const ClosedForm& a, const ClosedForm& b) {
  if (!same_leaf(a.node(), b.node())) return 1;
  int d = 0;
  for (std::size_t i = 0; i < a.node().args.size(); ++i) d += structural_difference(a.node().args[i], b.node().args[i]);
  return d;
}

namespace expr {

ClosedForm cst(ConstantName c) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->constant = c;
  return ClosedForm(std::move(n));
}

ClosedForm lit(long v) { return leaf(NodeKind::Rational, SurdQ5(v)); }
ClosedForm lit(long num, long den) { return leaf(NodeKind::Rational, SurdQ5(make_rational(num, den))); }
ClosedForm lit(const BigRational& v) { return leaf(NodeKind::Rational, SurdQ5(v)); }
ClosedForm surd(const SurdQ5& v) { return leaf(v.is_rational() ? NodeKind::Rational : NodeKind::Surd, v); }
ClosedForm sqrt(const ClosedForm& x) { return make(NodeKind::Sqrt, {x}); }
ClosedForm ln(const ClosedForm& x) { return make(NodeKind::Ln, {x}); }
ClosedForm pow(const ClosedForm& x, long k) { return make(NodeKind::PowInt, {x}, k); }
ClosedForm arcsin(const ClosedForm& x) { return make(NodeKind::Arcsin, {x}); }
ClosedForm psi() { return make(NodeKind::Psi, {}); }
ClosedForm psi_star() { return make(NodeKind::PsiStar, {}); }

ClosedForm operator+(const ClosedForm& a, const ClosedForm& b) { return make(NodeKind::Add, {a, b}); }
ClosedForm operator-(const ClosedForm& a, const ClosedForm& b) { return make(NodeKind::Sub, {a, b}); }
ClosedForm operator*(const ClosedForm& a, const ClosedForm& b) { return make(NodeKind::Mul, {a, b}); }
ClosedForm operator/(const ClosedForm& a, const ClosedForm& b) { return make(NodeKind::Div, {a, b}); }
ClosedForm operator-(const ClosedForm& a) { return make(NodeKind::Neg, {a}); }

}  // namespace expr

}  // namespace cbv
