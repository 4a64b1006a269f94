#include "tstk/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <vector>

namespace tstk {

struct FieldExpr::Node {
  enum class Kind { number, imag, pi, coord, neg, add, sub, mul, div, pow, func };
  Kind kind;
  double number = 0;
  int coord = 0;
  std::string func;
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = FieldExpr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

const char* const kFunctions[] = {"sin", "cos", "exp", "ln", "abs", "sqrt", "conj", "re", "im"};

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (accept('+')) e = make(Kind::add, e, term());
      else if (accept('-')) e = make(Kind::sub, e, term());
      else return e;
    }
  }

  NodePtr term() {
    NodePtr e = unary();
    for (;;) {
      if (accept('*')) e = make(Kind::mul, e, unary());
      else if (accept('/')) e = make(Kind::div, e, unary());
      else return e;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail_at("malformed number", start);
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // plain 'e' belongs to what follows
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::number;
    node->number = std::stod(std::string(s_.substr(start, pos_ - start)));
    return node;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string id(s_.substr(start, pos_ - start));
    if (id == "i") return make(Kind::imag);
    if (id == "pi") return make(Kind::pi);
    if (id.size() == 2 && id[0] == 'x' && std::isdigit(static_cast<unsigned char>(id[1]))) {
      const int k = id[1] - '0';
      if (k >= kMaxDim) fail_at("coordinate index out of range: " + id, start);
      auto node = std::make_shared<Node>();
      node->kind = Kind::coord;
      node->coord = k;
      return node;
    }
    for (const char* f : kFunctions) {
      if (id == f) {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != '(') fail("expected '(' after function " + id);
        ++pos_;
        auto node = std::make_shared<Node>();
        node->kind = Kind::func;
        node->func = id;
        node->a = expr();
        expect(')');
        return node;
      }
    }
    fail_at("unknown identifier '" + id + "'", start);
  }
};

Jet constant_jet(cplx v) {
  Jet j;
  j.v = v;
  return j;
}

Jet scaled(const Jet& a, cplx fv, cplx fp) {
  Jet r;
  r.v = fv;
  for (int k = 0; k < kMaxDim; ++k) r.d[k] = fp * a.d[k];
  return r;
}

bool is_constant(const Jet& j) {
  for (const auto& z : j.d)
    if (z != 0.0) return false;
  return true;
}

Jet eval_node(const Node& n, std::span<const double> x) {
  switch (n.kind) {
    case Kind::number: return constant_jet(n.number);
    case Kind::imag: return constant_jet(kI);
    case Kind::pi: return constant_jet(kPi);
    case Kind::coord: {
      if (n.coord >= static_cast<int>(x.size())) throw EvalError("coordinate x" + std::to_string(n.coord) + " not available");
      Jet j = constant_jet(x[n.coord]);
      j.d[n.coord] = 1.0;
      return j;
    }
    case Kind::neg: {
      const Jet a = eval_node(*n.a, x);
      return scaled(a, -a.v, -1.0);
    }
    case Kind::add:
    case Kind::sub: {
      const Jet a = eval_node(*n.a, x), b = eval_node(*n.b, x);
      const double s = n.kind == Kind::add ? 1.0 : -1.0;
      Jet r;
      r.v = a.v + s * b.v;
      for (int k = 0; k < kMaxDim; ++k) r.d[k] = a.d[k] + s * b.d[k];
      return r;
    }
    case Kind::mul: {
      const Jet a = eval_node(*n.a, x), b = eval_node(*n.b, x);
      Jet r;
      r.v = a.v * b.v;
      for (int k = 0; k < kMaxDim; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
      return r;
    }
    case Kind::div: {
      const Jet a = eval_node(*n.a, x), b = eval_node(*n.b, x);
      if (b.v == 0.0) throw EvalError("division by zero");
      Jet r;
      r.v = a.v / b.v;
      for (int k = 0; k < kMaxDim; ++k) r.d[k] = (a.d[k] * b.v - a.v * b.d[k]) / (b.v * b.v);
      return r;
    }
    case Kind::pow: {
      const Jet a = eval_node(*n.a, x), b = eval_node(*n.b, x);
      if (is_constant(b) && b.v.imag() == 0.0 && std::floor(b.v.real()) == b.v.real() &&
          std::abs(b.v.real()) <= 64) {
        const int e = static_cast<int>(b.v.real());
        if (a.v == 0.0 && e < 0) throw EvalError("division by zero");
        const cplx val = std::pow(a.v, e);
        const cplx der = e == 0 ? cplx(0.0) : static_cast<double>(e) * std::pow(a.v, e - 1);
        return scaled(a, val, der);
      }
      if (a.v == 0.0) throw EvalError("non-integer power of zero");
      const cplx la = std::log(a.v);
      const cplx val = std::exp(b.v * la);
      Jet r;
      r.v = val;
      for (int k = 0; k < kMaxDim; ++k) r.d[k] = val * (b.d[k] * la + b.v * a.d[k] / a.v);
      return r;
    }
    case Kind::func: {
      const Jet a = eval_node(*n.a, x);
      const std::string& f = n.func;
      if (f == "sin") return scaled(a, std::sin(a.v), std::cos(a.v));
      if (f == "cos") return scaled(a, std::cos(a.v), -std::sin(a.v));
      if (f == "exp") return scaled(a, std::exp(a.v), std::exp(a.v));
      if (f == "ln") {
        if (a.v == 0.0) throw EvalError("ln of zero");
        return scaled(a, std::log(a.v), 1.0 / a.v);
      }
      if (f == "sqrt") {
        if (a.v == 0.0) throw EvalError("sqrt derivative at zero");
        const cplx s = std::sqrt(a.v);
        return scaled(a, s, 0.5 / s);
      }
      if (f == "conj" || f == "re" || f == "im" || f == "abs") {
        Jet r;
        if (f == "conj") {
          r.v = std::conj(a.v);
          for (int k = 0; k < kMaxDim; ++k) r.d[k] = std::conj(a.d[k]);
        } else if (f == "re") {
          r.v = a.v.real();
          for (int k = 0; k < kMaxDim; ++k) r.d[k] = a.d[k].real();
        } else if (f == "im") {
          r.v = a.v.imag();
          for (int k = 0; k < kMaxDim; ++k) r.d[k] = a.d[k].imag();
        } else {
          const double m = std::abs(a.v);
          r.v = m;
          // d|z| = Re(conj(z) dz)/|z|; zero subgradient at z = 0.
          for (int k = 0; k < kMaxDim; ++k) r.d[k] = m == 0.0 ? 0.0 : (std::conj(a.v) * a.d[k]).real() / m;
        }
        return r;
      }
      throw EvalError("unknown function " + f);
    }
  }
  throw EvalError("corrupt expression");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string print(const Node& n) {
  switch (n.kind) {
    case Kind::number: return format_number(n.number);
    case Kind::imag: return "i";
    case Kind::pi: return "pi";
    case Kind::coord: return "x" + std::to_string(n.coord);
    case Kind::neg: return "(-" + print(*n.a) + ")";
    case Kind::add: return "(" + print(*n.a) + " + " + print(*n.b) + ")";
    case Kind::sub: return "(" + print(*n.a) + " - " + print(*n.b) + ")";
    case Kind::mul: return "(" + print(*n.a) + " * " + print(*n.b) + ")";
    case Kind::div: return "(" + print(*n.a) + " / " + print(*n.b) + ")";
    case Kind::pow: return "(" + print(*n.a) + " ^ " + print(*n.b) + ")";
    case Kind::func: return n.func + "(" + print(*n.a) + ")";
  }
  return "";
}

int max_coord(const Node& n) {
  int m = n.kind == Kind::coord ? n.coord : -1;
  if (n.a) m = std::max(m, max_coord(*n.a));
  if (n.b) m = std::max(m, max_coord(*n.b));
  return m;
}

}  // namespace

FieldExpr FieldExpr::parse(std::string_view source) {
  FieldExpr e;
  e.root_ = Parser(source).parse();
  return e;
}

Jet FieldExpr::eval_jet(std::span<const double> x) const { return eval_node(*root_, x); }

ScalarField FieldExpr::evaluate(const TorusGrid& grid) const {
  if (max_coordinate() >= grid.dim())
    throw EvalError("expression uses x" + std::to_string(max_coordinate()) + " on a " + std::to_string(grid.dim()) +
                    "-dimensional grid");
  ScalarField f(grid);
  const int n = grid.dim();
  f.grad.assign(n, std::vector<cplx>(grid.points()));
  std::vector<double> x(n);
  for (std::size_t p = 0; p < grid.points(); ++p) {
    for (int mu = 0; mu < n; ++mu) x[mu] = grid.coord(p, mu);
    const Jet j = eval_jet(x);
    f.v[p] = j.v;
    for (int mu = 0; mu < n; ++mu) f.grad[mu][p] = j.d[mu];
  }
  return f;
}

std::string FieldExpr::to_string() const { return print(*root_); }

int FieldExpr::max_coordinate() const { return max_coord(*root_); }

}  // namespace tstk
