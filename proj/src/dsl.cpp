#include "tamecell/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <sstream>

namespace tamecell {
namespace dsl {

const Decl* Program::find(const std::string& name) const {
  for (const auto& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

namespace {

struct Token {
  enum class Kind { Name, Var, Number, Punct, End };
  Kind kind;
  std::string text;
  double value = 0;
  int var = 0;
  int line = 1, col = 1;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;
  Token cur;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  void bump(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void advance() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {  // comment to end of line
        while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump(c);
      } else {
        break;
      }
    }
    cur = {};
    cur.line = line;
    cur.col = col;
    if (pos >= src.size()) {
      cur.kind = Token::Kind::End;
      return;
    }
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.' ||
              src[pos] == 'e' || src[pos] == 'E' ||
              ((src[pos] == '+' || src[pos] == '-') && pos > start &&
               (src[pos - 1] == 'e' || src[pos - 1] == 'E'))))
        bump(src[pos]);
      cur.kind = Token::Kind::Number;
      cur.text = src.substr(start, pos - start);
      auto res = std::from_chars(cur.text.data(), cur.text.data() + cur.text.size(),
                                 cur.value);
      if (res.ec != std::errc{})
        throw ParseError("syntax error: bad number '" + cur.text + "'", cur.line,
                         cur.col);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                  src[pos] == '_'))
        bump(src[pos]);
      cur.text = src.substr(start, pos - start);
      // t<k> is a variable
      if (cur.text.size() >= 2 && cur.text[0] == 't' &&
          std::all_of(cur.text.begin() + 1, cur.text.end(),
                      [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        cur.kind = Token::Kind::Var;
        cur.var = std::atoi(cur.text.c_str() + 1);
        if (cur.var < 1)
          throw ParseError("syntax error: variables are t1, t2, ...", cur.line, cur.col);
        return;
      }
      cur.kind = Token::Kind::Name;
      return;
    }
    cur.kind = Token::Kind::Punct;
    cur.text = std::string(1, c);
    bump(c);
  }

  bool is_punct(const char* p) const {
    return cur.kind == Token::Kind::Punct && cur.text == p;
  }
  void expect_punct(const char* p) {
    if (!is_punct(p))
      throw ParseError(std::string("syntax error: expected '") + p + "'", cur.line,
                       cur.col);
    advance();
  }
};

NodePtr make(Node n) { return std::make_shared<Node>(std::move(n)); }

struct Parser {
  Lexer lex;
  Program* prog;  // declarations so far, for reference checks

  Parser(const std::string& s, Program* p) : lex(s), prog(p) {}

  NodePtr parse_expr() {
    NodePtr e = parse_term();
    while (lex.is_punct("+") || lex.is_punct("-")) {
      bool plus = lex.cur.text == "+";
      lex.advance();
      NodePtr r = parse_term();
      Node n;
      n.kind = plus ? Node::Kind::Add : Node::Kind::Sub;
      n.args = {e, r};
      e = make(std::move(n));
    }
    return e;
  }

  NodePtr parse_term() {
    NodePtr e = parse_unary();
    while (lex.is_punct("*") || lex.is_punct("/")) {
      bool mul = lex.cur.text == "*";
      lex.advance();
      NodePtr r = parse_unary();
      Node n;
      n.kind = mul ? Node::Kind::Mul : Node::Kind::Div;
      n.args = {e, r};
      e = make(std::move(n));
    }
    return e;
  }

  NodePtr parse_unary() {
    if (lex.is_punct("-")) {
      lex.advance();
      Node n;
      n.kind = Node::Kind::Neg;
      n.args = {parse_unary()};
      return make(std::move(n));
    }
    return parse_atom();
  }

  int scalar_arity(const NodePtr& e);

  NodePtr parse_atom() {
    Token t = lex.cur;
    if (t.kind == Token::Kind::Number) {
      lex.advance();
      Node n;
      n.kind = Node::Kind::Num;
      n.num = t.value;
      return make(std::move(n));
    }
    if (t.kind == Token::Kind::Var) {
      lex.advance();
      Node n;
      n.kind = Node::Kind::Var;
      n.var = t.var;
      return make(std::move(n));
    }
    if (lex.is_punct("(")) {
      lex.advance();
      NodePtr e = parse_expr();
      lex.expect_punct(")");
      return e;
    }
    if (t.kind != Token::Kind::Name)
      throw ParseError("syntax error: unexpected '" + t.text + "'", t.line, t.col);
    std::string name = t.text;
    lex.advance();
    if (name == "sin" || name == "cos" || name == "exp") {
      lex.expect_punct("(");
      NodePtr a = parse_expr();
      lex.expect_punct(")");
      Node n;
      n.kind = name == "sin" ? Node::Kind::Sin
                             : (name == "cos" ? Node::Kind::Cos : Node::Kind::Exp);
      n.args = {a};
      return make(std::move(n));
    }
    if (name == "smash") {
      lex.expect_punct("(");
      if (lex.cur.kind != Token::Kind::Number)
        throw ParseError("syntax error: smash needs numeric sigma", lex.cur.line,
                         lex.cur.col);
      double sig = lex.cur.value;
      lex.advance();
      lex.expect_punct(",");
      if (lex.cur.kind != Token::Kind::Number)
        throw ParseError("syntax error: smash needs numeric tau", lex.cur.line,
                         lex.cur.col);
      double tau = lex.cur.value;
      lex.advance();
      lex.expect_punct(";");
      NodePtr a = parse_expr();
      lex.expect_punct(")");
      if (!(sig >= 0 && sig < tau && tau <= 0.5))
        throw ParseError("dimension mismatch: smash needs 0 <= sigma < tau <= 1/2",
                         t.line, t.col);
      Node n;
      n.kind = Node::Kind::Smash;
      n.sigma = sig;
      n.tau = tau;
      n.args = {a};
      return make(std::move(n));
    }
    if (name == "compose") {
      lex.expect_punct("(");
      if (lex.cur.kind != Token::Kind::Name)
        throw ParseError("syntax error: compose needs a map name", lex.cur.line,
                         lex.cur.col);
      std::string target = lex.cur.text;
      int tl = lex.cur.line, tc = lex.cur.col;
      lex.advance();
      lex.expect_punct(";");
      std::vector<NodePtr> args;
      args.push_back(parse_expr());
      while (lex.is_punct(",")) {
        lex.advance();
        args.push_back(parse_expr());
      }
      lex.expect_punct(")");
      const Decl* d = prog->find(target);
      if (!d)
        throw ParseError("unknown identifier '" + target + "'", tl, tc);
      // Arity agreement, and scalar arguments only.
      int need = 0;
      {
        Program tmp = *prog;
        need = arity(tmp, target);
      }
      if (int(args.size()) != need)
        throw ParseError("dimension mismatch: '" + target + "' takes " +
                             std::to_string(need) + " arguments",
                         tl, tc);
      for (const auto& a : args)
        if (a->kind == Node::Kind::Tuple)
          throw ParseError("dimension mismatch: compose arguments must be scalar",
                           tl, tc);
      Node n;
      n.kind = Node::Kind::Compose;
      n.name = target;
      n.args = std::move(args);
      return make(std::move(n));
    }
    if (name == "tuple") {
      lex.expect_punct("(");
      std::vector<NodePtr> items;
      items.push_back(parse_expr());
      while (lex.is_punct(",")) {
        lex.advance();
        items.push_back(parse_expr());
      }
      lex.expect_punct(")");
      for (const auto& it : items)
        if (it->kind == Node::Kind::Tuple)
          throw ParseError("dimension mismatch: nested tuples are not allowed",
                           t.line, t.col);
      Node n;
      n.kind = Node::Kind::Tuple;
      n.args = std::move(items);
      return make(std::move(n));
    }
    // plain reference
    if (!prog->find(name))
      throw ParseError("unknown identifier '" + name + "'", t.line, t.col);
    Node n;
    n.kind = Node::Kind::Ref;
    n.name = name;
    return make(std::move(n));
  }
};

int expr_arity(const Program& p, const NodePtr& e) {
  switch (e->kind) {
    case Node::Kind::Num:
      return 0;
    case Node::Kind::Var:
      return e->var;
    case Node::Kind::Ref:
      return arity(p, e->name);
    case Node::Kind::Compose: {
      int m = 0;
      for (const auto& a : e->args) m = std::max(m, expr_arity(p, a));
      return m;
    }
    default: {
      int m = 0;
      for (const auto& a : e->args) m = std::max(m, expr_arity(p, a));
      return m;
    }
  }
}

int expr_width(const Program& p, const NodePtr& e) {
  if (e->kind == Node::Kind::Tuple) return int(e->args.size());
  if (e->kind == Node::Kind::Ref) return width(p, e->name);
  if (e->kind == Node::Kind::Compose) return width(p, e->name);
  return 1;
}

}  // namespace

Program parse(const std::string& text) {
  Program prog;
  Parser parser(text, &prog);
  while (parser.lex.cur.kind != Token::Kind::End) {
    if (parser.lex.cur.kind != Token::Kind::Name)
      throw ParseError("syntax error: expected declaration name",
                       parser.lex.cur.line, parser.lex.cur.col);
    std::string name = parser.lex.cur.text;
    if (prog.find(name))
      throw ParseError("duplicate declaration '" + name + "'", parser.lex.cur.line,
                       parser.lex.cur.col);
    parser.lex.advance();
    parser.lex.expect_punct("=");
    NodePtr body = parser.parse_expr();
    prog.decls.push_back({name, body});
  }
  if (prog.decls.empty())
    throw ParseError("syntax error: empty program", 1, 1);
  return prog;
}

namespace {

std::string fmt_number(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int precedence(Node::Kind k) {
  switch (k) {
    case Node::Kind::Add:
    case Node::Kind::Sub:
      return 1;
    case Node::Kind::Mul:
    case Node::Kind::Div:
      return 2;
    case Node::Kind::Neg:
      return 3;
    default:
      return 4;
  }
}

void print_node(std::ostringstream& os, const NodePtr& e, int parent_prec) {
  int prec = precedence(e->kind);
  bool paren = prec < parent_prec;
  if (paren) os << "(";
  switch (e->kind) {
    case Node::Kind::Num:
      os << fmt_number(e->num);
      break;
    case Node::Kind::Var:
      os << "t" << e->var;
      break;
    case Node::Kind::Add:
    case Node::Kind::Sub:
      print_node(os, e->args[0], prec);
      os << (e->kind == Node::Kind::Add ? " + " : " - ");
      print_node(os, e->args[1], prec + 1);
      break;
    case Node::Kind::Mul:
    case Node::Kind::Div:
      print_node(os, e->args[0], prec);
      os << (e->kind == Node::Kind::Mul ? " * " : " / ");
      print_node(os, e->args[1], prec + 1);
      break;
    case Node::Kind::Neg:
      os << "-";
      print_node(os, e->args[0], prec + 1);
      break;
    case Node::Kind::Sin:
    case Node::Kind::Cos:
    case Node::Kind::Exp:
      os << (e->kind == Node::Kind::Sin ? "sin"
                                        : e->kind == Node::Kind::Cos ? "cos" : "exp")
         << "(";
      print_node(os, e->args[0], 0);
      os << ")";
      break;
    case Node::Kind::Smash:
      os << "smash(" << fmt_number(e->sigma) << ", " << fmt_number(e->tau) << "; ";
      print_node(os, e->args[0], 0);
      os << ")";
      break;
    case Node::Kind::Ref:
      os << e->name;
      break;
    case Node::Kind::Compose:
      os << "compose(" << e->name << "; ";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        print_node(os, e->args[i], 0);
      }
      os << ")";
      break;
    case Node::Kind::Tuple:
      os << "tuple(";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        print_node(os, e->args[i], 0);
      }
      os << ")";
      break;
  }
  if (paren) os << ")";
}

bool node_equal(const NodePtr& a, const NodePtr& b) {
  if (a->kind != b->kind || a->num != b->num || a->var != b->var ||
      a->sigma != b->sigma || a->tau != b->tau || a->name != b->name ||
      a->args.size() != b->args.size())
    return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!node_equal(a->args[i], b->args[i])) return false;
  return true;
}

}  // namespace

std::string print_expr(const NodePtr& e) {
  std::ostringstream os;
  print_node(os, e, 0);
  return os.str();
}

std::string print(const Program& p) {
  std::ostringstream os;
  for (const auto& d : p.decls) os << d.name << " = " << print_expr(d.body) << "\n";
  return os.str();
}

bool equal(const Program& a, const Program& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); ++i) {
    if (a.decls[i].name != b.decls[i].name) return false;
    if (!node_equal(a.decls[i].body, b.decls[i].body)) return false;
  }
  return true;
}

int arity(const Program& p, const std::string& name) {
  const Decl* d = p.find(name);
  if (!d) fail("dsl: unbound name '" + name + "'");
  return expr_arity(p, d->body);
}

int width(const Program& p, const std::string& name) {
  const Decl* d = p.find(name);
  if (!d) fail("dsl: unbound name '" + name + "'");
  return expr_width(p, d->body);
}

namespace {

Vec eval_node(const Program& p, const NodePtr& e, const Vec& x);

double eval_scalar(const Program& p, const NodePtr& e, const Vec& x) {
  Vec v = eval_node(p, e, x);
  if (v.size() != 1) fail("dsl: expected scalar value");
  return v[0];
}

Vec eval_node(const Program& p, const NodePtr& e, const Vec& x) {
  switch (e->kind) {
    case Node::Kind::Num:
      return {e->num};
    case Node::Kind::Var:
      if (e->var > int(x.size())) fail("dsl: point has too few coordinates");
      return {x[size_t(e->var - 1)]};
    case Node::Kind::Add:
      return {eval_scalar(p, e->args[0], x) + eval_scalar(p, e->args[1], x)};
    case Node::Kind::Sub:
      return {eval_scalar(p, e->args[0], x) - eval_scalar(p, e->args[1], x)};
    case Node::Kind::Mul:
      return {eval_scalar(p, e->args[0], x) * eval_scalar(p, e->args[1], x)};
    case Node::Kind::Div: {
      double den = eval_scalar(p, e->args[1], x);
      if (den == 0) fail("dsl: division by zero");
      return {eval_scalar(p, e->args[0], x) / den};
    }
    case Node::Kind::Neg:
      return {-eval_scalar(p, e->args[0], x)};
    case Node::Kind::Sin:
      return {std::sin(eval_scalar(p, e->args[0], x))};
    case Node::Kind::Cos:
      return {std::cos(eval_scalar(p, e->args[0], x))};
    case Node::Kind::Exp:
      return {std::exp(eval_scalar(p, e->args[0], x))};
    case Node::Kind::Smash: {
      SmoothFn1D T = smash_1d(SmashParams(e->sigma, e->tau));
      return {T(eval_scalar(p, e->args[0], x))};
    }
    case Node::Kind::Ref: {
      const Decl* d = p.find(e->name);
      if (!d) fail("dsl: unbound name '" + e->name + "'");
      return eval_node(p, d->body, x);
    }
    case Node::Kind::Compose: {
      const Decl* d = p.find(e->name);
      if (!d) fail("dsl: unbound name '" + e->name + "'");
      Vec inner(e->args.size());
      for (size_t i = 0; i < e->args.size(); ++i)
        inner[i] = eval_scalar(p, e->args[i], x);
      return eval_node(p, d->body, inner);
    }
    case Node::Kind::Tuple: {
      Vec out;
      for (const auto& a : e->args) out.push_back(eval_scalar(p, a, x));
      return out;
    }
  }
  fail("dsl: bad node");
}

// Lowers to the library Expr with variables substituted; used by to_cube_map.
Expr lower(const Program& p, const NodePtr& e, const std::vector<Expr>& vars) {
  switch (e->kind) {
    case Node::Kind::Num:
      return Expr::constant(e->num);
    case Node::Kind::Var: {
      if (e->var > int(vars.size())) fail("dsl: variable out of range");
      return vars[size_t(e->var - 1)];
    }
    case Node::Kind::Add:
      return lower(p, e->args[0], vars) + lower(p, e->args[1], vars);
    case Node::Kind::Sub:
      return lower(p, e->args[0], vars) - lower(p, e->args[1], vars);
    case Node::Kind::Mul:
      return lower(p, e->args[0], vars) * lower(p, e->args[1], vars);
    case Node::Kind::Div:
      return lower(p, e->args[0], vars) / lower(p, e->args[1], vars);
    case Node::Kind::Neg:
      return -lower(p, e->args[0], vars);
    case Node::Kind::Sin:
      return sin(lower(p, e->args[0], vars));
    case Node::Kind::Cos:
      return cos(lower(p, e->args[0], vars));
    case Node::Kind::Exp:
      return exp(lower(p, e->args[0], vars));
    case Node::Kind::Smash:
      return Expr::fn1d(smash_1d(SmashParams(e->sigma, e->tau)),
                        lower(p, e->args[0], vars));
    case Node::Kind::Ref: {
      const Decl* d = p.find(e->name);
      if (!d) fail("dsl: unbound name '" + e->name + "'");
      if (d->body->kind == Node::Kind::Tuple) fail("dsl: tuple reference in scalar context");
      return lower(p, d->body, vars);
    }
    case Node::Kind::Compose: {
      const Decl* d = p.find(e->name);
      if (!d) fail("dsl: unbound name '" + e->name + "'");
      std::vector<Expr> inner;
      for (const auto& a : e->args) inner.push_back(lower(p, a, vars));
      if (d->body->kind == Node::Kind::Tuple) fail("dsl: tuple compose in scalar context");
      return lower(p, d->body, inner);
    }
    case Node::Kind::Tuple:
      fail("dsl: tuple in scalar context");
  }
  fail("dsl: bad node");
}

}  // namespace

Vec evaluate(const Program& p, const std::string& name, const Vec& point) {
  const Decl* d = p.find(name);
  if (!d) fail("dsl: unbound name '" + name + "'");
  return eval_node(p, d->body, point);
}

CubeMap to_cube_map(const Program& p, const std::string& name) {
  const Decl* d = p.find(name);
  if (!d) fail("dsl: unbound name '" + name + "'");
  int n = arity(p, name);
  std::vector<Expr> vars;
  for (int i = 0; i < n; ++i) vars.push_back(Expr::var(i));
  std::vector<Expr> comps;
  NodePtr body = d->body;
  // compose(f; ...) where f is a tuple lowers componentwise
  if (body->kind == Node::Kind::Compose) {
    const Decl* f = p.find(body->name);
    if (f && f->body->kind == Node::Kind::Tuple) {
      std::vector<Expr> inner;
      for (const auto& a : body->args) inner.push_back(lower(p, a, vars));
      for (const auto& comp : f->body->args) comps.push_back(lower(p, comp, inner));
    }
  }
  if (comps.empty()) {
    if (body->kind == Node::Kind::Tuple) {
      for (const auto& comp : body->args) comps.push_back(lower(p, comp, vars));
    } else {
      comps.push_back(lower(p, body, vars));
    }
  }
  return CubeMap::from_components(CubeDomain::full_cube(n), std::move(comps),
                                  Codomain::euclidean(int(comps.size())));
}

}  // namespace dsl
}  // namespace tamecell
