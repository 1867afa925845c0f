#pragma once

#include <map>
#include <memory>

#include "tamecell/cube_map.hpp"

namespace tamecell {
namespace dsl {

/// Expression AST of the map DSL. Programs are lists of declarations
/// `name = expr` over variables t1..tn, constants, + - * /, sin, cos, exp,
/// smash(sigma,tau; e), compose(f; e1..em), tuple(e1..em) and references.
struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp, Smash, Ref, Compose, Tuple };
  Kind kind;
  double num = 0;
  int var = 0;                 // 1-based index of t<k>
  double sigma = 0, tau = 0;   // Smash
  std::string name;            // Ref / Compose target
  std::vector<NodePtr> args;
};

struct Decl {
  std::string name;
  NodePtr body;
};

struct Program {
  std::vector<Decl> decls;
  const Decl* find(const std::string& name) const;
};

struct ParseError : error {
  int line;
  int column;
  ParseError(const std::string& msg, int l, int c)
      : error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
        line(l),
        column(c) {}
};

/// Parses a program; throws ParseError with position on syntax errors,
/// unknown identifiers and dimension mismatches (distinct messages).
Program parse(const std::string& text);

/// Canonical text form; parse(print(p)) reproduces the AST exactly.
std::string print(const Program& p);
std::string print_expr(const NodePtr& e);

bool equal(const Program& a, const Program& b);

/// Number of input variables a declaration consumes (max t-index).
int arity(const Program& p, const std::string& name);
/// Output width (tuple size; 1 for scalars).
int width(const Program& p, const std::string& name);

/// Evaluates a declared map at a point.
Vec evaluate(const Program& p, const std::string& name, const Vec& point);

/// Lowers a declaration to a smooth-by-construction CubeMap on I^arity.
CubeMap to_cube_map(const Program& p, const std::string& name);

}  // namespace dsl
}  // namespace tamecell
