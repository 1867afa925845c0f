#include "tamecell/cube_map.hpp"

#include <sstream>

namespace tamecell {
namespace mapdet {

struct Body {
  enum class Kind { Components, Callable, Chain, Piecewise };
  Kind kind;
  std::vector<Expr> comps;
  std::function<Value(const Vec&)> fn;
  std::string description;
  std::vector<CubeMap> chain;  // applied front to back
  std::vector<std::pair<CubeDomain, CubeMap>> pieces;

  Value eval(const Vec& x) const {
    switch (kind) {
      case Kind::Components: {
        Vec out(comps.size());
        for (size_t i = 0; i < comps.size(); ++i) out[i] = comps[i].eval(x);
        return out;
      }
      case Kind::Callable:
        return fn(x);
      case Kind::Chain: {
        Vec v = x;
        for (size_t i = 0; i + 1 < chain.size(); ++i) v = chain[i].eval_vec(v);
        return chain.back().eval(v);
      }
      case Kind::Piecewise: {
        for (const auto& [dom, map] : pieces)
          if (dom.contains(x, 1e-9)) return map.eval(x);
        fail("piecewise map: point not covered by any piece");
      }
    }
    fail("CubeMap: bad body");
  }
};

}  // namespace mapdet

using mapdet::Body;

Value CubeMap::eval(const Vec& x) const {
  if (!body_) fail("CubeMap: empty");
  return body_->eval(x);
}

Vec CubeMap::eval_vec(const Vec& x) const { return as_vec(eval(x)); }

CubeMap CubeMap::with_certificate(TamenessCertificate c) const {
  CubeMap m = *this;
  m.tameness_ = c;
  return m;
}

CubeMap CubeMap::with_seams(std::vector<Seam> s) const {
  CubeMap m = *this;
  m.seams_ = std::move(s);
  return m;
}

CubeMap CubeMap::from_components(CubeDomain dom, std::vector<Expr> comps,
                                 Codomain cod) {
  auto b = std::make_shared<Body>();
  b->kind = Body::Kind::Components;
  b->comps = std::move(comps);
  CubeMap m;
  m.domain_ = std::move(dom);
  m.codomain_ = std::move(cod);
  m.body_ = b;
  return m;
}

CubeMap CubeMap::from_callable(CubeDomain dom, Codomain cod,
                               std::function<Value(const Vec&)> f,
                               std::string description) {
  auto b = std::make_shared<Body>();
  b->kind = Body::Kind::Callable;
  b->fn = std::move(f);
  b->description = std::move(description);
  CubeMap m;
  m.domain_ = std::move(dom);
  m.codomain_ = std::move(cod);
  m.body_ = b;
  return m;
}

CubeMap CubeMap::chain(CubeMap inner, CubeMap outer) {
  auto b = std::make_shared<Body>();
  b->kind = Body::Kind::Chain;
  CubeDomain dom = inner.domain();
  Codomain cod = outer.codomain();
  // Flatten nested chains.
  auto push = [&b](const CubeMap& m) {
    if (m.body_ && m.body_->kind == Body::Kind::Chain)
      for (const auto& c : m.body_->chain) b->chain.push_back(c);
    else
      b->chain.push_back(m);
  };
  push(inner);
  push(outer);
  CubeMap m;
  m.domain_ = std::move(dom);
  m.codomain_ = std::move(cod);
  m.body_ = b;
  return m;
}

CubeMap glue_pieces_internal(CubeDomain whole,
                             std::vector<std::pair<CubeDomain, CubeMap>> pieces,
                             std::vector<Seam> seams) {
  auto b = std::make_shared<Body>();
  b->kind = Body::Kind::Piecewise;
  Codomain cod = pieces.front().second.codomain();
  b->pieces = std::move(pieces);
  CubeMap m;
  m.domain_ = std::move(whole);
  m.codomain_ = cod;
  m.body_ = b;
  m.seams_ = std::move(seams);
  return m;
}

std::string CubeMap::describe() const {
  if (!body_) return "<empty>";
  std::ostringstream os;
  switch (body_->kind) {
    case Body::Kind::Components: os << "expr[" << body_->comps.size() << "]"; break;
    case Body::Kind::Callable:
      os << (body_->description.empty() ? "callable" : body_->description);
      break;
    case Body::Kind::Chain: os << "chain[" << body_->chain.size() << "]"; break;
    case Body::Kind::Piecewise: os << "piecewise[" << body_->pieces.size() << "]"; break;
  }
  os << " : " << domain_.describe();
  return os.str();
}

}  // namespace tamecell
