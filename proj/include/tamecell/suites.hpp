#pragma once

#include "tamecell/cellwise.hpp"
#include "tamecell/dsl.hpp"
#include "tamecell/engine.hpp"

namespace tamecell {

/// Registers every verification suite (smash, retraction, j_extension, l_extension,
/// hep, collar, help, cellular, structure, dsl). Idempotent.
void register_all_suites();

// Fixture helpers shared between suites, the CLI and the acceptance tests.
namespace fixtures {

/// Deterministic LCG in [0,1).
struct Rng {
  unsigned state;
  explicit Rng(unsigned seed) : state(seed ? seed : 1u) {}
  double next() {
    state = state * 1664525u + 1013904223u;
    return double(state >> 8) / double(1u << 24);
  }
};

/// Random eps-tame trig-polynomial on J^{n-1} -> R^2 (components built on
/// smash-tamified coordinates), with a by-construction certificate.
CubeMap tame_trig_on_horn(int n, double eps, Rng& rng);

/// interval with its endpoints as base.
ComplexPtr interval_pair();
/// gathered square with its boundary as base.
ComplexPtr square_pair();
/// circle with its vertex as base.
ComplexPtr circle_pair();

/// f : X -> R^2 evaluating characteristic coordinates (smooth per cell).
CellwiseMap plane_map(const ComplexPtr& X, double scale = 1.0);

/// Tame homotopy on the base cells of X wiggling plane_map values.
CellwiseHomotopy base_wiggle(const ComplexPtr& X, const CellwiseMap& f);

/// The circle -> torus fixture of the cellular approximation criterion:
/// vertex and edge land inside the 2-cell interior.
CellwiseMap circle_into_torus_top(const ComplexPtr& circle, const ComplexPtr& torus);

/// 50-program golden DSL corpus.
std::vector<std::string> dsl_corpus();

}  // namespace fixtures
}  // namespace tamecell
