#pragma once

#include <vector>

#include "tmc/immersion.hpp"
#include "tmc/quadrature.hpp"

namespace tmc::testing {

inline QuadratureGrid grid_of(const Immersion& imm, int nu, int nv) {
  const std::vector<int> res{nu, nv};
  return build_grid(imm.domain(), res);
}

inline QuadratureGrid default_grid(const Immersion& imm) {
  return build_grid(imm.domain(), imm.info().default_resolution);
}

/// Coarse grids that still resolve every catalog surface to near machine precision.
/// Coarsest grids on which the integral identities reach roundoff; the
/// Veronese integrands have higher degree and need twice the resolution.
inline QuadratureGrid coarse_grid(const Immersion& imm) {
  if (imm.domain().axis(0).periodic && imm.domain().axis(1).periodic) return grid_of(imm, 32, 32);
  return imm.info().name == "veronese" ? grid_of(imm, 48, 96) : grid_of(imm, 24, 48);
}

inline const std::vector<const char*>& compact_surfaces() {
  static const std::vector<const char*> names{"slice_sphere", "clifford_torus", "veronese", "small_sphere",
                                              "graph_torus"};
  return names;
}

}  // namespace tmc::testing
