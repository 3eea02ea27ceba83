#pragma once

// Named instances shared by the CLI, the tests and the acceptance run.

#include <string>
#include <utility>
#include <vector>

#include "polyfunctor/fiber.hpp"
#include "polyfunctor/polytope.hpp"

namespace polyfunctor {

/// A map f: X → R^m together with its source polytope.
struct MapInstance {
  std::string name;
  AffineMap f;
  Polytope x;
};

namespace detail {

inline Polytope hull_of(std::size_t d, std::vector<std::vector<long>> pts) {
  std::vector<Vec> vs;
  for (const auto& p : pts) {
    Vec v;
    for (long x : p) v.emplace_back(x);
    vs.push_back(std::move(v));
  }
  return Polytope::from_vertices(d, std::move(vs));
}

}  // namespace detail

inline Polytope integer_pentagon() {
  return detail::hull_of(2, {{0, 100}, {95, 31}, {59, -81}, {-59, -81}, {-95, 31}});
}

/// Pyritohedral icosahedron: cyclic permutations of (0, ±1, ±8/5).
inline Polytope rational_icosahedron() {
  std::vector<Vec> pts;
  for (long a : {-1, 1})
    for (long b : {-8, 8}) {
      Vec v{Scalar(0), Scalar(a), make_scalar(b, 5)};
      for (int r = 0; r < 3; ++r) {
        pts.push_back(v);
        v = {v[2], v[0], v[1]};
      }
    }
  return Polytope::from_vertices(3, std::move(pts));
}

/// Maps with images of dimension at most 2, each paired with a Z.
inline std::vector<std::pair<MapInstance, Polytope>> theorem62_cases() {
  Polytope pt = Polytope::point(make_vec({0}));
  Polytope seg = detail::hull_of(1, {{0}, {1}});
  Polytope tri = detail::hull_of(2, {{0, 0}, {1, 0}, {0, 1}});
  Polytope tet = detail::hull_of(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  Polytope sq = detail::hull_of(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  Polytope cube = detail::hull_of(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  Polytope prism = detail::hull_of(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}});
  Polytope pyramid = detail::hull_of(3, {{1, 1, 0}, {1, -1, 0}, {-1, 1, 0}, {-1, -1, 0}, {0, 0, 1}});
  Polytope pent = integer_pentagon();
  auto [s4, f4] = simplex_projection(pent.vertices());
  TruncatedPrism tp = prism_instance(2);
  return {
      {{"square onto an edge", AffineMap::coordinate_projection(2, {0}), sq}, pt},
      {{"cube onto a square", AffineMap::coordinate_projection(3, {0, 1}), cube}, seg},
      {{"triangular prism onto its height", AffineMap::coordinate_projection(3, {2}), prism}, tri},
      {{"slant prism onto its base", tp.projection, tp.prism}, seg},
      {{"tetrahedron by coordinate sum", AffineMap({make_vec({1, 1, 1})}, make_vec({0}), 3), tet}, seg},
      {{"square pyramid onto its height", AffineMap::coordinate_projection(3, {2}), pyramid}, tri},
      {{"4-simplex onto a pentagon", f4, s4}, pt},
      {{"tetrahedron onto a triangle", AffineMap::coordinate_projection(3, {0, 1}), tet}, seg},
  };
}

}  // namespace polyfunctor
