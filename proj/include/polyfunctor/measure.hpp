#pragma once

#include <map>
#include <vector>

#include "polyfunctor/linalg.hpp"
#include "polyfunctor/polytope.hpp"
#include "polyfunctor/scalar.hpp"

namespace polyfunctor {

/// Pulling triangulation: each face is coned from its lexicographically
/// smallest vertex over the triangulations of its facets avoiding it.
/// Simplices are lists of vertex indices of P.
inline std::vector<std::vector<std::size_t>> triangulation(const Polytope& p) {
  const FaceLattice& lat = p.face_lattice();
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> memo;
  auto rec = [&](auto&& self, std::size_t fi) -> const std::vector<std::vector<std::size_t>>& {
    if (auto it = memo.find(fi); it != memo.end()) return it->second;
    std::vector<std::vector<std::size_t>> out;
    const auto& face = lat.faces[fi];
    auto verts = face.vertices.indices();
    if (face.dim == 0) {
      out.push_back({verts.front()});
    } else {
      std::size_t apex = verts.front();
      for (auto g : lat.subfaces(fi)) {
        if (lat.faces[g].vertices.test(apex)) continue;
        for (const auto& s : self(self, g)) {
          std::vector<std::size_t> t{apex};
          t.insert(t.end(), s.begin(), s.end());
          out.push_back(std::move(t));
        }
      }
    }
    return memo.emplace(fi, std::move(out)).first->second;
  };
  return rec(rec, lat.faces.size() - 1);
}

/// k-volume of a k-simplex in the chart of P.
inline Scalar simplex_volume(const AffineChart& chart, const std::vector<Vec>& pts) {
  const std::size_t k = chart.dim();
  if (k == 0) return 1;
  Vec base = chart.project(pts[0]);
  Matrix m;
  for (std::size_t i = 1; i < pts.size(); ++i) m.push_back(chart.project(pts[i]) - base);
  Scalar d = determinant(std::move(m));
  if (sgn(d) < 0) d = -d;
  Integer fact = 1;
  for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<unsigned long>(i);
  return d / Scalar(fact);
}

/// Relative volume in Aff(P), measured in the lexicographic coordinate chart.
inline Scalar volume(const Polytope& p) {
  if (p.dim() == 0) return 1;
  Scalar total = 0;
  for (const auto& s : triangulation(p)) {
    std::vector<Vec> pts;
    for (auto i : s) pts.push_back(p.vertices()[i]);
    total += simplex_volume(p.chart(), pts);
  }
  return total;
}

/// Mass centroid.
inline Vec centroid(const Polytope& p) {
  if (p.dim() == 0) return p.vertices().front();
  Vec acc = zeros(p.ambient_dim());
  Scalar total = 0;
  for (const auto& s : triangulation(p)) {
    std::vector<Vec> pts;
    for (auto i : s) pts.push_back(p.vertices()[i]);
    Scalar vol = simplex_volume(p.chart(), pts);
    Vec sum = zeros(p.ambient_dim());
    for (const auto& x : pts) sum = sum + x;
    acc = acc + (vol / Scalar(static_cast<long>(pts.size()))) * sum;
    total += vol;
  }
  return (1 / total) * acc;
}

}  // namespace polyfunctor
