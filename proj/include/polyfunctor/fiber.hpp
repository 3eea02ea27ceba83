#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "polyfunctor/errors.hpp"
#include "polyfunctor/homtensor.hpp"
#include "polyfunctor/measure.hpp"
#include "polyfunctor/parallel.hpp"
#include "polyfunctor/polyops.hpp"
#include "polyfunctor/polytope.hpp"

namespace polyfunctor {

/// A subdivision of f(X) into cells over which the fiber varies affinely.
struct ChamberComplex {
  Polytope base;
  std::vector<Polytope> cells;
  std::vector<Vec> centroids;
  std::vector<Scalar> weights;  // vol(cell) / vol(base)
};

/// Which faces of X contribute walls. `Edges` uses only faces whose images
/// have codimension one in f(X) (vertex images on a line, edge images in the
/// plane); `AllFaces` uses the boundary of every face image.
enum class WallSet { Edges, AllFaces };

namespace detail {

/// Hyperplane a·y = b scaled to a primitive vector with positive leading entry.
inline Halfspace canonical_wall(const Vec& normal, const Scalar& offset) {
  Halfspace h = primitive_halfspace(normal, offset);
  for (const auto& c : h.normal)
    if (sgn(c) != 0) {
      if (sgn(c) < 0) {
        h.normal = Scalar(-1) * h.normal;
        h.offset = -h.offset;
      }
      break;
    }
  return h;
}

/// Cuts a polytope by a hyperplane. Returns the two closed sides when the
/// hyperplane meets the relative interior, nothing otherwise.
inline std::optional<std::pair<Polytope, Polytope>> split(const Polytope& c, const Halfspace& h) {
  const auto& vs = c.vertices();
  std::vector<int> s(vs.size());
  bool neg = false, pos = false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    s[i] = sgn(dot(h.normal, vs[i]) - h.offset);
    neg |= s[i] < 0;
    pos |= s[i] > 0;
  }
  if (!neg || !pos) return std::nullopt;
  std::vector<Vec> lo, hi;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (s[i] <= 0) lo.push_back(vs[i]);
    if (s[i] >= 0) hi.push_back(vs[i]);
  }
  for (auto [a, b] : edges(c)) {
    if (s[a] * s[b] >= 0) continue;
    const Vec& u = vs[a];
    Vec d = vs[b] - u;
    Scalar t = (h.offset - dot(h.normal, u)) / dot(h.normal, d);
    Vec x = u + t * d;
    lo.push_back(x);
    hi.push_back(x);
  }
  return std::make_pair(Polytope::from_vertices(c.ambient_dim(), std::move(lo)),
                        Polytope::from_vertices(c.ambient_dim(), std::move(hi)));
}

inline std::vector<Polytope> cut_all(std::vector<Polytope> cells, const std::vector<Halfspace>& walls) {
  for (const auto& w : walls) {
    std::vector<Polytope> next;
    next.reserve(cells.size());
    for (auto& c : cells) {
      if (auto parts = split(c, w)) {
        next.push_back(std::move(parts->first));
        next.push_back(std::move(parts->second));
      } else {
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  std::sort(cells.begin(), cells.end(), [](const Polytope& a, const Polytope& b) { return a.vertices() < b.vertices(); });
  return cells;
}

inline ChamberComplex assemble(Polytope base, std::vector<Polytope> cells) {
  ChamberComplex cc;
  Scalar total = volume(base);
  for (auto& c : cells) {
    cc.centroids.push_back(centroid(c));
    cc.weights.push_back(volume(c) / total);
    cc.cells.push_back(std::move(c));
  }
  cc.base = std::move(base);
  return cc;
}

/// Walls in the chart coordinates of f(X).
inline std::vector<Halfspace> chamber_walls(const AffineMap& g, const Polytope& x, std::size_t k, WallSet walls) {
  std::set<Halfspace> out;
  std::vector<Vec> img;
  for (const auto& v : x.vertices()) img.push_back(g(v));
  if (walls == WallSet::Edges) {
    if (k == 1) {
      for (const auto& u : img) out.insert(canonical_wall(make_vec({1}), u[0]));
    } else {
      for (auto [a, b] : edges(x)) {
        Vec d = img[b] - img[a];
        if (is_zero(d)) continue;
        Vec n{-d[1], d[0]};
        out.insert(canonical_wall(n, dot(n, img[a])));
      }
    }
  } else {
    for (const auto& face : x.face_lattice().faces) {
      if (face.dim < 0) continue;
      std::vector<Vec> pts;
      for (auto i : face.vertices.indices()) pts.push_back(img[i]);
      Polytope im = Polytope::from_vertices(k, std::move(pts));
      if (im.dim() == k) {
        for (const auto& f : im.facets()) out.insert(canonical_wall(f.normal, f.offset));
      } else if (im.dim() + 1 == k) {
        for (const auto& e : im.equations()) out.insert(canonical_wall(e.normal, e.offset));
      }
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace detail

/// Subdivision of f(X) by the hyperplanes spanned by face images.
inline ChamberComplex chamber_complex(const AffineMap& f, const Polytope& x, WallSet walls = WallSet::Edges) {
  Polytope base = image(x, f);
  const std::size_t k = base.dim();
  if (k > 2) throw ImageDimTooHigh(k);
  if (k == 0) return detail::assemble(base, {base});
  const AffineChart& chart = base.chart();
  AffineMap g = chart.projection_map().after(f);
  std::vector<Polytope> cells =
      detail::cut_all({base.in_chart_coordinates()}, detail::chamber_walls(g, x, k, walls));
  std::vector<Polytope> lifted;
  for (const auto& c : cells) {
    std::vector<Vec> pts;
    for (const auto& u : c.vertices()) pts.push_back(chart.lift(u));
    lifted.push_back(Polytope::from_vertices(base.ambient_dim(), std::move(pts)));
  }
  std::sort(lifted.begin(), lifted.end(), [](const Polytope& a, const Polytope& b) { return a.vertices() < b.vertices(); });
  return detail::assemble(std::move(base), std::move(lifted));
}

/// Further subdivision by extra hyperplanes given in the ambient coordinates of the base.
inline ChamberComplex refine(const ChamberComplex& cc, const std::vector<Halfspace>& cuts) {
  return detail::assemble(cc.base, detail::cut_all(cc.cells, cuts));
}

/// Σ weight_i · f⁻¹(centroid_i) over the cells of a refining subdivision.
inline Polytope fiber_polytope_from_complex(const AffineMap& f, const Polytope& x, const ChamberComplex& cc) {
  auto fibers = parallel_map(cc.cells.size(), [&](std::size_t i) { return preimage_fiber(f, x, cc.centroids[i]); });
  std::vector<std::pair<Scalar, Polytope>> terms;
  for (std::size_t i = 0; i < fibers.size(); ++i) terms.emplace_back(cc.weights[i], std::move(fibers[i]));
  return minkowski_sum(terms);
}

inline Polytope fiber_polytope(const AffineMap& f, const Polytope& x, WallSet walls = WallSet::Edges) {
  return fiber_polytope_from_complex(f, x, chamber_complex(f, x, walls));
}

/// The map from the standard simplex conv(e_1..e_n) onto conv(points).
inline std::pair<Polytope, AffineMap> simplex_projection(const std::vector<Vec>& points) {
  const std::size_t n = points.size();
  std::vector<Vec> units;
  for (std::size_t i = 0; i < n; ++i) units.push_back(unit_vector(n, i));
  const std::size_t d = points.empty() ? 0 : points.front().size();
  Matrix m(d, zeros(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < d; ++r) m[r][i] = points[i][r];
  return {Polytope::from_vertices(n, std::move(units)), AffineMap::linear(std::move(m), n)};
}

/// Fiber polytope of the simplex projection onto a planar convex configuration.
inline Polytope secondary_polytope(const std::vector<Vec>& points) {
  if (points.size() < 3) throw InvalidArgument("secondary_polytope: need at least 3 points");
  for (const auto& p : points)
    if (p.size() != 2) throw DimensionMismatch("secondary_polytope: points must be planar");
  Polytope hull = Polytope::from_vertices(2, points);
  if (hull.dim() != 2 || hull.num_vertices() != points.size()) throw NotConvexPosition();
  auto [simplex, f] = simplex_projection(points);
  return fiber_polytope(f, simplex);
}

/// Points (i, i²), i = 0..n-1: a rational convex n-gon.
inline std::vector<Vec> parabola_ngon(std::size_t n) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) {
    long t = static_cast<long>(i);
    out.push_back({Scalar(t), Scalar(t * t)});
  }
  return out;
}

/// Vertices of a polygon in counterclockwise order, starting at the
/// lexicographically largest vertex.
inline std::vector<Vec> counterclockwise(const Polytope& q) {
  if (q.ambient_dim() != 2 || q.dim() != 2) throw InvalidArgument("counterclockwise: need a 2-polytope in the plane");
  Vec c = zeros(2);
  for (const auto& v : q.vertices()) c = c + v;
  c = make_scalar(1, static_cast<long>(q.num_vertices())) * c;
  auto upper = [&](const Vec& v) { return sgn(v[1] - c[1]) > 0 || (sgn(v[1] - c[1]) == 0 && sgn(v[0] - c[0]) > 0); };
  std::vector<Vec> out = q.vertices();
  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    if (upper(a) != upper(b)) return upper(a);
    return sgn((a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0])) > 0;
  });
  std::rotate(out.begin(), std::find(out.begin(), out.end(), q.vertices().back()), out.end());
  return out;
}

/// Truncated right prism conv{(v_i, 0), (v_i, h_i)} over a centrally symmetric
/// 2n-gon, with the orthogonal projection back to the base.
/// `heights` follow counterclockwise(Q).
struct TruncatedPrism {
  Polytope prism;
  AffineMap projection;
};

inline TruncatedPrism truncated_prism(std::size_t n, const Polytope& q, const std::vector<Scalar>& heights,
                                      const Scalar& eps) {
  if (q.ambient_dim() != 2 || q.dim() != 2 || q.num_vertices() != 2 * n)
    throw InvalidArgument("truncated_prism: base must be a 2n-gon in the plane");
  if (heights.size() != 2 * n) throw InvalidArgument("truncated_prism: need one height per base vertex");
  if (sgn(eps) <= 0) throw DegenerateHeights("truncated_prism: epsilon must be positive");
  for (const auto& h : heights)
    if (h < eps) throw DegenerateHeights("truncated_prism: a height is below epsilon");
  if (std::all_of(heights.begin(), heights.end(), [&](const Scalar& h) { return h == heights.front(); }))
    throw DegenerateHeights("truncated_prism: top facet is parallel to the base");
  auto ccw = counterclockwise(q);
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    pts.push_back({ccw[i][0], ccw[i][1], Scalar(0)});
    pts.push_back({ccw[i][0], ccw[i][1], heights[i]});
  }
  Polytope p = Polytope::from_vertices(3, pts);
  if (p.num_vertices() != 4 * n || p.num_facets() != 2 * n + 2)
    throw DegenerateHeights("truncated_prism: heights do not give a prism");
  auto es = edges(p);
  std::set<std::pair<Vec, Vec>> have;
  for (auto [a, b] : es) have.emplace(p.vertices()[a], p.vertices()[b]);
  for (std::size_t i = 0; i < pts.size(); i += 2)
    if (!have.count({pts[i], pts[i + 1]})) throw DegenerateHeights("truncated_prism: missing vertical edge");
  return {std::move(p), AffineMap::coordinate_projection(3, {0, 1})};
}

/// {g ∈ Hom(Q, P) : f∘g = α}, in the coordinates of
/// HomPolytope(Q, P, {DomainCoords::Chart, TargetCoords::Ambient}).
inline Polytope hom_fiber(const AffineMap& alpha, const Polytope& q, const Polytope& p, const AffineMap& f) {
  if (alpha.domain_dim() != q.ambient_dim() || f.domain_dim() != p.ambient_dim() ||
      alpha.codomain_dim() != f.codomain_dim())
    throw DimensionMismatch("hom_fiber: incompatible maps");
  HomPolytope hp(q, p, {DomainCoords::Chart, TargetCoords::Ambient});
  HRep h = hp.system().h;
  const std::size_t m = p.ambient_dim();
  auto basis = hp.basis_chart();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Vec a = alpha(basis[j]);
    for (std::size_t r = 0; r < f.codomain_dim(); ++r) {
      Vec row = zeros(hp.coord_dim());
      for (std::size_t i = 0; i < m; ++i) row[j * m + i] = f.matrix()[r][i];
      h.equations.push_back({std::move(row), a[r] - f.translation()[r]});
    }
  }
  try {
    return Polytope::from_inequalities(h);
  } catch (const EmptyInput&) {
    throw EmptyFiber();
  }
}

/// Centrally symmetric 2n-gons used for the prism family: square, hexagon, octagon.
inline Polytope symmetric_polygon(std::size_t n) {
  auto pts = [&]() -> std::vector<Vec> {
    switch (n) {
      case 2: return {make_vec({1, 1}), make_vec({-1, 1}), make_vec({-1, -1}), make_vec({1, -1})};
      case 3: return {make_vec({2, 0}), make_vec({1, 2}), make_vec({-1, 2}), make_vec({-2, 0}), make_vec({-1, -2}), make_vec({1, -2})};
      case 4: return {make_vec({2, 1}), make_vec({1, 2}), make_vec({-1, 2}), make_vec({-2, 1}), make_vec({-2, -1}), make_vec({-1, -2}), make_vec({1, -2}), make_vec({2, -1})};
      default: throw InvalidArgument("symmetric_polygon: n must be 2, 3 or 4");
    }
  }();
  return Polytope::from_vertices(2, std::move(pts));
}

/// One row of the prism counterexample table.
struct CounterexampleReport {
  std::size_t n = 0;
  std::size_t hom_sigma_vertices = 0;           // #vert Hom(Q, Σf)
  std::vector<Scalar> contractions;             // t of each sampled α
  std::vector<std::size_t> hom_fiber_vertices;  // #vert f_*⁻¹(α)
  std::size_t min_hom_fiber_vertices() const {
    return *std::min_element(hom_fiber_vertices.begin(), hom_fiber_vertices.end());
  }
};

/// The slant-truncated prism over the symmetric 2n-gon, top plane z = 3 + x/3 + y/5.
inline TruncatedPrism prism_instance(std::size_t n) {
  Polytope q = symmetric_polygon(n);
  std::vector<Scalar> heights;
  for (const auto& v : counterclockwise(q)) heights.push_back(3 + v[0] / 3 + v[1] / 5);
  return truncated_prism(n, q, heights, 1);
}

/// Contractions α(x) = (1-t)x + t·c, c = (1/5, 1/7).
inline AffineMap contraction(const Scalar& t) {
  Scalar s = 1 - t;
  return AffineMap({{s, 0}, {0, s}}, {t / 5, t / 7}, 2);
}

inline CounterexampleReport prism_counterexample(std::size_t n) {
  TruncatedPrism tp = prism_instance(n);
  Polytope q = symmetric_polygon(n);
  CounterexampleReport rep;
  rep.n = n;
  Polytope sigma = fiber_polytope(tp.projection, tp.prism);
  rep.hom_sigma_vertices = hom_polytope(q, sigma).underlying().num_vertices();
  rep.contractions = {make_scalar(1, 7), make_scalar(1, 11), make_scalar(1, 13), make_scalar(1, 17),
                      make_scalar(1, 19)};
  rep.hom_fiber_vertices = parallel_map(rep.contractions.size(), [&](std::size_t i) {
    return hom_fiber(contraction(rep.contractions[i]), q, tp.prism, tp.projection).num_vertices();
  });
  return rep;
}

}  // namespace polyfunctor
