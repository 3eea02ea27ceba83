#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "polyfunctor/bitset.hpp"
#include "polyfunctor/dd.hpp"
#include "polyfunctor/errors.hpp"
#include "polyfunctor/face_lattice.hpp"
#include "polyfunctor/linalg.hpp"
#include "polyfunctor/scalar.hpp"

namespace polyfunctor {

/// normal·x <= offset (or = offset when used as an equation).
struct Halfspace {
  Vec normal;
  Scalar offset;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend bool operator<(const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

/// Inequalities plus optional equations, in a fixed ambient dimension.
struct HRep {
  std::size_t ambient_dim = 0;
  std::vector<Halfspace> inequalities;
  std::vector<Halfspace> equations;
};

/// x ↦ matrix·x + translation.
class AffineMap {
 public:
  AffineMap() = default;
  AffineMap(Matrix matrix, Vec translation, std::size_t domain_dim)
      : matrix_(std::move(matrix)), translation_(std::move(translation)), domain_dim_(domain_dim) {
    if (matrix_.size() != translation_.size()) throw DimensionMismatch("affine map: matrix rows != translation size");
    for (const auto& row : matrix_)
      if (row.size() != domain_dim_) throw DimensionMismatch("affine map: ragged matrix");
  }

  static AffineMap identity(std::size_t n) { return {identity_matrix(n), zeros(n), n}; }
  static AffineMap constant(std::size_t domain_dim, Vec value) {
    Matrix m(value.size(), zeros(domain_dim));
    return {std::move(m), std::move(value), domain_dim};
  }
  static AffineMap linear(Matrix m, std::size_t domain_dim) {
    Vec t = zeros(m.size());
    return {std::move(m), std::move(t), domain_dim};
  }
  /// Coordinate projection x ↦ (x[c] for c in coords).
  static AffineMap coordinate_projection(std::size_t domain_dim, const std::vector<std::size_t>& coords) {
    Matrix m(coords.size(), zeros(domain_dim));
    for (std::size_t i = 0; i < coords.size(); ++i) m[i][coords[i]] = 1;
    return linear(std::move(m), domain_dim);
  }

  std::size_t domain_dim() const { return domain_dim_; }
  std::size_t codomain_dim() const { return translation_.size(); }
  const Matrix& matrix() const { return matrix_; }
  const Vec& translation() const { return translation_; }

  Vec operator()(const Vec& x) const {
    if (x.size() != domain_dim_) throw DimensionMismatch("affine map applied to a point of the wrong dimension");
    Vec y = translation_;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += dot(matrix_[i], x);
    return y;
  }

  /// (this ∘ inner)(x) = this(inner(x)).
  AffineMap after(const AffineMap& inner) const {
    if (inner.codomain_dim() != domain_dim_) throw DimensionMismatch("composition of incompatible affine maps");
    Matrix m = mat_mul(matrix_, inner.matrix_, inner.domain_dim_);
    Vec t = (*this)(inner.translation_);
    return {std::move(m), std::move(t), inner.domain_dim_};
  }

  std::size_t rank() const { return polyfunctor::rank(matrix_); }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  Matrix matrix_;
  Vec translation_;
  std::size_t domain_dim_ = 0;
};

/// Affine isomorphism between Aff(P) and R^k given by the lexicographically
/// first coordinate subset that projects the direction space isomorphically.
/// Lebesgue measure in these coordinates is the volume normalization used
/// throughout the library.
struct AffineChart {
  std::size_t ambient_dim = 0;
  std::vector<std::size_t> coords;
  Vec origin;
  Matrix basis;  // rows in reduced echelon form, identity on `coords`

  std::size_t dim() const { return coords.size(); }

  Vec project(const Vec& x) const {
    Vec u(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) u[i] = x[coords[i]];
    return u;
  }
  Vec lift(const Vec& u) const {
    Vec x = origin;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      Scalar c = u[j] - origin[coords[j]];
      if (sgn(c) == 0) continue;
      for (std::size_t i = 0; i < ambient_dim; ++i) x[i] += c * basis[j][i];
    }
    return x;
  }
  AffineMap projection_map() const { return AffineMap::coordinate_projection(ambient_dim, coords); }
  AffineMap lift_map() const {
    const std::size_t k = coords.size();
    Matrix m(ambient_dim, zeros(k));
    for (std::size_t i = 0; i < ambient_dim; ++i)
      for (std::size_t j = 0; j < k; ++j) m[i][j] = basis[j][i];
    Vec t = lift(zeros(k));
    return {std::move(m), std::move(t), k};
  }

  static AffineChart of_points(std::size_t ambient_dim, const std::vector<Vec>& points) {
    AffineChart c;
    c.ambient_dim = ambient_dim;
    c.origin = points.empty() ? zeros(ambient_dim) : points.front();
    Matrix diffs;
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
    Rref r = rref(diffs, ambient_dim);
    c.basis = std::move(r.rows);
    c.coords = std::move(r.pivots);
    return c;
  }
};

class Polytope;

namespace detail {
struct LatticeCache {
  std::once_flag once;
  std::unique_ptr<FaceLattice> lattice;
};
Polytope make_polytope(std::size_t ambient, std::vector<Vec> points, const std::vector<Halfspace>& candidates,
                       bool points_are_vertices);
}  // namespace detail

/// A nonempty bounded convex polytope carrying both an irredundant vertex list
/// (lexicographically sorted) and an irredundant facet list relative to its
/// affine hull, plus the equations of that hull. Immutable after construction.
class Polytope {
 public:
  Polytope() = default;

  /// Convex hull of a finite point set.
  static Polytope from_vertices(std::size_t ambient_dim, std::vector<Vec> points);
  /// Bounded solution set of an H-representation.
  static Polytope from_inequalities(const HRep& h);
  /// Single point.
  static Polytope point(Vec p) {
    std::size_t n = p.size();
    return from_vertices(n, {std::move(p)});
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return chart_.dim(); }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equations() const { return equations_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_facets() const { return facets_.size(); }
  /// Bitset of vertex indices lying on each facet.
  const std::vector<Bitset>& facet_incidence() const { return incidence_; }
  const AffineChart& chart() const { return chart_; }

  HRep h_rep() const { return {ambient_dim_, facets_, equations_}; }

  bool contains(const Vec& x) const {
    if (x.size() != ambient_dim_) throw DimensionMismatch("point dimension differs from ambient dimension");
    for (const auto& e : equations_)
      if (dot(e.normal, x) != e.offset) return false;
    for (const auto& f : facets_)
      if (dot(f.normal, x) > f.offset) return false;
    return true;
  }
  bool contains_in_relint(const Vec& x) const {
    if (x.size() != ambient_dim_) throw DimensionMismatch("point dimension differs from ambient dimension");
    for (const auto& e : equations_)
      if (dot(e.normal, x) != e.offset) return false;
    for (const auto& f : facets_)
      if (dot(f.normal, x) >= f.offset) return false;
    return true;
  }

  /// Cached face lattice; computed once and shared by copies.
  const FaceLattice& face_lattice() const {
    std::call_once(cache_->once, [this] {
      cache_->lattice = std::make_unique<FaceLattice>(
          detail::compute_face_lattice(vertices_.size(), static_cast<long>(dim()), incidence_));
    });
    return *cache_->lattice;
  }

  /// The polytope in its chart coordinates: full-dimensional in R^dim.
  Polytope in_chart_coordinates() const {
    std::vector<Vec> pts;
    pts.reserve(vertices_.size());
    for (const auto& v : vertices_) pts.push_back(chart_.project(v));
    return from_vertices(dim(), std::move(pts));
  }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_;
  }

 private:
  friend Polytope detail::make_polytope(std::size_t, std::vector<Vec>, const std::vector<Halfspace>&, bool);

  std::size_t ambient_dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equations_;
  std::vector<Bitset> incidence_;
  AffineChart chart_;
  std::shared_ptr<detail::LatticeCache> cache_ = std::make_shared<detail::LatticeCache>();
};

namespace detail {

inline std::vector<Vec> sorted_unique(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Scales (normal, offset) jointly to a primitive integer vector.
inline Halfspace primitive_halfspace(const Vec& normal, const Scalar& offset) {
  Vec joint = normal;
  joint.push_back(offset);
  IntVec p = to_primitive(joint);
  Halfspace h;
  h.offset = Scalar(p.back());
  p.pop_back();
  h.normal = to_rational(p);
  return h;
}

/// Orthogonal projection of a covector onto the span of the chart basis.
inline Vec project_onto_directions(const AffineChart& chart, const Vec& a) {
  const std::size_t k = chart.dim();
  if (k == chart.ambient_dim) return a;
  Matrix gram(k, zeros(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(chart.basis[i], chart.basis[j]);
  Vec ba(k);
  for (std::size_t i = 0; i < k; ++i) ba[i] = dot(chart.basis[i], a);
  auto coeff = solve(gram, ba, k);
  Vec out = zeros(chart.ambient_dim);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < chart.ambient_dim; ++i) out[i] += (*coeff)[j] * chart.basis[j][i];
  return out;
}

inline Polytope make_polytope(std::size_t ambient, std::vector<Vec> points, const std::vector<Halfspace>& candidates,
                              bool points_are_vertices) {
  Polytope p;
  p.ambient_dim_ = ambient;
  points = sorted_unique(std::move(points));
  if (points.empty()) throw EmptyInput();
  p.chart_ = AffineChart::of_points(ambient, points);
  const std::size_t k = p.chart_.dim();

  // Equations of the affine hull: nullspace of rows (p, -1), in echelon form.
  {
    Matrix hom;
    hom.reserve(points.size());
    for (const auto& x : points) {
      Vec row = x;
      row.push_back(-1);
      hom.push_back(std::move(row));
    }
    Matrix ns = nullspace(hom, ambient + 1);
    Rref r = rref(ns, ambient + 1);
    for (auto& row : r.rows) {
      Vec normal(row.begin(), row.end() - 1);
      p.equations_.push_back(primitive_halfspace(normal, row.back()));
    }
  }

  if (k == 0) {
    p.vertices_ = std::move(points);
    return p;
  }

  // Facet candidates: tight set spans a (k-1)-dimensional affine subspace.
  std::map<Bitset, Halfspace> facets;
  for (const auto& c : candidates) {
    Bitset tight(points.size());
    std::vector<Vec> on;
    for (std::size_t i = 0; i < points.size(); ++i) {
      Scalar v = dot(c.normal, points[i]);
      if (v == c.offset) {
        tight.set(i);
        on.push_back(points[i]);
      }
    }
    if (on.size() < k || facets.count(tight)) continue;
    if (affine_dimension(on) != static_cast<long>(k) - 1) continue;
    facets.emplace(std::move(tight), c);
  }

  std::vector<std::size_t> keep;
  if (points_are_vertices) {
    for (std::size_t i = 0; i < points.size(); ++i) keep.push_back(i);
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) {
      Bitset meet(points.size());
      for (std::size_t j = 0; j < points.size(); ++j) meet.set(j);
      for (const auto& [tight, h] : facets)
        if (tight.test(i)) meet &= tight;
      if (meet.count() == 1) keep.push_back(i);
    }
  }
  for (auto i : keep) p.vertices_.push_back(points[i]);

  std::vector<Halfspace> canon;
  for (const auto& [tight, h] : facets) {
    Vec n = project_onto_directions(p.chart_, h.normal);
    std::size_t any = tight.indices().front();
    Scalar off = dot(n, points[any]);
    canon.push_back(primitive_halfspace(n, off));
  }
  std::sort(canon.begin(), canon.end());
  p.facets_ = std::move(canon);
  for (const auto& f : p.facets_) {
    Bitset b(p.vertices_.size());
    for (std::size_t i = 0; i < p.vertices_.size(); ++i)
      if (dot(f.normal, p.vertices_[i]) == f.offset) b.set(i);
    p.incidence_.push_back(std::move(b));
  }
  return p;
}

}  // namespace detail

inline Polytope Polytope::from_vertices(std::size_t ambient_dim, std::vector<Vec> points) {
  for (const auto& x : points)
    if (x.size() != ambient_dim) throw DimensionMismatch("vertex dimension differs from ambient dimension");
  points = detail::sorted_unique(std::move(points));
  if (points.empty()) throw EmptyInput();
  std::vector<Halfspace> candidates;
  if (affine_dimension(points) > 0) {
    std::vector<IntVec> rows;
    rows.reserve(points.size());
    for (const auto& x : points) {
      Vec row{Scalar(1)};
      row.insert(row.end(), x.begin(), x.end());
      rows.push_back(to_primitive(row));
    }
    auto cone = detail::cone_generators(ambient_dim + 1, rows, {});
    for (const auto& r : cone.rays) {
      Vec normal(ambient_dim);
      for (std::size_t i = 0; i < ambient_dim; ++i) normal[i] = -Scalar(r[i + 1]);
      candidates.push_back({std::move(normal), Scalar(r[0])});
    }
  }
  return detail::make_polytope(ambient_dim, std::move(points), candidates, false);
}

inline Polytope Polytope::from_inequalities(const HRep& h) {
  const std::size_t n = h.ambient_dim;
  auto homogenize = [n](const Halfspace& hs) {
    if (hs.normal.size() != n) throw DimensionMismatch("constraint dimension differs from ambient dimension");
    Vec row{hs.offset};
    for (const auto& a : hs.normal) row.push_back(-a);
    return to_primitive(row);
  };
  std::vector<IntVec> ineqs;
  IntVec y0(n + 1, 0);
  y0[0] = 1;
  ineqs.push_back(y0);
  for (const auto& hs : h.inequalities) ineqs.push_back(homogenize(hs));
  std::vector<IntVec> eqs;
  for (const auto& hs : h.equations) eqs.push_back(homogenize(hs));

  auto cone = detail::cone_generators(n + 1, ineqs, eqs);
  std::vector<Vec> verts;
  bool recession = !cone.lineality.empty();
  for (const auto& r : cone.rays) {
    if (sgn(r[0]) == 0) {
      recession = true;
      continue;
    }
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = make_scalar(r[i + 1], r[0]);
    verts.push_back(std::move(v));
  }
  if (verts.empty()) throw EmptyInput();
  if (recession) throw UnboundedInput();
  return detail::make_polytope(n, std::move(verts), h.inequalities, true);
}

/// V-representation input.
struct VRep {
  std::size_t ambient_dim = 0;
  std::vector<Vec> points;
};

inline Polytope dd_convert(const VRep& v) { return Polytope::from_vertices(v.ambient_dim, v.points); }
inline Polytope dd_convert(const HRep& h) { return Polytope::from_inequalities(h); }

/// Pairs of vertex indices spanning an edge: the smallest face containing
/// both vertices contains no third vertex.
inline std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t nv = p.num_vertices();
  if (p.dim() == 0) return out;
  if (p.dim() == 1) {
    out.emplace_back(0, 1);
    return out;
  }
  const auto& inc = p.facet_incidence();
  std::vector<Bitset> vertex_facets(nv, Bitset(inc.size()));
  for (std::size_t f = 0; f < inc.size(); ++f)
    for (auto v : inc[f].indices()) vertex_facets[v].set(f);
  for (std::size_t a = 0; a < nv; ++a) {
    for (std::size_t b = a + 1; b < nv; ++b) {
      Bitset common = vertex_facets[a] & vertex_facets[b];
      if (common.count() + 1 < p.dim()) continue;
      Bitset meet(nv);
      for (std::size_t i = 0; i < nv; ++i) meet.set(i);
      for (auto f : common.indices()) meet &= inc[f];
      if (meet.count() == 2) out.emplace_back(a, b);
    }
  }
  return out;
}

/// Vertex images, hull taken in the codomain.
inline Polytope image(const Polytope& p, const AffineMap& f) {
  if (f.domain_dim() != p.ambient_dim()) throw DimensionMismatch("map domain differs from polytope ambient dimension");
  std::vector<Vec> pts;
  pts.reserve(p.num_vertices());
  for (const auto& v : p.vertices()) pts.push_back(f(v));
  return Polytope::from_vertices(f.codomain_dim(), std::move(pts));
}

/// X ∩ {f(x) = y}.
inline Polytope preimage_fiber(const AffineMap& f, const Polytope& x, const Vec& y) {
  if (f.domain_dim() != x.ambient_dim() || y.size() != f.codomain_dim())
    throw DimensionMismatch("preimage_fiber: incompatible dimensions");
  HRep h = x.h_rep();
  for (std::size_t i = 0; i < f.codomain_dim(); ++i) h.equations.push_back({f.matrix()[i], y[i] - f.translation()[i]});
  try {
    return Polytope::from_inequalities(h);
  } catch (const EmptyInput&) {
    throw PointNotInImage();
  }
}

/// dim X - dim f(X).
inline std::size_t codimension(const AffineMap& f, const Polytope& x) { return x.dim() - image(x, f).dim(); }

}  // namespace polyfunctor
