#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "polyfunctor/errors.hpp"
#include "polyfunctor/linalg.hpp"
#include "polyfunctor/lp.hpp"
#include "polyfunctor/polyops.hpp"
#include "polyfunctor/polytope.hpp"

namespace polyfunctor {

/// How an affine map φ: P → Q is turned into a coordinate vector.
///
/// Chart: the images φ(c_0), ..., φ(c_k) of the first affinely independent
/// vertices of P in lexicographic order (k = dim P).
/// Affine: the entries of (A, t) with φ(x) = A x + t; needs P full-dimensional.
enum class DomainCoords { Chart, Affine };
/// Intrinsic: images in the chart coordinates of Aff(Q).
/// Ambient: images in the ambient coordinates of Q, with Aff(Q) equations.
enum class TargetCoords { Intrinsic, Ambient };

struct HomOptions {
  DomainCoords domain = DomainCoords::Chart;
  TargetCoords target = TargetCoords::Intrinsic;
};

/// Constraint "φ(vertex) lies in the halfspace of facet".
struct FacetLabel {
  std::size_t vertex = 0;  // index into P.vertices()
  std::size_t facet = 0;   // index into Q.facets()
  friend bool operator==(const FacetLabel&, const FacetLabel&) = default;
};

/// The labelled linear system of Hom(P, Q).
struct HomSystem {
  HRep h;
  std::vector<FacetLabel> labels;  // one per inequality
};

namespace detail {

/// Indices of the first affinely independent vertices, lexicographic order.
inline std::vector<std::size_t> basis_vertices(const Polytope& p) {
  std::vector<std::size_t> out{0};
  Matrix dirs;
  for (std::size_t i = 1; i < p.num_vertices() && out.size() < p.dim() + 1; ++i) {
    Matrix trial = dirs;
    trial.push_back(p.vertices()[i] - p.vertices()[0]);
    if (rank(trial) == trial.size()) {
      dirs = std::move(trial);
      out.push_back(i);
    }
  }
  return out;
}

/// Facet (a, b) of Q rewritten in Q's chart coordinates.
inline Halfspace facet_in_chart(const AffineChart& c, const Halfspace& f) {
  const std::size_t k = c.dim();
  Halfspace out;
  out.normal.resize(k);
  out.offset = f.offset - dot(f.normal, c.origin);
  for (std::size_t j = 0; j < k; ++j) {
    out.normal[j] = dot(f.normal, c.basis[j]);
    out.offset += c.origin[c.coords[j]] * out.normal[j];
  }
  return out;
}

}  // namespace detail

/// Hom(P, Q) as a polytope of affine maps, with decoding back to AffineMap.
class HomPolytope {
 public:
  HomPolytope(Polytope source, Polytope target, HomOptions opts = {})
      : source_(std::move(source)), target_(std::move(target)), opts_(opts) {
    if (opts_.domain == DomainCoords::Affine && source_.dim() != source_.ambient_dim())
      throw InvalidArgument("affine domain coordinates need a full-dimensional source");
    basis_ = detail::basis_vertices(source_);
    const std::size_t k = source_.dim();
    Matrix m(k + 1, zeros(k + 1));
    for (std::size_t j = 0; j <= k; ++j) {
      Vec c = source_.chart().project(source_.vertices()[basis_[j]]);
      for (std::size_t i = 0; i < k; ++i) m[i][j] = c[i];
      m[k][j] = 1;
    }
    bary_ = *inverse(m);
  }

  const Polytope& source() const { return source_; }
  const Polytope& target() const { return target_; }
  const HomOptions& options() const { return opts_; }

  /// Dimension of the coordinate space of images.
  std::size_t target_coord_dim() const {
    return opts_.target == TargetCoords::Intrinsic ? target_.dim() : target_.ambient_dim();
  }
  std::size_t coord_dim() const {
    const std::size_t m = target_coord_dim();
    return opts_.domain == DomainCoords::Chart ? (source_.dim() + 1) * m : (source_.ambient_dim() + 1) * m;
  }
  /// Vertices c_0..c_k of P used as chart points.
  std::vector<Vec> basis_chart() const {
    std::vector<Vec> out;
    for (auto i : basis_) out.push_back(source_.vertices()[i]);
    return out;
  }

  /// Barycentric coordinates of x ∈ Aff(P) with respect to the chart points.
  Vec barycentric(const Vec& x) const {
    Vec u = source_.chart().project(x);
    u.push_back(1);
    return mat_vec(bary_, u);
  }

  /// Linear functional (coefficients over the coordinates) giving component
  /// `i` of φ(x) in target coordinates, plus a constant term.
  std::pair<Vec, Scalar> image_row(const Vec& x, std::size_t i) const {
    const std::size_t m = target_coord_dim();
    Vec row = zeros(coord_dim());
    if (opts_.domain == DomainCoords::Chart) {
      Vec beta = barycentric(x);
      for (std::size_t j = 0; j < beta.size(); ++j) row[j * m + i] = beta[j];
    } else {
      const std::size_t n = source_.ambient_dim();
      for (std::size_t l = 0; l < n; ++l) row[i * n + l] = x[l];
      row[m * n + i] = 1;
    }
    return {row, 0};
  }

  /// The labelled H-representation: one inequality per (vertex of P, facet of Q).
  HomSystem system() const {
    HomSystem s;
    s.h.ambient_dim = coord_dim();
    const std::size_t m = target_coord_dim();
    std::vector<Halfspace> facets;
    for (const auto& f : target_.facets())
      facets.push_back(opts_.target == TargetCoords::Intrinsic ? detail::facet_in_chart(target_.chart(), f) : f);
    for (std::size_t v = 0; v < source_.num_vertices(); ++v) {
      std::vector<Vec> rows;
      for (std::size_t i = 0; i < m; ++i) rows.push_back(image_row(source_.vertices()[v], i).first);
      for (std::size_t fi = 0; fi < facets.size(); ++fi) {
        Vec a = zeros(coord_dim());
        for (std::size_t i = 0; i < m; ++i)
          if (sgn(facets[fi].normal[i]) != 0) a = a + facets[fi].normal[i] * rows[i];
        s.h.inequalities.push_back({std::move(a), facets[fi].offset});
        s.labels.push_back({v, fi});
      }
    }
    if (opts_.target == TargetCoords::Ambient) {
      for (const auto& x : basis_chart()) {
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < m; ++i) rows.push_back(image_row(x, i).first);
        for (const auto& e : target_.equations()) {
          Vec a = zeros(coord_dim());
          for (std::size_t i = 0; i < m; ++i)
            if (sgn(e.normal[i]) != 0) a = a + e.normal[i] * rows[i];
          s.h.equations.push_back({std::move(a), e.offset});
        }
      }
    }
    return s;
  }

  /// Builds (and caches) the polytope by double description.
  const Polytope& underlying() const {
    std::call_once(cache_->once, [this] { cache_->poly = Polytope::from_inequalities(system().h); });
    return cache_->poly;
  }

  /// Label of each facet of underlying(): the first (v, F) whose inequality
  /// is tight exactly on that facet.
  std::vector<std::optional<FacetLabel>> facet_labels() const {
    const Polytope& u = underlying();
    HomSystem s = system();
    std::vector<std::optional<FacetLabel>> out(u.num_facets());
    for (std::size_t r = 0; r < s.h.inequalities.size(); ++r) {
      Bitset tight(u.num_vertices());
      for (std::size_t i = 0; i < u.num_vertices(); ++i)
        if (dot(s.h.inequalities[r].normal, u.vertices()[i]) == s.h.inequalities[r].offset) tight.set(i);
      for (std::size_t f = 0; f < u.num_facets(); ++f)
        if (!out[f] && u.facet_incidence()[f] == tight) out[f] = s.labels[r];
    }
    return out;
  }

  /// Point of the coordinate space to the affine map P → Q (ambient coordinates).
  AffineMap decode(const Vec& point) const {
    if (point.size() != coord_dim()) throw DimensionMismatch("hom decode: wrong coordinate count");
    const std::size_t m = target_coord_dim();
    AffineMap in_target;
    if (opts_.domain == DomainCoords::Chart) {
      // x ↦ Y · bary · (proj(x), 1)
      const std::size_t k = source_.dim();
      Matrix y(m, zeros(k + 1));
      for (std::size_t j = 0; j <= k; ++j)
        for (std::size_t i = 0; i < m; ++i) y[i][j] = point[j * m + i];
      Matrix yb = mat_mul(y, bary_, k + 1);
      Matrix lin(m, zeros(k));
      Vec t(m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) lin[i][j] = yb[i][j];
        t[i] = yb[i][k];
      }
      in_target = AffineMap(lin, t, k).after(source_.chart().projection_map());
    } else {
      const std::size_t n = source_.ambient_dim();
      Matrix a(m, zeros(n));
      Vec t(m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t l = 0; l < n; ++l) a[i][l] = point[i * n + l];
        t[i] = point[m * n + i];
      }
      in_target = AffineMap(a, t, n);
    }
    if (opts_.target == TargetCoords::Intrinsic) return target_.chart().lift_map().after(in_target);
    return in_target;
  }

  /// Affine map P → Q (ambient coordinates) to its coordinate vector.
  Vec encode(const AffineMap& g) const {
    if (g.domain_dim() != source_.ambient_dim() || g.codomain_dim() != target_.ambient_dim())
      throw DimensionMismatch("hom encode: map has the wrong shape");
    AffineMap h = opts_.target == TargetCoords::Intrinsic ? target_.chart().projection_map().after(g) : g;
    const std::size_t m = target_coord_dim();
    Vec out = zeros(coord_dim());
    if (opts_.domain == DomainCoords::Chart) {
      auto pts = basis_chart();
      for (std::size_t j = 0; j < pts.size(); ++j) {
        Vec y = h(pts[j]);
        for (std::size_t i = 0; i < m; ++i) out[j * m + i] = y[i];
      }
    } else {
      const std::size_t n = source_.ambient_dim();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t l = 0; l < n; ++l) out[i * n + l] = h.matrix()[i][l];
        out[m * n + i] = h.translation()[i];
      }
    }
    return out;
  }

 private:
  Polytope source_, target_;
  HomOptions opts_;
  std::vector<std::size_t> basis_;
  Matrix bary_;
  struct Cache {
    std::once_flag once;
    Polytope poly;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

inline HomPolytope hom_polytope(const Polytope& p, const Polytope& q, HomOptions opts = {}) {
  HomPolytope h(p, q, opts);
  h.underlying();
  return h;
}

/// Polar within the linear span of S; requires 0 ∈ relint(S).
inline Polytope polar(const Polytope& s) {
  const std::size_t n = s.ambient_dim();
  if (!s.contains_in_relint(zeros(n))) throw OriginNotInteriorError();
  if (s.dim() == 0) return s;
  std::vector<Vec> pts;
  for (const auto& f : s.facets()) pts.push_back((1 / f.offset) * f.normal);
  return Polytope::from_vertices(n, std::move(pts));
}

/// conv((T, 0), (0, 1), (0, -1)); requires 0 ∈ relint(T).
inline Polytope bipyramid(const Polytope& t) {
  const std::size_t n = t.ambient_dim();
  if (!t.contains_in_relint(zeros(n))) throw OriginNotInteriorError();
  std::vector<Vec> pts;
  for (auto v : t.vertices()) {
    v.push_back(0);
    pts.push_back(std::move(v));
  }
  Vec apex = zeros(n + 1);
  apex[n] = 1;
  pts.push_back(apex);
  apex[n] = -1;
  pts.push_back(apex);
  return Polytope::from_vertices(n + 1, std::move(pts));
}

/// conv{(v ⊗ w, v, w)} with v, w in the chart coordinates of P and Q; v ⊗ w
/// is flattened row-major.
inline Polytope tensor_product(const Polytope& p, const Polytope& q) {
  const std::size_t dp = p.dim(), dq = q.dim();
  std::vector<Vec> pts;
  for (const auto& v0 : p.vertices())
    for (const auto& w0 : q.vertices()) {
      Vec v = p.chart().project(v0), w = q.chart().project(w0);
      Vec x;
      x.reserve(dp * dq + dp + dq);
      for (std::size_t i = 0; i < dp; ++i)
        for (std::size_t j = 0; j < dq; ++j) x.push_back(v[i] * w[j]);
      x.insert(x.end(), v.begin(), v.end());
      x.insert(x.end(), w.begin(), w.end());
      pts.push_back(std::move(x));
    }
  return Polytope::from_vertices(dp * dq + dp + dq, std::move(pts));
}

struct HomSumReport {
  bool equal = false;
  bool sum_inside_hom = false;   // Hom(P,Q) + Hom(P,R) ⊆ Hom(P,Q+R)
  bool hom_inside_sum = false;   // Hom(P,Q+R) ⊆ Hom(P,Q) + Hom(P,R)
  std::size_t hom_vertices = 0;
};

/// Verifies Hom(P, Q+R) = Hom(P,Q) + Hom(P,R) as point sets in the space of
/// affine maps P → V, with the same chart points on P for all three.
inline HomSumReport hom_sum_report(const Polytope& p, const Polytope& q, const Polytope& r) {
  if (q.ambient_dim() != r.ambient_dim()) throw DimensionMismatch("hom_sum_check: Q and R in different spaces");
  const HomOptions opts{DomainCoords::Chart, TargetCoords::Ambient};
  HomPolytope hq(p, q, opts), hr(p, r, opts), hs(p, minkowski_sum(q, r), opts);
  const Polytope& a = hs.underlying();
  HomSumReport rep;
  rep.hom_vertices = a.num_vertices();

  rep.sum_inside_hom = true;
  for (const auto& x : hq.underlying().vertices()) {
    for (const auto& y : hr.underlying().vertices())
      if (!a.contains(x + y)) {
        rep.sum_inside_hom = false;
        break;
      }
    if (!rep.sum_inside_hom) break;
  }

  // a = x + (a - x) with x ∈ Hom(P,Q), a - x ∈ Hom(P,R).
  HRep hq_sys = hq.system().h, hr_sys = hr.system().h;
  rep.hom_inside_sum = true;
  for (const auto& v : a.vertices()) {
    HRep joint = hq_sys;
    for (const auto& hs_r : hr_sys.inequalities)
      joint.inequalities.push_back({Scalar(-1) * hs_r.normal, hs_r.offset - dot(hs_r.normal, v)});
    for (const auto& e : hr_sys.equations) joint.equations.push_back({Scalar(-1) * e.normal, e.offset - dot(e.normal, v)});
    if (!lp_feasible(joint)) {
      rep.hom_inside_sum = false;
      break;
    }
  }
  rep.equal = rep.sum_inside_hom && rep.hom_inside_sum;
  return rep;
}

inline bool hom_sum_check(const Polytope& p, const Polytope& q, const Polytope& r) {
  return hom_sum_report(p, q, r).equal;
}

/// Writes φ ∈ Hom(P, Q+R) as φ_Q + φ_R with φ_Q ∈ Hom(P,Q), φ_R ∈ Hom(P,R).
inline std::optional<std::pair<AffineMap, AffineMap>> decompose_hom_sum(const Polytope& p, const Polytope& q,
                                                                         const Polytope& r, const AffineMap& phi) {
  const HomOptions opts{DomainCoords::Chart, TargetCoords::Ambient};
  HomPolytope hq(p, q, opts), hr(p, r, opts);
  Vec target = hq.encode(phi);
  HRep joint = hq.system().h;
  for (const auto& h : hr.system().h.inequalities)
    joint.inequalities.push_back({Scalar(-1) * h.normal, h.offset - dot(h.normal, target)});
  for (const auto& e : hr.system().h.equations)
    joint.equations.push_back({Scalar(-1) * e.normal, e.offset - dot(e.normal, target)});
  LpResult res = lp_solve(zeros(joint.ambient_dim), joint, Sense::Maximize);
  if (!res.feasible()) return std::nullopt;
  return std::make_pair(hq.decode(res.point), hr.decode(target - res.point));
}

/// Verdict of Hom(a ⊗ b, c) ≅ Hom(a, Hom(b, c)).
inline bool adjunction_check(const Polytope& a, const Polytope& b, const Polytope& c,
                             std::size_t budget = kDefaultSearchBudget) {
  Polytope lhs = hom_polytope(tensor_product(a, b), c).underlying();
  Polytope inner = hom_polytope(b, c).underlying();
  Polytope rhs = hom_polytope(a, inner).underlying();
  return affinely_equivalent(lhs, rhs, budget).has_value();
}

}  // namespace polyfunctor
