#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "polyfunctor/dd.hpp"
#include "polyfunctor/errors.hpp"
#include "polyfunctor/linalg.hpp"
#include "polyfunctor/polytope.hpp"

namespace polyfunctor {

// ---------------------------------------------------------------------------
// Minkowski combinations

/// Σ λ_i P_i, with 0·P = {0}.
inline Polytope minkowski_sum(const std::vector<std::pair<Scalar, Polytope>>& terms) {
  if (terms.empty()) throw InvalidArgument("minkowski_sum: no terms");
  const std::size_t n = terms.front().second.ambient_dim();
  std::vector<Vec> acc{zeros(n)};
  for (const auto& [w, p] : terms) {
    if (p.ambient_dim() != n) throw DimensionMismatch("minkowski_sum: terms live in different ambient spaces");
    if (sgn(w) < 0) throw InvalidArgument("minkowski_sum: negative weight");
    if (sgn(w) == 0) continue;
    std::vector<Vec> next;
    next.reserve(acc.size() * p.num_vertices());
    for (const auto& a : acc)
      for (const auto& v : p.vertices()) next.push_back(a + w * v);
    acc = Polytope::from_vertices(n, std::move(next)).vertices();
  }
  return Polytope::from_vertices(n, std::move(acc));
}

inline Polytope minkowski_sum(const Polytope& p, const Polytope& q) { return minkowski_sum({{1, p}, {1, q}}); }

inline Polytope scale(const Scalar& w, const Polytope& p) { return minkowski_sum({{w, p}}); }

inline Polytope translate(const Polytope& p, const Vec& t) {
  std::vector<Vec> pts;
  for (const auto& v : p.vertices()) pts.push_back(v + t);
  return Polytope::from_vertices(p.ambient_dim(), std::move(pts));
}

// ---------------------------------------------------------------------------
// Normal fans

/// Polyhedral cone {x : h·x >= 0 for h in inequalities} = cone(rays), in the
/// chart coordinates of the source polytope.
struct Cone {
  std::size_t dim = 0;
  std::vector<IntVec> rays;           // sorted primitive generators
  std::vector<IntVec> inequalities;   // h with h·x >= 0
  Bitset face;                        // vertices of the source face, when known

  friend bool operator==(const Cone& a, const Cone& b) { return a.rays == b.rays; }
  friend bool operator<(const Cone& a, const Cone& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.rays < b.rays;
  }
};

struct NormalFan {
  std::size_t ambient_dim = 0;  // dimension of the dual of the direction space
  std::vector<std::size_t> chart_coords;
  std::vector<Cone> cones;      // sorted, one per cone of the fan

  std::vector<const Cone*> maximal_cones() const {
    std::vector<const Cone*> out;
    for (const auto& c : cones)
      if (c.dim == ambient_dim) out.push_back(&c);
    return out;
  }
  /// Cone-set equality.
  bool same_cones(const NormalFan& o) const {
    if (ambient_dim != o.ambient_dim || cones.size() != o.cones.size()) return false;
    for (std::size_t i = 0; i < cones.size(); ++i)
      if (!(cones[i] == o.cones[i]) || cones[i].dim != o.cones[i].dim) return false;
    return true;
  }
};

namespace detail {

inline Cone make_cone(std::size_t k, std::vector<IntVec> gens, std::vector<IntVec> extra_ineqs = {}) {
  Cone c;
  // Extreme rays of cone(gens) ∩ {extra_ineqs >= 0}: dualize twice.
  if (!extra_ineqs.empty()) {
    auto dual = cone_generators(k, gens, {});
    std::vector<IntVec> ineqs = extra_ineqs;
    for (auto& r : dual.rays) ineqs.push_back(r);
    std::vector<IntVec> eqs = dual.lineality;
    auto prim = cone_generators(k, ineqs, eqs);
    gens = prim.rays;
  } else {
    for (auto& g : gens) g = make_primitive(g);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    // Keep only extreme generators.
    auto dual = cone_generators(k, gens, {});
    std::vector<IntVec> ineqs = dual.rays;
    auto prim = cone_generators(k, ineqs, dual.lineality);
    gens = prim.rays;
  }
  std::sort(gens.begin(), gens.end());
  c.rays = gens;
  Matrix m;
  for (const auto& g : gens) m.push_back(to_rational(g));
  c.dim = m.empty() ? 0 : rank(m);
  auto dual = cone_generators(k, gens, {});
  c.inequalities = dual.rays;
  for (const auto& l : dual.lineality) {
    c.inequalities.push_back(l);
    IntVec neg = l;
    for (auto& x : neg) x = -x;
    c.inequalities.push_back(neg);
  }
  std::sort(c.inequalities.begin(), c.inequalities.end());
  return c;
}

}  // namespace detail

/// Normal fan of P in the dual of the direction space of Aff(P), expressed in
/// chart coordinates. One cone per nonempty face; the face itself maps to {0}.
inline NormalFan normal_fan(const Polytope& p) {
  const std::size_t k = p.dim();
  const AffineChart& chart = p.chart();
  std::vector<Vec> pts;
  for (const auto& v : p.vertices()) pts.push_back(chart.project(v));
  Polytope q = Polytope::from_vertices(k, pts);
  // Vertex order of q versus p.
  std::vector<std::size_t> to_p(q.num_vertices());
  for (std::size_t i = 0; i < q.num_vertices(); ++i)
    to_p[i] = static_cast<std::size_t>(std::find(pts.begin(), pts.end(), q.vertices()[i]) - pts.begin());

  NormalFan fan;
  fan.ambient_dim = k;
  fan.chart_coords = chart.coords;
  std::vector<IntVec> normals;
  for (const auto& f : q.facets()) normals.push_back(to_primitive(f.normal));
  const auto& lat = q.face_lattice();
  for (const auto& face : lat.faces) {
    if (face.dim < 0) continue;
    std::vector<IntVec> gens;
    for (std::size_t j = 0; j < q.num_facets(); ++j)
      if (face.vertices.is_subset_of(q.facet_incidence()[j])) gens.push_back(normals[j]);
    std::sort(gens.begin(), gens.end());
    Cone c;
    c.rays = gens;
    c.dim = k - static_cast<std::size_t>(face.dim);
    auto dual = detail::cone_generators(k, gens, {});
    c.inequalities = dual.rays;
    for (const auto& l : dual.lineality) {
      c.inequalities.push_back(l);
      IntVec neg = l;
      for (auto& x : neg) x = -x;
      c.inequalities.push_back(neg);
    }
    std::sort(c.inequalities.begin(), c.inequalities.end());
    c.face = Bitset(p.num_vertices());
    for (auto i : face.vertices.indices()) c.face.set(to_p[i]);
    fan.cones.push_back(std::move(c));
  }
  std::sort(fan.cones.begin(), fan.cones.end());
  return fan;
}

/// All intersections C_1 ∩ ... ∩ C_m with C_i a cone of fans[i].
inline NormalFan common_refinement(const std::vector<NormalFan>& fans) {
  if (fans.empty()) throw InvalidArgument("common_refinement: no fans");
  NormalFan acc = fans.front();
  for (auto& c : acc.cones) c.face = Bitset();
  for (std::size_t i = 1; i < fans.size(); ++i) {
    const NormalFan& g = fans[i];
    if (g.ambient_dim != acc.ambient_dim || g.chart_coords != acc.chart_coords)
      throw DimensionMismatch("common_refinement: fans live in different spaces");
    std::set<Cone> out;
    for (const auto& a : acc.cones)
      for (const auto& b : g.cones) {
        std::vector<IntVec> ineqs = a.inequalities;
        ineqs.insert(ineqs.end(), b.inequalities.begin(), b.inequalities.end());
        auto gen = detail::cone_generators(acc.ambient_dim, ineqs, {});
        Cone c = detail::make_cone(acc.ambient_dim, gen.rays);
        out.insert(std::move(c));
      }
    acc.cones.assign(out.begin(), out.end());
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Hausdorff distance

namespace detail {

/// Exact squared Euclidean distance from x to P: the nearest point is the
/// orthogonal projection onto the affine hull of some face, lying in P.
inline Scalar squared_distance(const Vec& x, const Polytope& p) {
  if (p.contains(x)) return 0;
  const auto& lat = p.face_lattice();
  std::optional<Scalar> best;
  for (const auto& face : lat.faces) {
    if (face.dim < 0) continue;
    auto idx = face.vertices.indices();
    const Vec& v0 = p.vertices()[idx[0]];
    Matrix dirs;
    for (std::size_t i = 1; i < idx.size(); ++i) dirs.push_back(p.vertices()[idx[i]] - v0);
    Rref r = rref(dirs, p.ambient_dim());
    const std::size_t k = r.rows.size();
    Vec proj = v0;
    if (k > 0) {
      Matrix gram(k, zeros(k));
      Vec rhs(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(r.rows[i], r.rows[j]);
        rhs[i] = dot(r.rows[i], x - v0);
      }
      Vec c = *solve(gram, rhs, k);
      for (std::size_t i = 0; i < k; ++i) proj = proj + c[i] * r.rows[i];
    }
    if (!p.contains(proj)) continue;
    Vec d = x - proj;
    Scalar s = dot(d, d);
    if (!best || s < *best) best = s;
  }
  return *best;
}

}  // namespace detail

/// Exact square of the Hausdorff distance.
inline Scalar squared_hausdorff_distance(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatch("hausdorff: different ambient spaces");
  Scalar best = 0;
  for (const auto& v : p.vertices()) best = std::max(best, detail::squared_distance(v, q));
  for (const auto& v : q.vertices()) best = std::max(best, detail::squared_distance(v, p));
  return best;
}

/// Hausdorff distance as a double. The only rounding is in the final square
/// root of the exact squared distance, so the relative error is below 1e-15.
inline double hausdorff_distance(const Polytope& p, const Polytope& q) {
  return std::sqrt(to_double(squared_hausdorff_distance(p, q)));
}

// ---------------------------------------------------------------------------
// Equivalence tests

inline constexpr std::size_t kDefaultSearchBudget = 1'000'000;

namespace detail {

struct VertexInvariants {
  std::vector<std::vector<std::size_t>> neighbors;
  std::vector<std::vector<std::size_t>> facets_of;  // facet indices per vertex
  std::vector<std::pair<std::size_t, std::size_t>> key;  // (degree, #facets)
};

inline VertexInvariants vertex_invariants(const Polytope& p) {
  VertexInvariants inv;
  const std::size_t n = p.num_vertices();
  inv.neighbors.resize(n);
  inv.facets_of.resize(n);
  for (auto [a, b] : edges(p)) {
    inv.neighbors[a].push_back(b);
    inv.neighbors[b].push_back(a);
  }
  for (std::size_t f = 0; f < p.num_facets(); ++f)
    for (auto v : p.facet_incidence()[f].indices()) inv.facets_of[v].push_back(f);
  for (std::size_t v = 0; v < n; ++v) inv.key.emplace_back(inv.neighbors[v].size(), inv.facets_of[v].size());
  return inv;
}

inline bool same_coarse_shape(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim() || p.num_vertices() != q.num_vertices() || p.num_facets() != q.num_facets()) return false;
  std::vector<std::size_t> fp, fq;
  for (const auto& b : p.facet_incidence()) fp.push_back(b.count());
  for (const auto& b : q.facet_incidence()) fq.push_back(b.count());
  std::sort(fp.begin(), fp.end());
  std::sort(fq.begin(), fq.end());
  return fp == fq;
}

}  // namespace detail

/// An affine map T with T(vert P) = vert Q, bijective between the affine hulls.
inline std::optional<AffineMap> affinely_equivalent(const Polytope& p, const Polytope& q,
                                                    std::size_t budget = kDefaultSearchBudget) {
  if (!detail::same_coarse_shape(p, q)) return std::nullopt;
  const std::size_t k = p.dim();
  const AffineChart& cp = p.chart();
  const AffineChart& cq = q.chart();
  if (k == 0) return AffineMap::constant(p.ambient_dim(), q.vertices().front());

  std::vector<Vec> pv, qv;
  for (const auto& v : p.vertices()) pv.push_back(cp.project(v));
  for (const auto& v : q.vertices()) qv.push_back(cq.project(v));
  std::set<Vec> qset(qv.begin(), qv.end());

  auto ip = detail::vertex_invariants(p);
  auto iq = detail::vertex_invariants(q);
  {
    auto a = ip.key, b = iq.key;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  // Base vertex: rarest invariant, then smallest degree.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> freq;
  for (const auto& key : ip.key) ++freq[key];
  std::size_t base = 0;
  for (std::size_t v = 1; v < pv.size(); ++v) {
    auto rank_of = [&](std::size_t u) { return std::make_tuple(freq[ip.key[u]], ip.key[u].first, u); };
    if (rank_of(v) < rank_of(base)) base = v;
  }
  // k neighbours of base with affinely independent directions.
  std::vector<std::size_t> frame;
  Matrix dirs;
  for (auto u : ip.neighbors[base]) {
    Matrix trial = dirs;
    trial.push_back(pv[u] - pv[base]);
    if (rank(trial) == trial.size()) {
      dirs = std::move(trial);
      frame.push_back(u);
      if (frame.size() == k) break;
    }
  }
  if (frame.size() != k) throw InvalidArgument("affinely_equivalent: vertex figure does not span");
  Matrix dinv = *inverse(transpose(dirs, k));  // columns are directions

  std::size_t spent = 0;
  std::vector<std::size_t> chosen(k);
  std::vector<bool> used;
  std::optional<AffineMap> found;

  auto try_map = [&](std::size_t b2) -> bool {
    Matrix img(k);
    for (std::size_t i = 0; i < k; ++i) img[i] = qv[chosen[i]] - qv[b2];
    Matrix m = mat_mul(transpose(img, k), dinv, k);  // M·D = D'
    if (rank(m) != k) return false;
    Vec t = qv[b2] - mat_vec(m, pv[base]);
    AffineMap chart_map(m, t, k);
    std::set<Vec> seen;
    for (const auto& x : pv) {
      Vec y = chart_map(x);
      if (!qset.count(y) || !seen.insert(y).second) return false;
    }
    found = cq.lift_map().after(chart_map).after(cp.projection_map());
    return true;
  };

  for (std::size_t b2 = 0; b2 < qv.size() && !found; ++b2) {
    if (iq.key[b2] != ip.key[base]) continue;
    const auto& nb = iq.neighbors[b2];
    used.assign(qv.size(), false);
    auto rec = [&](auto&& self, std::size_t level) -> bool {
      if (level == k) {
        if (++spent > budget) throw SearchBudgetExceeded("affine equivalence search exceeded its budget");
        return try_map(b2);
      }
      for (auto u : nb) {
        if (used[u] || iq.key[u] != ip.key[frame[level]]) continue;
        used[u] = true;
        chosen[level] = u;
        if (self(self, level + 1)) return true;
        used[u] = false;
      }
      return false;
    };
    rec(rec, 0);
  }
  return found;
}

/// Isomorphism of vertex-facet incidences, hence of face lattices.
inline bool combinatorially_equivalent(const Polytope& p, const Polytope& q,
                                       std::size_t budget = kDefaultSearchBudget) {
  if (!detail::same_coarse_shape(p, q)) return false;
  const std::size_t n = p.num_vertices();
  if (p.dim() == 0) return true;
  auto ip = detail::vertex_invariants(p);
  auto iq = detail::vertex_invariants(q);

  auto vertex_facets = [](const Polytope& x) {
    std::vector<Bitset> out(x.num_vertices(), Bitset(x.num_facets()));
    for (std::size_t f = 0; f < x.num_facets(); ++f)
      for (auto v : x.facet_incidence()[f].indices()) out[v].set(f);
    return out;
  };
  auto vp = vertex_facets(p), vq = vertex_facets(q);
  std::set<Bitset> qfacets(q.facet_incidence().begin(), q.facet_incidence().end());

  // Visit vertices in BFS order so that each new vertex is adjacent to an earlier one.
  std::vector<std::size_t> order;
  {
    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      order.push_back(s);
      for (std::size_t h = order.size() - 1; h < order.size(); ++h)
        for (auto u : ip.neighbors[order[h]])
          if (!seen[u]) {
            seen[u] = true;
            order.push_back(u);
          }
    }
  }

  std::vector<std::size_t> sigma(n, n);
  std::vector<bool> taken(n, false);
  std::size_t spent = 0;
  auto rec = [&](auto&& self, std::size_t level) -> bool {
    if (++spent > budget) throw SearchBudgetExceeded("combinatorial equivalence search exceeded its budget");
    if (level == n) {
      for (const auto& f : p.facet_incidence()) {
        Bitset img(n);
        for (auto v : f.indices()) img.set(sigma[v]);
        if (!qfacets.count(img)) return false;
      }
      return true;
    }
    const std::size_t v = order[level];
    for (std::size_t w = 0; w < n; ++w) {
      if (taken[w] || iq.key[w] != ip.key[v]) continue;
      bool ok = true;
      for (std::size_t l = 0; l < level && ok; ++l) {
        std::size_t u = order[l];
        if ((vp[u] & vp[v]).count() != (vq[sigma[u]] & vq[w]).count()) ok = false;
      }
      if (!ok) continue;
      sigma[v] = w;
      taken[w] = true;
      if (self(self, level + 1)) return true;
      taken[w] = false;
      sigma[v] = n;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace polyfunctor
