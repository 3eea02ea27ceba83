#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polyfunctor/errors.hpp"
#include "polyfunctor/homtensor.hpp"
#include "polyfunctor/lp.hpp"
#include "polyfunctor/parallel.hpp"
#include "polyfunctor/polynomial.hpp"
#include "polyfunctor/polytope.hpp"

namespace polyfunctor {

/// Z, the map f: Y → X, and X. Maps g: Z → X are compared against f(Y).
struct SandwichSetup {
  Polytope z;
  Polytope y;
  AffineMap f;
  Polytope x;

  Polytope image_f() const { return image(y, f); }
};

/// Nested squares [-a, a]² ⊂ [-b, b]² with the inclusion, and Z a triangle.
inline SandwichSetup remark85_setup(const Scalar& inner = 1, const Scalar& outer = 10) {
  auto square = [](const Scalar& e) {
    Scalar m = -e;
    return Polytope::from_vertices(2, {Vec{m, m}, Vec{m, e}, Vec{e, m}, Vec{e, e}});
  };
  Polytope tri = Polytope::from_vertices(2, {make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})});
  return {tri, square(inner), AffineMap::identity(2), square(outer)};
}

namespace detail {

inline void check_in_x(const AffineMap& g, const SandwichSetup& s) {
  if (g.domain_dim() != s.z.ambient_dim() || g.codomain_dim() != s.x.ambient_dim())
    throw DimensionMismatch("g does not map Z's space to X's space");
  for (const auto& v : s.z.vertices())
    if (!s.x.contains(g(v))) throw InvalidArgument("g(Z) is not contained in X");
}

// Points in X's chart coordinates.
inline std::vector<Vec> chart_points(const AffineChart& c, const std::vector<Vec>& pts) {
  std::vector<Vec> out;
  for (const auto& p : pts) out.push_back(c.project(p));
  return out;
}

// Some point in conv(a) ∩ conv(b), optionally with all weights positive.
inline bool hulls_meet(const std::vector<Vec>& a, const std::vector<Vec>& b, bool relative_interiors) {
  const std::size_t na = a.size(), nb = b.size(), d = a.front().size(), n = na + nb;
  HRep h;
  h.ambient_dim = n;
  std::vector<bool> strict;
  for (std::size_t i = 0; i < n; ++i) {
    h.inequalities.push_back({-1 * unit_vector(n, i), 0});
    strict.push_back(relative_interiors);
  }
  Vec sa = zeros(n), sb = zeros(n);
  for (std::size_t i = 0; i < na; ++i) sa[i] = 1;
  for (std::size_t i = 0; i < nb; ++i) sb[na + i] = 1;
  h.equations.push_back({sa, 1});
  h.equations.push_back({sb, 1});
  for (std::size_t r = 0; r < d; ++r) {
    Vec row = zeros(n);
    for (std::size_t i = 0; i < na; ++i) row[i] = a[i][r];
    for (std::size_t i = 0; i < nb; ++i) row[na + i] = -b[i][r];
    h.equations.push_back({std::move(row), 0});
  }
  return lp_feasible(h, strict);
}

inline Matrix directions(const std::vector<Vec>& pts) {
  Matrix m;
  for (std::size_t i = 1; i < pts.size(); ++i) m.push_back(pts[i] - pts[0]);
  return m;
}

}  // namespace detail

/// f(Y) ⊆ g(Z).
inline bool sandwich_member(const AffineMap& g, const SandwichSetup& s) {
  detail::check_in_x(g, s);
  Polytope gz = image(s.z, g), im = s.image_f();
  for (const auto& w : im.vertices())
    if (!gz.contains(w)) return false;
  return true;
}

enum class Membership { Member, NonMember, ClosureUndecided };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "nonmember";
    default: return "closure-undecided";
  }
}

/// Membership of g in the closure of the maps whose image avoids f(Y).
inline Membership complement_member(const AffineMap& g, const SandwichSetup& s) {
  detail::check_in_x(g, s);
  const AffineChart& c = s.x.chart();
  const std::size_t d = c.dim();
  std::vector<Vec> gpts;
  for (const auto& v : s.z.vertices()) gpts.push_back(c.project(g(v)));
  Polytope im = image(s.image_f(), c.projection_map());

  if (im.dim() == d) {
    // g(Z) meets the interior of f(Y): λ ≥ 0, Σλ = 1, Σλ g(v) strictly inside every facet
    const std::size_t n = gpts.size();
    HRep h;
    h.ambient_dim = n;
    std::vector<bool> strict;
    for (std::size_t i = 0; i < n; ++i) {
      h.inequalities.push_back({-1 * unit_vector(n, i), 0});
      strict.push_back(false);
    }
    for (const auto& f : im.facets()) {
      Vec row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = dot(f.normal, gpts[i]);
      h.inequalities.push_back({std::move(row), f.offset});
      strict.push_back(true);
    }
    Vec ones(n, Scalar(1));
    h.equations.push_back({ones, 1});
    return lp_feasible(h, strict) ? Membership::NonMember : Membership::Member;
  }

  if (!detail::hulls_meet(gpts, im.vertices(), false)) return Membership::Member;
  if (im.dim() + s.z.dim() < d) return Membership::Member;
  Matrix dirs = detail::directions(gpts);
  for (auto& r : detail::directions(im.vertices())) dirs.push_back(std::move(r));
  if (rank(dirs) == d && detail::hulls_meet(gpts, im.vertices(), true)) return Membership::NonMember;
  return Membership::ClosureUndecided;
}

enum class SetKind { Sandwich, Complement };

inline const char* to_string(SetKind k) { return k == SetKind::Sandwich ? "sandwich" : "complement"; }

/// p > 0 when strict, p ≥ 0 otherwise.
struct Atom {
  Polynomial p;
  bool strict = false;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Conjunction {
  std::vector<Atom> atoms;
  std::string provenance;
};

/// A disjunction of conjunctions over the chart coordinates of Hom(Z, X).
struct SignConditionSystem {
  SetKind kind = SetKind::Sandwich;
  std::size_t num_variables = 0;
  std::vector<std::string> variable_names;
  std::vector<Conjunction> clauses;

  bool evaluate(const Vec& point) const {
    if (point.size() != num_variables) throw DimensionMismatch("sign conditions: wrong number of coordinates");
    for (const auto& c : clauses) {
      bool ok = true;
      for (const auto& a : c.atoms) {
        int s = sgn(a.p(point));
        if (s < 0 || (a.strict && s == 0)) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& c : clauses)
      for (const auto& a : c.atoms) d = std::max(d, a.p.degree());
    return d;
  }
};

/// Chart coordinates used by the sign conditions: images of the basis
/// vertices of Z in the chart of X.
inline HomPolytope sandwich_coordinates(const SandwichSetup& s) {
  return HomPolytope(s.z, s.x, {DomainCoords::Chart, TargetCoords::Intrinsic});
}

namespace detail {

using PolyPoint = std::vector<Polynomial>;

inline Polynomial orientation(const std::vector<PolyPoint>& pts) {
  const std::size_t d = pts.size() - 1;
  std::vector<std::vector<Polynomial>> m(d + 1, std::vector<Polynomial>(d + 1));
  for (std::size_t j = 0; j <= d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = pts[j][i];
    m[d][j] = Polynomial(Scalar(1));
  }
  return determinant(m);
}

inline PolyPoint constant_point(const Vec& v) {
  PolyPoint out;
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::string index_list(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

inline void push_unique(std::vector<Atom>& atoms, Atom a) {
  if (a.p.is_zero() && !a.strict) return;
  for (const auto& b : atoms)
    if (b == a) return;
  atoms.push_back(std::move(a));
}

}  // namespace detail

inline constexpr std::size_t kDefaultMaxConjunctions = 4096;

/// Sign conditions describing Ⓢ(Z, f) or ©(Z, f).
///
/// Sandwich: every vertex w of f(Y) lies in a full-dimensional simplex on d+1
/// vertices of g(Z), with the orientation of each chosen simplex fixed.
/// Complement: some hyperplane through d of the points g(v), w separates
/// g(Z) from f(Y) and is not constant on f(Y).
inline SignConditionSystem emit_sign_conditions(const SandwichSetup& s, SetKind kind,
                                                std::size_t max_conjunctions = kDefaultMaxConjunctions) {
  const AffineChart& c = s.x.chart();
  const std::size_t d = c.dim();
  if (d > 3) throw ScaleLimitExceeded("sign conditions: dim X above 3");
  if (s.z.num_facets() > 10) throw ScaleLimitExceeded("sign conditions: Z has more than 10 facets");
  Polytope im = image(s.image_f(), c.projection_map());

  HomPolytope hom = sandwich_coordinates(s);
  SignConditionSystem sys;
  sys.kind = kind;
  sys.num_variables = hom.coord_dim();
  for (std::size_t j = 0; j <= s.z.dim(); ++j)
    for (std::size_t i = 0; i < d; ++i) sys.variable_names.push_back("y" + std::to_string(j) + "_" + std::to_string(i));

  std::vector<detail::PolyPoint> gpts;
  for (const auto& v : s.z.vertices()) {
    detail::PolyPoint p;
    for (std::size_t i = 0; i < d; ++i) p.push_back(Polynomial::linear(hom.image_row(v, i).first));
    gpts.push_back(std::move(p));
  }
  std::vector<detail::PolyPoint> wpts;
  for (const auto& w : im.vertices()) wpts.push_back(detail::constant_point(w));

  if (kind == SetKind::Complement && im.dim() < d) {
    if (im.dim() + s.z.dim() < d) {
      sys.clauses.push_back({{}, "all maps"});
      return sys;
    }
    throw InvalidArgument("complement sign conditions need dim f(Y) = dim X");
  }
  if (kind == SetKind::Sandwich && im.dim() < d) throw InvalidArgument("sandwich sign conditions need dim f(Y) = dim X");

  if (kind == SetKind::Sandwich) {
    struct Option {
      std::size_t subset;
      int sigma;
      std::vector<Atom> atoms;
    };
    auto subs = detail::subsets(gpts.size(), d + 1);
    std::vector<Polynomial> dets;
    for (const auto& sub : subs) {
      std::vector<detail::PolyPoint> pts;
      for (auto i : sub) pts.push_back(gpts[i]);
      dets.push_back(detail::orientation(pts));
    }
    std::vector<std::vector<Option>> per_w(wpts.size());
    for (std::size_t w = 0; w < wpts.size(); ++w)
      for (std::size_t k = 0; k < subs.size(); ++k)
        for (int sigma : {1, -1}) {
          Option o{k, sigma, {}};
          Polynomial sg{Scalar(sigma)};
          o.atoms.push_back({sg * dets[k], true});
          for (std::size_t r = 0; r < subs[k].size(); ++r) {
            std::vector<detail::PolyPoint> pts;
            for (auto i : subs[k]) pts.push_back(gpts[i]);
            pts[r] = wpts[w];
            detail::push_unique(o.atoms, {sg * detail::orientation(pts), false});
          }
          per_w[w].push_back(std::move(o));
        }
    std::vector<int> chosen(subs.size(), 0);
    std::vector<const Option*> path;
    auto rec = [&](auto&& self, std::size_t w) -> void {
      if (w == per_w.size()) {
        if (sys.clauses.size() >= max_conjunctions) throw ScaleLimitExceeded("sign conditions: too many conjunctions");
        Conjunction cj;
        for (std::size_t i = 0; i < path.size(); ++i) {
          for (const auto& a : path[i]->atoms) detail::push_unique(cj.atoms, a);
          cj.provenance += (i ? " " : "") + std::string("w") + std::to_string(i) + "∈" +
                           detail::index_list(subs[path[i]->subset]) + (path[i]->sigma > 0 ? "+" : "-");
        }
        sys.clauses.push_back(std::move(cj));
        return;
      }
      for (const auto& o : per_w[w]) {
        int& ch = chosen[o.subset];
        if (ch != 0 && ch != o.sigma) continue;
        const int saved = ch;
        ch = o.sigma;
        path.push_back(&o);
        self(self, w + 1);
        path.pop_back();
        ch = saved;
      }
    };
    rec(rec, 0);
    return sys;
  }

  // complement, dim f(Y) = d
  std::vector<detail::PolyPoint> all = gpts;
  all.insert(all.end(), wpts.begin(), wpts.end());
  auto label = [&](std::size_t i) {
    return i < gpts.size() ? "g" + std::to_string(i) : "w" + std::to_string(i - gpts.size());
  };
  for (const auto& t : detail::subsets(all.size(), d)) {
    std::vector<detail::PolyPoint> base;
    for (auto i : t) base.push_back(all[i]);
    auto side = [&](const detail::PolyPoint& p) {
      auto pts = base;
      pts.push_back(p);
      return detail::orientation(pts);
    };
    std::vector<Polynomial> hg, hw;
    for (const auto& p : gpts) hg.push_back(side(p));
    for (const auto& p : wpts) hw.push_back(side(p));
    Polynomial total;
    for (const auto& p : hw) total = total + p;
    if (total.is_zero()) continue;
    for (int sigma : {1, -1}) {
      if (sys.clauses.size() >= max_conjunctions) throw ScaleLimitExceeded("sign conditions: too many conjunctions");
      Polynomial sg{Scalar(sigma)};
      Conjunction cj;
      for (const auto& p : hg) detail::push_unique(cj.atoms, {sg * p, false});
      for (const auto& p : hw) detail::push_unique(cj.atoms, {-(sg * p), false});
      detail::push_unique(cj.atoms, {-(sg * total), true});
      cj.provenance = "hyperplane";
      for (auto i : t) cj.provenance += " " + label(i);
      cj.provenance += sigma > 0 ? " +" : " -";
      sys.clauses.push_back(std::move(cj));
    }
  }
  return sys;
}

namespace detail {

inline bool kind_member(const AffineMap& g, const SandwichSetup& s, SetKind kind) {
  if (kind == SetKind::Sandwich) return sandwich_member(g, s);
  return complement_member(g, s) == Membership::Member;
}

}  // namespace detail

inline constexpr std::size_t kDefaultWitnessBudget = 10'000;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Two members g1, g2 of Ⓢ(Z, f) (or ©) whose midpoint in chart coordinates
/// is not a member. Trials are seeded individually; the result does not
/// depend on the number of worker threads.
inline std::optional<std::pair<AffineMap, AffineMap>> nonconvexity_witness(const SandwichSetup& s, SetKind kind,
                                                                           std::size_t trial_budget = kDefaultWitnessBudget,
                                                                           std::uint64_t seed = kDefaultSeed) {
  if (trial_budget == 0) throw InvalidArgument("witness search needs a positive trial budget");
  const AffineChart& c = s.x.chart();
  const std::size_t d = c.dim();
  if (kind == SetKind::Complement && image(s.image_f(), c.projection_map()).dim() + s.z.dim() < d) return std::nullopt;

  HomPolytope hom = sandwich_coordinates(s);
  const std::size_t blocks = s.z.dim() + 1;
  std::vector<Vec> xs = detail::chart_points(c, s.x.vertices());

  struct Trial {
    Vec point;
    bool member = false;
  };
  auto run = [&](std::size_t t) -> Trial {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (t + 1));
    Vec pt;
    for (std::size_t j = 0; j < blocks; ++j) {
      Vec y = zeros(d);
      if (rng() % 2 == 0) {
        // a point on a segment between two vertices of X
        const Vec& a = xs[rng() % xs.size()];
        const Vec& b = xs[rng() % xs.size()];
        Scalar l = make_scalar(static_cast<long>(rng() % 17), 16);
        y = a + l * (b - a);
      } else {
        Scalar total = 0;
        for (const auto& v : xs) {
          Scalar wgt = static_cast<long>(rng() % 4);
          y = y + wgt * v;
          total += wgt;
        }
        y = sgn(total) == 0 ? xs[0] : (1 / total) * y;
      }
      pt.insert(pt.end(), y.begin(), y.end());
    }
    AffineMap g = hom.decode(pt);
    for (const auto& v : s.z.vertices())
      if (!s.x.contains(g(v))) return {pt, false};
    return {pt, detail::kind_member(g, s, kind)};
  };

  constexpr std::size_t kBatch = 256, kRecent = 64;
  std::vector<Vec> members;
  for (std::size_t start = 0; start < trial_budget; start += kBatch) {
    const std::size_t n = std::min(kBatch, trial_budget - start);
    auto trials = parallel_map(n, [&](std::size_t i) { return run(start + i); });
    for (const auto& t : trials) {
      if (!t.member) continue;
      const std::size_t from = members.size() > kRecent ? members.size() - kRecent : 0;
      for (std::size_t m = from; m < members.size(); ++m) {
        Vec mid = make_scalar(1, 2) * (members[m] + t.point);
        if (!detail::kind_member(hom.decode(mid), s, kind))
          return std::make_pair(hom.decode(members[m]), hom.decode(t.point));
      }
      members.push_back(t.point);
    }
  }
  return std::nullopt;
}

/// Face-wise affine functions on the vertices of P against global affine ones.
struct RigidityReport {
  std::size_t facewise_space_dim = 0;
  std::size_t affine_space_dim = 0;
  std::size_t defect = 0;
  std::optional<Vec> witness;  // one value per vertex of P

  bool rigid() const { return defect == 0; }
};

inline RigidityReport affine_rigidity(const Polytope& p) {
  if (p.dim() < 2) throw InvalidArgument("affine rigidity needs dim P >= 2");
  const std::size_t n = p.num_vertices(), m = p.ambient_dim();
  Matrix constraints;
  for (const auto& inc : p.facet_incidence()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (inc.test(i)) idx.push_back(i);
    Matrix hom(m + 1, zeros(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
      for (std::size_t r = 0; r < m; ++r) hom[r][c] = p.vertices()[idx[c]][r];
      hom[m][c] = 1;
    }
    for (const auto& lambda : nullspace(hom, idx.size())) {
      Vec row = zeros(n);
      for (std::size_t c = 0; c < idx.size(); ++c) row[idx[c]] = lambda[c];
      constraints.push_back(std::move(row));
    }
  }
  Matrix kernel = nullspace(constraints, n);
  RigidityReport rep;
  rep.facewise_space_dim = kernel.size();
  rep.affine_space_dim = p.dim() + 1;
  rep.defect = rep.facewise_space_dim - rep.affine_space_dim;
  if (rep.defect > 0) {
    Matrix affine;
    affine.push_back(Vec(n, Scalar(1)));
    for (std::size_t r = 0; r < m; ++r) {
      Vec row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = p.vertices()[i][r];
      affine.push_back(std::move(row));
    }
    const std::size_t base = rank(affine);
    for (const auto& k : kernel) {
      Matrix trial = affine;
      trial.push_back(k);
      if (rank(trial) > base) {
        rep.witness = k;
        break;
      }
    }
  }
  return rep;
}

}  // namespace polyfunctor
