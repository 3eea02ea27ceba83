#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polyfunctor/errors.hpp"
#include "polyfunctor/fiber.hpp"
#include "polyfunctor/homtensor.hpp"
#include "polyfunctor/lp.hpp"
#include "polyfunctor/parallel.hpp"
#include "polyfunctor/polyops.hpp"
#include "polyfunctor/polytope.hpp"

namespace polyfunctor {

/// Affine maps g: Z → X with f∘g constant, and the evaluation g ↦ f(g(Z)).
struct KernelEvaluation {
  HomPolytope coords;        // Hom(Z, X) with chart domain, ambient target
  Polytope kernel_polytope;  // in the coordinates of `coords`
  AffineMap ev_map;
  Polytope image;            // f(X)
};

inline KernelEvaluation ker_star(const AffineMap& f, const Polytope& x, const Polytope& z) {
  if (f.domain_dim() != x.ambient_dim()) throw DimensionMismatch("ker_star: map domain differs from X");
  HomPolytope hz(z, x, {DomainCoords::Chart, TargetCoords::Ambient});
  HRep h = hz.system().h;
  const std::size_t m = x.ambient_dim(), k = z.dim(), n = hz.coord_dim();
  for (std::size_t j = 1; j <= k; ++j)
    for (std::size_t r = 0; r < f.codomain_dim(); ++r) {
      Vec row = zeros(n);
      for (std::size_t i = 0; i < m; ++i) {
        row[j * m + i] = f.matrix()[r][i];
        row[i] -= f.matrix()[r][i];
      }
      if (!is_zero(row)) h.equations.push_back({std::move(row), 0});
    }
  Matrix ev(f.codomain_dim(), zeros(n));
  for (std::size_t r = 0; r < f.codomain_dim(); ++r)
    for (std::size_t i = 0; i < m; ++i) ev[r][i] = f.matrix()[r][i];
  return {hz, Polytope::from_inequalities(h), AffineMap(std::move(ev), f.translation(), n), image(x, f)};
}

/// Fiber polytope of the evaluation map on the kernel polytope.
inline Polytope sigma_hom_ev(const AffineMap& f, const Polytope& x, const Polytope& z) {
  KernelEvaluation k = ker_star(f, x, z);
  return fiber_polytope(k.ev_map, k.kernel_polytope);
}

struct Theorem62Report {
  Polytope sigma_hom_ev;  // ΣHom(Z, f)^ev
  Polytope hom_sigma;     // Hom(Z, Σf)
  std::optional<AffineMap> equivalence;
  bool holds() const { return equivalence.has_value(); }
};

inline Theorem62Report theorem62_report(const AffineMap& f, const Polytope& x, const Polytope& z,
                                        std::size_t budget = kDefaultSearchBudget) {
  auto sides = parallel_map(2, [&](std::size_t i) {
    return i == 0 ? sigma_hom_ev(f, x, z) : hom_polytope(z, fiber_polytope(f, x)).underlying();
  });
  Theorem62Report rep{sides[0], sides[1], std::nullopt};
  rep.equivalence = affinely_equivalent(rep.sigma_hom_ev, rep.hom_sigma, budget);
  return rep;
}

inline bool theorem62_check(const AffineMap& f, const Polytope& x, const Polytope& z,
                            std::size_t budget = kDefaultSearchBudget) {
  return theorem62_report(f, x, z, budget).holds();
}

/// Projection of Aff(Y) along the directions of Aff(f(X)), and its image.
struct Cokernel {
  Polytope cokernel;
  AffineMap pi;  // ambient of Y → R^(dim Y - dim f(X))
};

inline Cokernel coker_object(const AffineMap& f, const Polytope& x, const Polytope& y) {
  Polytope im = image(x, f);
  if (im.ambient_dim() != y.ambient_dim()) throw DimensionMismatch("coker_object: f does not land in Y's space");
  for (const auto& v : im.vertices())
    if (!y.contains(v)) throw InvalidArgument("coker_object: f(X) is not contained in Y");
  const AffineChart& cy = y.chart();
  const std::size_t k = cy.dim();
  // directions of Aff(f(X)) in the chart coordinates of Y
  Matrix dirs;
  for (const auto& b : im.chart().basis) dirs.push_back(cy.project(b));
  Rref r = rref(dirs, k);
  std::vector<bool> pivot(k, false);
  for (auto p : r.pivots) pivot[p] = true;
  Matrix lin;
  for (std::size_t s = 0; s < k; ++s) {
    if (pivot[s]) continue;
    Vec row = unit_vector(k, s);
    for (std::size_t q = 0; q < r.pivots.size(); ++q) row[r.pivots[q]] -= r.rows[q][s];
    lin.push_back(std::move(row));
  }
  AffineMap pi = AffineMap(lin, zeros(lin.size()), k).after(cy.projection_map());
  return {image(y, pi), pi};
}

/// Whether π: Y → coker has an affine section, with a witness σ when it does.
inline std::pair<bool, std::optional<AffineMap>> coker_representable(const AffineMap& f, const Polytope& x,
                                                                     const Polytope& y) {
  Cokernel c = coker_object(f, x, y);
  HomPolytope hs(c.cokernel, y, {DomainCoords::Chart, TargetCoords::Ambient});
  HRep h = hs.system().h;
  const std::size_t m = y.ambient_dim();
  auto basis = hs.basis_chart();
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t r = 0; r < c.pi.codomain_dim(); ++r) {
      Vec row = zeros(hs.coord_dim());
      for (std::size_t i = 0; i < m; ++i) row[j * m + i] = c.pi.matrix()[r][i];
      h.equations.push_back({std::move(row), basis[j][r] - c.pi.translation()[r]});
    }
  LpResult res = lp_solve(zeros(h.ambient_dim), h, Sense::Maximize);
  if (!res.feasible()) return {false, std::nullopt};
  return {true, hs.decode(res.point)};
}

}  // namespace polyfunctor
