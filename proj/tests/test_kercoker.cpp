#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace polyfunctor;
using namespace testutil;

namespace {

// dim f(X) from the rank of f on the edge directions of X.
std::size_t image_rank(const AffineMap& f, const Polytope& x) {
  Matrix m;
  const auto& vs = x.vertices();
  for (std::size_t i = 1; i < vs.size(); ++i) m.push_back(mat_vec(f.matrix(), vs[i] - vs[0]));
  return rank(m);
}

}  // namespace

TEST(KerStar, IdentityGivesConstantMaps) {
  Polytope tri = simplex(2);
  KernelEvaluation k = ker_star(AffineMap::identity(2), tri, segment());
  EXPECT_EQ(k.kernel_polytope.dim(), 2u);
  for (const auto& g : k.kernel_polytope.vertices()) {
    AffineMap m = k.coords.decode(g);
    EXPECT_EQ(m(V({0})), m(V({1})));
  }
}

TEST(KerStar, CubeOntoSquareWithSegment) {
  KernelEvaluation k = ker_star(AffineMap::coordinate_projection(3, {0, 1}), cube(3), segment());
  EXPECT_EQ(k.kernel_polytope.dim(), 4u);
  EXPECT_EQ(image(k.kernel_polytope, k.ev_map), cube(2));
}

TEST(KerStar, PointImageIsWholeHom) {
  Polytope sq = cube(2);
  AffineMap f = AffineMap::constant(2, V({7}));
  KernelEvaluation k = ker_star(f, sq, simplex(2));
  HomPolytope h(simplex(2), sq, {DomainCoords::Chart, TargetCoords::Ambient});
  EXPECT_EQ(k.kernel_polytope, h.underlying());
}

TEST(KerStar, DimensionFormulaAndEvaluationImage) {
  Rng rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t dx = 1 + static_cast<std::size_t>(trial % 3);
    std::size_t dz = static_cast<std::size_t>(trial / 3 % 3);
    Polytope x = rng.polytope(dx, dx + 2, 3);
    Polytope z = dz == 0 ? Polytope::point(V({1})) : rng.polytope(dz, dz + 2, 2);
    std::size_t rows = 1 + static_cast<std::size_t>(trial % 2);
    Matrix m;
    for (std::size_t r = 0; r < rows; ++r) m.push_back(trial % 5 == 0 ? zeros(dx) : rng.point(dx, 2, 1));
    AffineMap f(m, rng.point(rows, 2, 1), dx);
    KernelEvaluation k = ker_star(f, x, z);
    std::size_t im = image_rank(f, x);
    EXPECT_EQ(k.kernel_polytope.dim(), (z.dim() + 1) * (dx - im) + im) << "trial " << trial;
    EXPECT_EQ(image(k.kernel_polytope, k.ev_map), image(x, f)) << "trial " << trial;
    for (const auto& g : k.kernel_polytope.vertices()) {
      AffineMap fg = f.after(k.coords.decode(g));
      for (const auto& v : z.vertices()) EXPECT_EQ(fg(v), k.ev_map(g));
    }
  }
}

TEST(KerStar, PrecompositionIsNatural) {
  AffineMap f = AffineMap::coordinate_projection(3, {0, 1});
  Polytope x = cube(3);
  Polytope z = simplex(2), zp = segment(0, 2);
  AffineMap h({{Q(1, 2)}, {Q(0)}}, V({0, 0}), 1);  // [0,2] onto an edge of Z
  KernelEvaluation kz = ker_star(f, x, z), kzp = ker_star(f, x, zp);
  for (const auto& g : kz.kernel_polytope.vertices()) {
    AffineMap gh = kz.coords.decode(g).after(h);
    Vec y = kzp.coords.encode(gh);
    EXPECT_TRUE(kzp.kernel_polytope.contains(y));
    EXPECT_EQ(kzp.ev_map(y), kz.ev_map(g));
  }
}

TEST(SigmaHomEv, ReducesToFiberForPointAndInjective) {
  AffineMap f = AffineMap::coordinate_projection(2, {0});
  Polytope sq = cube(2);
  Polytope s = sigma_hom_ev(f, sq, Polytope::point(V({0})));
  EXPECT_TRUE(affinely_equivalent(s, segment()).has_value());
  EXPECT_EQ(sigma_hom_ev(AffineMap::identity(2), sq, segment()).dim(), 0u);
  EXPECT_EQ(sigma_hom_ev(AffineMap::identity(2), sq, simplex(2)).dim(), 0u);
}

TEST(Theorem62, AllInstances) {
  for (const auto& [inst, z] : theorem62_instances()) {
    Theorem62Report rep = theorem62_report(inst.f, inst.x, z);
    EXPECT_TRUE(rep.holds()) << inst.name;
    EXPECT_EQ(rep.sigma_hom_ev.dim(), (z.dim() + 1) * codimension(inst.f, inst.x)) << inst.name;
  }
}

TEST(Cokernel, Objects) {
  Polytope sq = cube(2);
  AffineMap edge = AffineMap({V({1}), V({0})}, V({0, 0}), 1);  // [0,1] onto the bottom edge
  Cokernel c = coker_object(edge, segment(), sq);
  EXPECT_EQ(c.cokernel.dim(), 1u);
  EXPECT_EQ(image(image(segment(), edge), c.pi).num_vertices(), 1u);
  Cokernel pt = coker_object(AffineMap::constant(1, {Q(1, 2), Q(0)}), segment(), sq);
  EXPECT_TRUE(affinely_equivalent(pt.cokernel, sq).has_value());
  Cokernel full = coker_object(AffineMap::identity(2), sq, sq);
  EXPECT_EQ(full.cokernel.dim(), 0u);
  EXPECT_THROW(coker_object(AffineMap::constant(1, V({5, 5})), segment(), sq), InvalidArgument);
}

TEST(Cokernel, ProductIsRepresentable) {
  Polytope prism = hull({V({0, 0, 0}), V({2, 0, 0}), V({0, 2, 0}), V({0, 0, 1}), V({2, 0, 1}), V({0, 2, 1})});
  AffineMap fiber({V({0}), V({0}), V({1})}, {Q(1, 2), Q(1, 2), Q(0)}, 1);
  auto [ok, sigma] = coker_representable(fiber, segment(), prism);
  ASSERT_TRUE(ok);
  ASSERT_TRUE(sigma.has_value());
  Cokernel c = coker_object(fiber, segment(), prism);
  for (const auto& v : c.cokernel.vertices()) {
    EXPECT_TRUE(prism.contains((*sigma)(v)));
    EXPECT_EQ(c.pi((*sigma)(v)), v);
  }
}

TEST(Cokernel, TetrahedronOverQuadrangleIsNotRepresentable) {
  Polytope tet = simplex(3);
  // segment joining the midpoints of the opposite edges [0, e1] and [e2, e3]
  AffineMap mid({{Q(-1, 2)}, {Q(1, 2)}, {Q(1, 2)}}, {Q(1, 2), Q(0), Q(0)}, 1);
  Polytope seg01 = hull({V({0}), V({1})});
  Cokernel c = coker_object(mid, seg01, tet);
  EXPECT_EQ(c.cokernel.num_vertices(), 4u);
  EXPECT_EQ(c.cokernel.dim(), 2u);
  EXPECT_FALSE(coker_representable(mid, seg01, tet).first);
}

TEST(Cokernel, OneDimensionalCokernelsAlwaysLift) {
  Rng rng(79);
  for (int trial = 0; trial < 12; ++trial) {
    Polytope y = rng.polytope(2 + static_cast<std::size_t>(trial % 2), 7, 3);
    // f(X) a segment between two interior-ish points when Y is a polygon, a triangle face span in 3D
    const auto& vs = y.vertices();
    std::size_t d = y.ambient_dim();
    std::vector<Vec> pts;
    for (std::size_t i = 0; i + 1 < d; ++i) pts.push_back(Q(1, 2) * (vs[i] + vs[i + 1]));
    pts.push_back(centroid(y));
    Polytope x = Polytope::from_vertices(d, pts);
    if (x.dim() + 1 != d) continue;
    Cokernel c = coker_object(AffineMap::identity(d), x, y);
    ASSERT_EQ(c.cokernel.dim(), 1u);
    auto [ok, sigma] = coker_representable(AffineMap::identity(d), x, y);
    EXPECT_TRUE(ok) << "trial " << trial;
  }
}

TEST(Cokernel, SecondFailureInstance) {
  Polytope x = segment(), z = segment();
  Cokernel c = coker_object(AffineMap::identity(1), x, x);
  EXPECT_EQ(c.cokernel.dim(), 0u);
  EXPECT_TRUE(affinely_equivalent(hom_polytope(c.cokernel, z).underlying(), z).has_value());
  // Hom(f, Z) for f = 1_X is the identity of Hom(X, Z); its fiber is a point.
  Polytope hxz = hom_polytope(x, z).underlying();
  EXPECT_EQ(fiber_polytope(AffineMap::identity(hxz.ambient_dim()), hxz).dim(), 0u);
}
