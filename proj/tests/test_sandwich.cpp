#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace polyfunctor;
using namespace testutil;

namespace {

Polytope square(long e) { return cube(2, -e, e); }

// A random point of Hom(Z, X) in the sign-condition coordinates: images of
// the basis vertices drawn from half-integer points of X's bounding box.
Vec sample_hom(const SandwichSetup& s, const HomPolytope& hom, Rng& rng) {
  const AffineChart& c = s.x.chart();
  const std::size_t n = s.x.ambient_dim();
  Vec lo = s.x.vertices().front(), hi = lo;
  for (const auto& v : s.x.vertices())
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (v[i] > hi[i]) hi[i] = v[i];
    }
  for (;;) {
    Vec pt;
    for (std::size_t j = 0; j <= s.z.dim(); ++j) {
      Vec y;
      do {
        y = Vec(n);
        for (std::size_t i = 0; i < n; ++i) {
          long a = lo[i].get_num().get_si() * 2, b = hi[i].get_num().get_si() * 2;
          y[i] = Q(rng.integer(a, b), 2);
        }
      } while (!s.x.contains(y));
      Vec cy = c.project(y);
      pt.insert(pt.end(), cy.begin(), cy.end());
    }
    AffineMap g = hom.decode(pt);
    bool inside = true;
    for (const auto& v : s.z.vertices()) inside = inside && s.x.contains(g(v));
    if (inside) return pt;
  }
}

// Twice the signed area of (a, b, c).
Scalar cross(const Vec& a, const Vec& b, const Vec& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

bool in_triangle(const Vec& p, const Vec& a, const Vec& b, const Vec& c) {
  int s1 = sgn(cross(a, b, p)), s2 = sgn(cross(b, c, p)), s3 = sgn(cross(c, a, p));
  return !((s1 < 0 || s2 < 0 || s3 < 0) && (s1 > 0 || s2 > 0 || s3 > 0));
}

// Face-wise affine functions counted through one affine function per facet.
std::size_t facewise_dim_by_facet_functions(const Polytope& p) {
  const std::size_t n = p.num_vertices(), m = p.ambient_dim(), nf = p.num_facets();
  const std::size_t cols = n + nf * (m + 1);
  Matrix rows;
  for (std::size_t f = 0; f < nf; ++f)
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.facet_incidence()[f].test(i)) continue;
      Vec r = zeros(cols);
      r[i] = 1;
      for (std::size_t k = 0; k < m; ++k) r[n + f * (m + 1) + k] = -p.vertices()[i][k];
      r[n + f * (m + 1) + m] = -1;
      rows.push_back(std::move(r));
    }
  std::size_t sol = cols - rank(rows);
  return sol - nf * (m + 1 - p.dim());
}

AffineMap random_recoordinatization(Rng& rng, std::size_t d) {
  for (;;) {
    Matrix a(d, zeros(d));
    for (auto& row : a)
      for (auto& x : row) x = Q(rng.integer(-3, 3));
    if (rank(a) == d) return AffineMap(a, rng.point(d, 4, 1), d);
  }
}

}  // namespace

TEST(SandwichMember, Basics) {
  SandwichSetup s = remark85_setup();
  Polytope sq10 = square(10);
  SandwichSetup onto{sq10, s.y, s.f, sq10};
  EXPECT_TRUE(sandwich_member(AffineMap::identity(2), onto));
  EXPECT_FALSE(sandwich_member(AffineMap::constant(2, V({0, 0})), s));
  // a tilted triangle around the unit square
  AffineMap g({{Q(9), Q(-2)}, {Q(3), Q(8)}}, V({-4, -3}), 2);
  Vec a = g(V({0, 0})), b = g(V({1, 0})), c = g(V({0, 1}));
  bool oracle = true;
  for (const auto& w : s.y.vertices()) oracle = oracle && in_triangle(w, a, b, c);
  ASSERT_TRUE(oracle);
  EXPECT_TRUE(sandwich_member(g, s));
  EXPECT_THROW(sandwich_member(AffineMap::constant(2, V({20, 0})), s), InvalidArgument);
}

TEST(ComplementMember, FullDimensionalImage) {
  SandwichSetup s = remark85_setup();
  // far corner triangle
  AffineMap far({{Q(2), Q(0)}, {Q(0), Q(2)}}, V({5, 5}), 2);
  EXPECT_EQ(complement_member(far, s), Membership::Member);
  // triangle inside the boundary edge x = 1
  AffineMap edge({{Q(0), Q(0)}, {Q(1), Q(1)}}, V({1, -1}), 2);
  EXPECT_EQ(complement_member(edge, s), Membership::Member);
  // touching the boundary from outside
  AffineMap touch({{Q(3), Q(0)}, {Q(0), Q(3)}}, V({1, 1}), 2);
  EXPECT_EQ(complement_member(touch, s), Membership::Member);
  AffineMap big({{Q(9), Q(-2)}, {Q(3), Q(8)}}, V({-4, -3}), 2);
  ASSERT_TRUE(sandwich_member(big, s));
  EXPECT_EQ(complement_member(big, s), Membership::NonMember);
}

TEST(ComplementMember, LowerDimensionalImage) {
  Polytope sq = square(10);
  Polytope bar = hull({V({-1}), V({1})});
  AffineMap horiz({{Q(1)}, {Q(0)}}, V({0, 0}), 1);
  SandwichSetup s{segment(), bar, horiz, sq};
  AffineMap vertical({{Q(0)}, {Q(4)}}, V({0, -2}), 1);
  EXPECT_EQ(complement_member(vertical, s), Membership::NonMember);
  AffineMap at_end({{Q(0)}, {Q(4)}}, V({1, -2}), 1);
  EXPECT_EQ(complement_member(at_end, s), Membership::ClosureUndecided);
  AffineMap overlap({{Q(4)}, {Q(0)}}, V({-2, 0}), 1);
  EXPECT_EQ(complement_member(overlap, s), Membership::ClosureUndecided);
  AffineMap apart({{Q(0)}, {Q(4)}}, V({3, -2}), 1);
  EXPECT_EQ(complement_member(apart, s), Membership::Member);
}

TEST(SignConditions, LinearOnASegment) {
  SandwichSetup s{simplex(2), segment(4, 6), AffineMap::identity(1), segment(0, 10)};
  HomPolytope hom = sandwich_coordinates(s);
  for (SetKind kind : {SetKind::Sandwich, SetKind::Complement}) {
    SignConditionSystem sys = emit_sign_conditions(s, kind);
    EXPECT_EQ(sys.max_degree(), 1u);
    Rng rng(101);
    int members = 0;
    for (int i = 0; i < 200; ++i) {
      Vec pt = sample_hom(s, hom, rng);
      AffineMap g = hom.decode(pt);
      bool oracle = kind == SetKind::Sandwich ? sandwich_member(g, s) : complement_member(g, s) == Membership::Member;
      members += oracle;
      ASSERT_EQ(sys.evaluate(pt), oracle) << to_string(kind) << " sample " << i;
    }
    EXPECT_GT(members, 0);
    EXPECT_LT(members, 200);
  }
}

TEST(SignConditions, NestedSquaresAreNonlinear) {
  SandwichSetup s = remark85_setup();
  HomPolytope hom = sandwich_coordinates(s);
  for (SetKind kind : {SetKind::Sandwich, SetKind::Complement}) {
    SignConditionSystem sys = emit_sign_conditions(s, kind);
    EXPECT_GE(sys.max_degree(), 2u);
    EXPECT_LE(sys.max_degree(), 3u);
    Rng rng(103);
    int members = 0;
    for (int i = 0; i < 200; ++i) {
      Vec pt = sample_hom(s, hom, rng);
      AffineMap g = hom.decode(pt);
      bool oracle = kind == SetKind::Sandwich ? sandwich_member(g, s) : complement_member(g, s) == Membership::Member;
      members += oracle;
      ASSERT_EQ(sys.evaluate(pt), oracle) << to_string(kind) << " sample " << i;
    }
    EXPECT_GT(members, 0);
    EXPECT_LT(members, 200);
  }
}

TEST(SignConditions, DegenerateAndLimits) {
  // a segment cannot cover a square: no simplices, no clauses
  Polytope sq = square(10);
  SandwichSetup seg{segment(), square(1), AffineMap::identity(2), sq};
  SignConditionSystem sys = emit_sign_conditions(seg, SetKind::Sandwich);
  EXPECT_TRUE(sys.clauses.empty());
  EXPECT_FALSE(sys.evaluate(zeros(sys.num_variables)));

  std::vector<Vec> ring;
  for (long i = 0; i < 12; ++i) ring.push_back(V({i, i * i}));
  SandwichSetup many{hull(ring), square(1), AffineMap::identity(2), sq};
  EXPECT_THROW(emit_sign_conditions(many, SetKind::Sandwich), ScaleLimitExceeded);
  SandwichSetup high{segment(), cube(4, -1, 1), AffineMap::identity(4), cube(4, -2, 2)};
  EXPECT_THROW(emit_sign_conditions(high, SetKind::Complement), ScaleLimitExceeded);
  SandwichSetup flat{segment(), hull({V({-1, 0}), V({1, 0})}), AffineMap::identity(2), sq};
  EXPECT_THROW(emit_sign_conditions(flat, SetKind::Sandwich), InvalidArgument);
  SandwichSetup tiny = remark85_setup();
  EXPECT_THROW(emit_sign_conditions(tiny, SetKind::Complement, 3), ScaleLimitExceeded);
}

TEST(SandwichProperties, DisjointWhenImageIsFullDimensional) {
  SandwichSetup s = remark85_setup();
  HomPolytope hom = sandwich_coordinates(s);
  Rng rng(107);
  int both = 0, sandwiched = 0;
  for (int i = 0; i < 500; ++i) {
    AffineMap g = hom.decode(sample_hom(s, hom, rng));
    bool in_s = sandwich_member(g, s);
    sandwiched += in_s;
    both += in_s && complement_member(g, s) == Membership::Member;
  }
  EXPECT_EQ(both, 0);
  EXPECT_GT(sandwiched, 0);
}

TEST(SandwichProperties, SmallImagesAreAlwaysComplemented) {
  // a point image and segment maps: dim f(Y) + dim Z = 1 < 2
  Polytope sq = square(10);
  SandwichSetup s{segment(), Polytope::point(V({0, 0})), AffineMap::identity(2), sq};
  HomPolytope hom = sandwich_coordinates(s);
  Rng rng(109);
  int hits = 0;
  for (int i = 0; i < 500; ++i) {
    Vec pt = sample_hom(s, hom, rng);
    if (i % 2 == 0) {  // force the segment through the origin
      Vec a(pt.begin(), pt.begin() + 2);
      Vec b = -1 * a;
      pt = {a[0], a[1], b[0], b[1]};
    }
    AffineMap g = hom.decode(pt);
    ASSERT_EQ(complement_member(g, s), Membership::Member) << "sample " << i;
    Vec a = g(V({0})), b = g(V({1}));
    if (sgn(cross(a, b, V({0, 0}))) != 0) continue;
    ++hits;
    // an arbitrarily small move toward the centre plus a shift avoids the origin
    bool avoided = false;
    for (long k = 1; k <= 4 && !avoided; ++k) {
      Vec shift = {Q(k, 1000), Q(k * k - 3, 1000)};
      Vec a2 = make_scalar(999, 1000) * a + shift, b2 = make_scalar(999, 1000) * b + shift;
      avoided = sgn(cross(a2, b2, V({0, 0}))) != 0 && sq.contains(a2) && sq.contains(b2);
    }
    EXPECT_TRUE(avoided) << "sample " << i;
  }
  EXPECT_GT(hits, 100);
  SignConditionSystem sys = emit_sign_conditions(s, SetKind::Complement);
  EXPECT_TRUE(sys.evaluate(zeros(sys.num_variables)));
  EXPECT_FALSE(nonconvexity_witness(s, SetKind::Complement, 100).has_value());
}

TEST(Witness, NestedSquares) {
  SandwichSetup s = remark85_setup();
  HomPolytope hom = sandwich_coordinates(s);
  for (SetKind kind : {SetKind::Sandwich, SetKind::Complement}) {
    auto w = nonconvexity_witness(s, kind, 10'000, 7);
    ASSERT_TRUE(w.has_value()) << to_string(kind);
    auto member = [&](const AffineMap& g) {
      return kind == SetKind::Sandwich ? sandwich_member(g, s) : complement_member(g, s) == Membership::Member;
    };
    EXPECT_TRUE(member(w->first));
    EXPECT_TRUE(member(w->second));
    Vec mid = make_scalar(1, 2) * (hom.encode(w->first) + hom.encode(w->second));
    EXPECT_FALSE(member(hom.decode(mid)));
    auto again = nonconvexity_witness(s, kind, 10'000, 7);
    ASSERT_TRUE(again.has_value());
    EXPECT_EQ(hom.encode(again->first), hom.encode(w->first));
    EXPECT_EQ(hom.encode(again->second), hom.encode(w->second));
  }
}

TEST(Witness, PointImageWithSegments) {
  // segments through a fixed point do not form a convex family of maps
  Polytope sq = square(10);
  SandwichSetup s{segment(), Polytope::point(V({1, 1})), AffineMap::identity(2), sq};
  auto w = nonconvexity_witness(s, SetKind::Sandwich, 10'000, 11);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(sandwich_member(w->first, s));
  EXPECT_TRUE(sandwich_member(w->second, s));
}

TEST(Rigidity, SimplePolytopesAreRigid) {
  Polytope prism = hull({V({0, 0, 0}), V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1}), V({1, 0, 1}), V({0, 1, 1})});
  Polytope dodeca = polar(rational_icosahedron());
  Polytope anti = hom_polytope(integer_pentagon(), segment()).underlying();
  EXPECT_EQ(dodeca.num_vertices(), 20u);
  EXPECT_EQ(dodeca.num_facets(), 12u);
  EXPECT_EQ(anti.num_facets(), 10u);
  for (const Polytope* p : {&prism, &dodeca, &anti}) {
    RigidityReport r = affine_rigidity(*p);
    EXPECT_EQ(r.defect, 0u);
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_EQ(r.facewise_space_dim, facewise_dim_by_facet_functions(*p));
  }
  Polytope c3 = cube(3);
  RigidityReport rc = affine_rigidity(c3);
  EXPECT_EQ(rc.facewise_space_dim, 4u);
  EXPECT_EQ(rc.affine_space_dim, 4u);
  EXPECT_TRUE(rc.rigid());
}

TEST(Rigidity, SimplicialPolytopesAreNot) {
  Polytope octa = cross_polytope(3);
  RigidityReport r = affine_rigidity(octa);
  EXPECT_EQ(r.facewise_space_dim, 6u);
  EXPECT_EQ(r.defect, 2u);
  ASSERT_TRUE(r.witness.has_value());

  Polytope ico = rational_icosahedron();
  EXPECT_EQ(ico.num_vertices(), 12u);
  EXPECT_EQ(ico.num_facets(), 20u);
  EXPECT_EQ(edges(ico).size(), 30u);
  RigidityReport ri = affine_rigidity(ico);
  EXPECT_EQ(ri.defect, 8u);
  EXPECT_EQ(ri.facewise_space_dim, facewise_dim_by_facet_functions(ico));
  ASSERT_TRUE(ri.witness.has_value());
  // the witness is not affine: least squares fit fails exactly
  Matrix aff;
  for (const auto& v : ico.vertices()) aff.push_back({v[0], v[1], v[2], Q(1)});
  EXPECT_FALSE(solve(aff, *ri.witness, 4).has_value());

  // bipyramid over a square: two apexes, triangles only
  Polytope bip = bipyramid(square(1));
  EXPECT_GT(affine_rigidity(bip).defect, 0u);
  EXPECT_THROW(affine_rigidity(cube(1)), InvalidArgument);
}

TEST(Rigidity, InvariantUnderRecoordinatization) {
  Rng rng(113);
  std::vector<Polytope> ps = {cube(3), cross_polytope(3), rational_icosahedron(), rng.polytope(3, 9, 4)};
  for (const auto& p : ps) {
    std::size_t d = affine_rigidity(p).defect;
    for (int t = 0; t < 3; ++t) {
      Polytope q = image(p, random_recoordinatization(rng, 3));
      EXPECT_EQ(affine_rigidity(q).defect, d);
    }
  }
}
