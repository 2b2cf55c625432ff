#include <random>

#include "gtest/gtest.h"
#include "sphdescent/cone.hpp"

namespace sphdescent {
namespace {

RatVector rv(std::initializer_list<int> v) {
  RatVector out;
  for (int x : v) out.push_back(Rational(x));
  return out;
}

TEST(ConeFromGenerators, Quadrant) {
  auto c = RationalCone::from_generators(2, {rv({1, 0}), rv({0, 1})});
  EXPECT_EQ(c.rays(), (std::vector<IntVector>{{0, 1}, {1, 0}}));
  EXPECT_EQ(c.inequalities(), (std::vector<IntVector>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(c.equations().empty());
  EXPECT_TRUE(c.is_strictly_convex());
  EXPECT_EQ(c.dimension(), 2u);
}

TEST(ConeFromGenerators, HalfPlane) {
  auto c = RationalCone::from_generators(2, {rv({1, 0}), rv({-1, 0}), rv({0, 1})});
  EXPECT_EQ(c.lineality(), (std::vector<IntVector>{{1, 0}}));
  EXPECT_EQ(c.rays(), (std::vector<IntVector>{{0, 1}}));
  EXPECT_EQ(c.inequalities(), (std::vector<IntVector>{{0, 1}}));
  EXPECT_FALSE(c.is_strictly_convex());
}

TEST(ConeFromGenerators, ZeroCone) {
  auto c = RationalCone::from_generators(3, std::vector<RatVector>{});
  EXPECT_TRUE(c.is_zero());
  EXPECT_EQ(c.equations().size(), 3u);
  EXPECT_EQ(c.dimension(), 0u);
  EXPECT_TRUE(c.contains(rv({0, 0, 0})));
  EXPECT_FALSE(c.contains(rv({1, 0, 0})));
  EXPECT_TRUE(c.in_relative_interior(rv({0, 0, 0})));
  EXPECT_THROW(RationalCone::from_generators(2, {rv({1, 0, 0})}), DimensionError);
}

TEST(ConeFromGenerators, RedundantGeneratorsAndScaling) {
  auto a = RationalCone::from_generators(2, {rv({1, 0}), rv({0, 1})});
  auto b = RationalCone::from_generators(2, {rv({3, 0}), rv({1, 1}), rv({0, 2}), rv({2, 5})});
  EXPECT_EQ(a, b);
  RatVector half{Rational(1, 2), Rational(0)};
  EXPECT_EQ(RationalCone::from_generators(2, {half, rv({0, 1})}), a);
}

TEST(ConeFromInequalities, MatchesGenerators) {
  auto a = RationalCone::from_inequalities(3, {rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
  auto b = RationalCone::from_generators(3, {rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.inequalities(), b.inequalities());
  auto line = RationalCone::from_inequalities(2, {}, {rv({1, -1})});
  EXPECT_EQ(line.lineality(), (std::vector<IntVector>{{1, 1}}));
  EXPECT_TRUE(RationalCone::whole_space(2).contains(rv({-5, 7})));
}

TEST(ConeFromGenerators, LowerDimensionalCanonicalForm) {
  // a 2-dim cone in Q^3; facet normals are projected into its span
  auto c = RationalCone::from_generators(3, {rv({1, 0, 0}), rv({0, 1, 0})});
  EXPECT_EQ(c.equations(), (std::vector<IntVector>{{0, 0, 1}}));
  EXPECT_EQ(c.inequalities(), (std::vector<IntVector>{{0, 1, 0}, {1, 0, 0}}));
  EXPECT_EQ(c.dimension(), 2u);
}

// Independent membership oracle for pointed cones: x is in cone(rays) iff it is a
// nonnegative combination of some linearly independent subset of rays.
bool in_hull_by_subsets(const std::vector<IntVector>& rays, const RatVector& x) {
  const std::size_t n = rays.size();
  if (is_zero(x)) return true;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    RatMatrix b(0, x.size());
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) b.append_row(to_rational(rays[i]));
    if (rank(b) != b.rows()) continue;
    auto c = solve_in_row_span(b, x);
    if (!c) continue;
    bool nonneg = true;
    for (const auto& q : *c) nonneg = nonneg && q >= 0;
    if (nonneg) return true;
  }
  return false;
}

TEST(DoubleDescription, RandomConsistency) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coord(-3, 3);
  int tested = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + trial % 3;
    std::vector<RatVector> gens;
    for (std::size_t k = 0; k < d + 2; ++k) {
      RatVector g(d);
      for (auto& x : g) x = coord(rng);
      g[0] = abs(g[0]) + 1;  // keep everything in the open half-space x0 > 0
      gens.push_back(g);
    }
    auto c = RationalCone::from_generators(d, gens);
    ASSERT_TRUE(c.is_strictly_convex());
    for (const auto& r : c.rays())
      for (const auto& a : c.inequalities()) ASSERT_GE(dot(a, r), 0);
    for (int s = 0; s < 30; ++s) {
      RatVector x(d);
      for (auto& q : x) q = coord(rng);
      ASSERT_EQ(c.contains(x), in_hull_by_subsets(c.rays(), x)) << format_vector(x);
      ++tested;
    }
  }
  EXPECT_GT(tested, 1000);
}

TEST(Faces, SimplicialAndSquare) {
  auto q = RationalCone::from_generators(2, {rv({1, 0}), rv({0, 1})});
  auto f = q.faces();
  EXPECT_EQ(f.size(), 4u);
  EXPECT_EQ(f.front(), q);
  EXPECT_TRUE(f.back().is_zero());
  EXPECT_EQ(RationalCone::zero(2).faces().size(), 1u);

  auto sq = RationalCone::from_generators(3, {rv({1, 1, 1}), rv({1, -1, 1}), rv({-1, 1, 1}), rv({-1, -1, 1})});
  auto sf = sq.faces();
  EXPECT_EQ(sf.size(), 10u);
  for (const auto& face : sf) {
    EXPECT_TRUE(face.is_face_of(sq));
    for (const auto& sub : face.faces()) EXPECT_TRUE(sub.is_face_of(sq));  // transitivity
  }
  // a non-face subcone
  EXPECT_FALSE(RationalCone::from_generators(3, {rv({1, 1, 1}), rv({-1, -1, 1})}).is_face_of(sq));

  auto half = RationalCone::from_generators(2, {rv({1, 0}), rv({-1, 0}), rv({0, 1})});
  EXPECT_EQ(half.faces().size(), 2u);  // itself and its lineality line
}

TEST(Image, Rotation) {
  auto q = RationalCone::from_generators(2, {rv({1, 0}), rv({1, 1})});
  IntMatrix swap{{0, 1}, {1, 0}};
  EXPECT_EQ(q.image(swap), RationalCone::from_generators(2, {rv({0, 1}), rv({1, 1})}));
}

TEST(Feasibility, StrictAndWeak) {
  // x > 0, y > 0, x + y <= 0 is infeasible
  EXPECT_FALSE(find_point(2, {}, {IntVector{-1, -1}}, {IntVector{1, 0}, IntVector{0, 1}}).feasible);
  auto r = find_point(2, {}, {IntVector{-1, 2}}, {IntVector{1, 0}});
  ASSERT_TRUE(r.feasible);
  EXPECT_GT(r.witness[0], 0);
  EXPECT_GE(-r.witness[0] + 2 * r.witness[1], 0);
  EXPECT_TRUE(find_point(2, {}, {}, {}).feasible);

  auto ray = RationalCone::from_generators(2, {rv({1, 1})});
  auto quadrant = RationalCone::from_generators(2, {rv({1, 0}), rv({0, 1})});
  EXPECT_TRUE(relative_interior_meets(ray, quadrant).feasible);
  auto axis = RationalCone::from_generators(2, {rv({1, 0})});
  auto upper = RationalCone::from_generators(2, {rv({1, 1}), rv({0, 1})});
  EXPECT_FALSE(relative_interior_meets(quadrant, axis).feasible);
  EXPECT_TRUE(relative_interior_meets(RationalCone::zero(2), axis).feasible);
  EXPECT_FALSE(relative_interiors_meet_in(axis, upper, quadrant).feasible);
}

}  // namespace
}  // namespace sphdescent
