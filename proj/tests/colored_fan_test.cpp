#include <random>

#include "gtest/gtest.h"
#include "sphdescent/colored_fan.hpp"

namespace sphdescent {
namespace {

RatVector rv(std::initializer_list<int> v) {
  RatVector out;
  for (int x : v) out.push_back(Rational(x));
  return out;
}

RationalCone negative_quadrant() { return RationalCone::from_generators(2, {rv({-1, 0}), rv({0, -1})}); }

TEST(ColoredConeFaces, ColorFollowsItsRay) {
  ColorRecord d{rv({1, 0}), {0}};
  auto c = ColoredCone::make(2, {rv({0, 1})}, {d});
  auto fs = faces(c);
  ASSERT_EQ(fs.size(), 4u);
  std::size_t with_color = 0;
  for (const auto& f : fs) {
    if (f.cone.rays() == std::vector<IntVector>{{1, 0}}) EXPECT_EQ(f.colors.size(), 1u);
    if (f.cone.rays() == std::vector<IntVector>{{0, 1}}) EXPECT_TRUE(f.colors.empty());
    if (f.cone.is_zero()) EXPECT_TRUE(f.colors.empty());
    with_color += f.colors.size();
  }
  EXPECT_EQ(with_color, 2u);  // the cone itself and its first ray
  EXPECT_EQ(faces(ColoredCone{RationalCone::zero(2), {}}).size(), 1u);
}

TEST(WonderfulFan, NegativeQuadrant) {
  auto v = negative_quadrant();
  auto fan = wonderful_fan(v);
  EXPECT_EQ(fan.cones().size(), 4u);
  EXPECT_TRUE(is_valid_fan(fan, v).valid());
  EXPECT_TRUE(is_wonderful(fan, v));
}

TEST(WonderfulFan, RayAndWholeSpace) {
  auto ray = RationalCone::from_generators(2, {rv({-1, 2})});
  auto fan = wonderful_fan(ray);
  EXPECT_EQ(fan.cones().size(), 2u);
  EXPECT_TRUE(is_valid_fan(fan, ray).valid());
  EXPECT_THROW(wonderful_fan(RationalCone::whole_space(2)), NotStrictlyConvex);
}

TEST(FanValidity, DuplicateMaximalConeWithDifferentColorsFailsAxiomIII) {
  auto v = RationalCone::whole_space(2);
  ColorRecord d{rv({1, 0}), {0}};
  auto plain = ColoredCone::make(2, {rv({1, 0}), rv({0, 1})}, {});
  auto colored = ColoredCone::make(2, {rv({0, 1})}, {d});
  ASSERT_EQ(plain.cone, colored.cone);
  std::vector<ColoredCone> cones = {plain, colored};
  for (const auto& f : faces(plain)) cones.push_back(f);
  for (const auto& f : faces(colored)) cones.push_back(f);
  auto verdict = is_valid_fan(ColoredFan(cones), v);
  EXPECT_FALSE(verdict.axiom_iii);
}

TEST(FanValidity, MissingRayFaceFailsAxiomII) {
  auto v = negative_quadrant();
  auto fan = wonderful_fan(v);
  std::vector<ColoredCone> cones;
  for (const auto& c : fan.cones())
    if (c.cone.rays() != std::vector<IntVector>{{-1, 0}}) cones.push_back(c);
  auto verdict = is_valid_fan(ColoredFan(cones), v);
  EXPECT_FALSE(verdict.axiom_ii);
  EXPECT_TRUE(verdict.axiom_i);
  EXPECT_TRUE(verdict.axiom_iii);
}

TEST(FanValidity, AxiomIAndConeShape) {
  auto v = negative_quadrant();
  auto outside = ColoredCone::make(2, {rv({1, 1})}, {});
  auto verdict = is_valid_fan(ColoredFan({outside, ColoredCone{RationalCone::zero(2), {}}}), v);
  EXPECT_FALSE(verdict.axiom_i);
  EXPECT_FALSE(verdict.cones_ok);  // its ray is neither in V nor a color image
  EXPECT_FALSE(is_valid_fan(ColoredFan(), v).nonempty);
  EXPECT_THROW(is_valid_fan(ColoredFan({ColoredCone{RationalCone::zero(3), {}}}), v), DimensionError);
}

TEST(FanValidity, ColoredSubdivisionIsValid) {
  // a color with rho outside V, cone straddling the boundary of V
  auto v = negative_quadrant();
  ColorRecord d{rv({1, -1}), {1}};
  auto c = ColoredCone::make(2, {rv({-1, 0})}, {d});
  std::vector<ColoredCone> cones;
  for (const auto& f : faces(c))
    if (relative_interior_meets(f.cone, v).feasible) cones.push_back(f);
  auto fan = ColoredFan(cones);
  auto verdict = is_valid_fan(fan, v);
  EXPECT_TRUE(verdict.valid()) << (verdict.problems.empty() ? "" : verdict.problems[0]);
  EXPECT_FALSE(is_wonderful(fan, v));
}

TEST(IsWonderful, ProperSubcone) {
  auto v = negative_quadrant();
  auto sub = RationalCone::from_generators(2, {rv({-1, 0}), rv({-1, -1})});
  EXPECT_FALSE(is_wonderful(wonderful_fan(sub), v));
}

class StabilityTest : public ::testing::Test {
 protected:
  BasedRootDatum a1a1 = BasedRootDatum::build("A1xA1", Isogeny::SimplyConnected);
  GaloisAction swap = build_action(a1a1, {{"s", std::vector<std::size_t>{1, 0}}});
  Lattice x = Lattice::full(2);
};

TEST_F(StabilityTest, TrivialActionIsAlwaysStable) {
  auto trivial = build_action(a1a1, {});
  auto fan = wonderful_fan(RationalCone::from_generators(2, {rv({-1, 0}), rv({-2, -1})}));
  EXPECT_TRUE(is_gamma_stable(fan, trivial, x).stable);
}

TEST_F(StabilityTest, SymmetricAndAsymmetricCones) {
  EXPECT_TRUE(is_gamma_stable(wonderful_fan(negative_quadrant()), swap, x).stable);
  auto moved = RationalCone::from_generators(2, {rv({-1, 0}), rv({-2, -1})});
  auto res = is_gamma_stable(wonderful_fan(moved), swap, x);
  EXPECT_FALSE(res.stable);
  EXPECT_EQ(*res.generator, "s");
  ASSERT_TRUE(res.cone_index.has_value());
}

TEST_F(StabilityTest, ColorsMoveWithTheAction) {
  ColorRecord d1{rv({1, -1}), {0}};
  ColorRecord d2{rv({-1, 1}), {1}};
  auto one = ColoredFan({ColoredCone::make(2, {}, {d1}), ColoredCone{RationalCone::zero(2), {}}});
  EXPECT_FALSE(is_gamma_stable(one, swap, x).stable);
  auto both = ColoredFan({ColoredCone::make(2, {}, {d1}), ColoredCone::make(2, {}, {d2}),
                          ColoredCone{RationalCone::zero(2), {}}});
  EXPECT_TRUE(is_gamma_stable(both, swap, x).stable);
}

}  // namespace
}  // namespace sphdescent
