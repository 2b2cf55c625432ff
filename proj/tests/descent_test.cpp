#include <random>

#include "gtest/gtest.h"
#include "sphdescent/descent.hpp"

namespace sphdescent {
namespace {

RatVector rv(std::initializer_list<Rational> v) { return RatVector(v); }

IntMatrix twice_identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
  return m;
}

class Spin8 : public ::testing::Test {
 protected:
  BasedRootDatum d4 = BasedRootDatum::build("D4", Isogeny::SimplyConnected);
  GaloisAction triality = build_action(d4, {{"t", std::vector<std::size_t>{2, 1, 3, 0}}});

  std::vector<ColorRecord> colors(const std::vector<std::size_t>& which) {
    std::vector<ColorRecord> out;
    for (auto i : which) {
      RatVector e(4);
      e[i] = 1;
      out.push_back({e, {i}});
    }
    return out;
  }
  SphericalInvariants invariants(const std::vector<std::size_t>& which = {0, 1, 2, 3}) {
    const auto& a = d4.cartan_matrix();
    std::vector<RatVector> ineqs;
    for (std::size_t i = 0; i < 4; ++i) {
      RatVector row(4);
      for (std::size_t j = 0; j < 4; ++j) row[j] = -Rational(a(j, i));
      ineqs.push_back(row);
    }
    return make_invariants(d4, Lattice::span(4, twice_identity(4)), RationalCone::from_inequalities(4, ineqs),
                           colors(which), {});
  }
  HypothesisSet padic_symmetric(bool quasi_split) {
    HypothesisSet h;
    h.base_field = BaseField::PAdic;
    h.normalizer = NormalizerReason::BySymmetric;
    h.form_is_quasi_split = quasi_split;
    return h;
  }
  CohomologyData center_data() { return {simply_connected_center_characters(triality), std::nullopt}; }
};

TEST_F(Spin8, QuasiSplitTrialitaryFormExists) {
  auto v = verdict(triality, invariants(), std::nullopt, padic_symmetric(true));
  EXPECT_EQ(v.status, VerdictStatus::FormExists);
  EXPECT_EQ(v.theorem, kQuasiSplitTheorem);
  EXPECT_FALSE(v.has_failure());
  // four checks for the single generator, three hypotheses, the quasi-split flag
  EXPECT_EQ(v.trace.size(), 8u);
  EXPECT_EQ(v.trace[0].check, "weight_lattice_preserved[t]");
}

TEST_F(Spin8, NonQuasiSplitUsesTheObstruction) {
  auto v = verdict(triality, invariants(), std::nullopt, padic_symmetric(false), center_data());
  EXPECT_EQ(v.status, VerdictStatus::FormExists);
  EXPECT_EQ(v.theorem, kObstructionTheorem);
  ASSERT_TRUE(v.obstruction.has_value());
  EXPECT_EQ(v.obstruction->reason, ObstructionReason::H2TargetTrivial);

  auto no_data = verdict(triality, invariants(), std::nullopt, padic_symmetric(false));
  EXPECT_EQ(no_data.status, VerdictStatus::ExistsIffObstructionVanishes);
  EXPECT_EQ(no_data.obstruction->status, ObstructionStatus::Unknown);
}

TEST_F(Spin8, MovedColorsGiveNoForm) {
  auto v = verdict(triality, invariants({0, 1}), std::nullopt, padic_symmetric(true));
  EXPECT_EQ(v.status, VerdictStatus::NoForm);
  EXPECT_EQ(v.theorem, kNecessityTheorem);
  EXPECT_TRUE(v.has_failure());
}

TEST_F(Spin8, HorosphericalRoute) {
  HypothesisSet h = padic_symmetric(true);
  h.normalizer = NormalizerReason::ByHorospherical;
  HorosphericalDatum good{{1}, {d4.from_epsilon(rv({2, 1, 1, 0}))}};
  auto v = verdict(triality, std::nullopt, good, h);
  EXPECT_EQ(v.status, VerdictStatus::FormExists);
  EXPECT_EQ(v.theorem.rfind(kQuasiSplitTheorem, 0), 0u);

  HorosphericalDatum bad{{0}, {}};
  auto b = verdict(triality, std::nullopt, bad, h);
  EXPECT_EQ(b.status, VerdictStatus::NoForm);
  EXPECT_EQ(b.trace[0].check, "I_invariant[t]");
  EXPECT_EQ(b.trace[0].result, CheckResult::Fail);

  // ByHorospherical needs the datum
  auto missing = verdict(triality, invariants(), std::nullopt, h);
  EXPECT_EQ(missing.status, VerdictStatus::Inconclusive);
  EXPECT_EQ(missing.missing, std::vector<std::string>{"normalizer_self_normalizing"});
}

TEST_F(Spin8, MissingHypotheses) {
  HypothesisSet h = padic_symmetric(true);
  h.normalizer = NormalizerReason::Unknown;
  auto v = verdict(triality, invariants(), std::nullopt, h);
  EXPECT_EQ(v.status, VerdictStatus::Inconclusive);
  EXPECT_EQ(v.missing, std::vector<std::string>{"normalizer_self_normalizing"});

  HypothesisSet bare;
  bare.normalizer = NormalizerReason::AssertedTrue;
  bare.form_is_quasi_split = true;
  v = verdict(triality, invariants(), std::nullopt, bare);
  EXPECT_EQ(v.missing, (std::vector<std::string>{"field_is_large", "char_zero"}));
  bare.base_field = BaseField::LargeOther;
  EXPECT_EQ(verdict(triality, invariants(), std::nullopt, bare).status, VerdictStatus::Inconclusive);
  bare.field_is_large = bare.char_zero = true;
  EXPECT_EQ(verdict(triality, invariants(), std::nullopt, bare).status, VerdictStatus::FormExists);
  EXPECT_THROW(verdict(triality, std::nullopt, std::nullopt, bare), std::invalid_argument);
}

TEST_F(Spin8, WonderfulReport) {
  auto r = wonderful_stability_report(invariants(), triality);
  EXPECT_TRUE(r.fan.valid());
  EXPECT_TRUE(r.wonderful);
  EXPECT_TRUE(r.stability.stable);
  EXPECT_EQ(r.cone_count, 16u);  // faces of a simplicial 4-dimensional cone
}

TEST(SplitForm, TrivialActionAnyInvariants) {
  auto a2 = BasedRootDatum::build("A2", Isogeny::Adjoint);
  auto split = build_action(a2, {});
  auto inv = make_invariants(a2, Lattice::span(2, std::vector<IntVector>{{1, 1}}),
                             RationalCone::from_generators(1, {rv({-1})}), {{rv({1}), {0}}}, {});
  HypothesisSet h;
  h.field_is_large = h.char_zero = true;
  h.base_field = BaseField::LargeOther;
  h.normalizer = NormalizerReason::AssertedTrue;
  h.form_is_quasi_split = true;
  auto v = verdict(split, inv, std::nullopt, h);
  EXPECT_EQ(v.status, VerdictStatus::FormExists);
  EXPECT_TRUE(wonderful_stability_report(inv, split).stability.stable);
}

TEST(SL2Torus, ZeroCharacterMapGivesFormExists) {
  auto sl2 = BasedRootDatum::build("A1", Isogeny::SimplyConnected);
  auto split = build_action(sl2, {});
  auto inv = make_invariants(sl2, Lattice::span(1, std::vector<IntVector>{{2}}),
                             RationalCone::from_inequalities(1, {rv({-1})}), {}, {{rv({1}), {0}}});
  auto weyl = MultiplicativeTypeModule(FgAbelianGroup::cyclic_product({2}), {}, {});
  auto center = MultiplicativeTypeModule(FgAbelianGroup::cyclic_product({2}), {}, {});
  CohomologyData coh{weyl, CharacterMap(weyl, center, IntMatrix{{0}})};
  HypothesisSet h;
  h.base_field = BaseField::PAdic;
  h.normalizer = NormalizerReason::AssertedTrue;
  auto v = verdict(split, inv, std::nullopt, h, coh);
  EXPECT_EQ(v.status, VerdictStatus::FormExists);
  EXPECT_EQ(v.obstruction->reason, ObstructionReason::ZeroCharacterMap);
}

TEST(Stability, RotatedValuationConeIsMoved) {
  auto a1a1 = BasedRootDatum::build("A1xA1", Isogeny::SimplyConnected);
  auto swap = build_action(a1a1, {{"s", std::vector<std::size_t>{1, 0}}});
  auto skew = make_invariants(a1a1, Lattice::full(2), RationalCone::from_generators(2, {rv({-1, 0}), rv({-2, -1})}), {}, {});
  auto r = wonderful_stability_report(skew, swap);
  EXPECT_FALSE(r.stability.stable);
  EXPECT_EQ(*r.stability.generator, "s");
  auto sym = make_invariants(a1a1, Lattice::full(2), RationalCone::from_generators(2, {rv({-1, 0}), rv({0, -1})}), {}, {});
  EXPECT_TRUE(wonderful_stability_report(sym, swap).stability.stable);
  auto line = make_invariants(a1a1, Lattice::full(2), RationalCone::whole_space(2), {}, {});
  EXPECT_THROW(wonderful_stability_report(line, swap), NotStrictlyConvex);
}

// Properties over random hypothesis sets and random color subsets.
TEST_F(Spin8, RandomizedProperties) {
  std::mt19937 rng(11);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::size_t> which;
    for (std::size_t i = 0; i < 4; ++i)
      if (trial % 3 == 0 || coin(rng)) which.push_back(i);
    auto inv = invariants(which);
    HypothesisSet h;
    h.field_is_large = coin(rng);
    h.char_zero = coin(rng);
    h.normalizer = static_cast<NormalizerReason>(pick(rng));
    int f = pick(rng);
    if (f < 3) h.base_field = static_cast<BaseField>(f);
    std::optional<HorosphericalDatum> horo;
    if (coin(rng)) horo = HorosphericalDatum{{1}, {}};
    CohomologyData coh = coin(rng) ? center_data() : CohomologyData{};

    auto v = verdict(triality, inv, horo, h, coh);
    bool preserved = preserves_invariants(triality, triality.generator_element_index(0), inv).all();
    EXPECT_EQ(v.status == VerdictStatus::NoForm, !preserved);
    if (v.status == VerdictStatus::FormExists)
      for (const auto& t : v.trace) EXPECT_TRUE(t.result == CheckResult::Pass || t.result == CheckResult::Info) << t.check;

    h.form_is_quasi_split = false;
    auto off = verdict(triality, inv, horo, h, coh);
    h.form_is_quasi_split = true;
    auto on = verdict(triality, inv, horo, h, coh);
    if (off.status == VerdictStatus::FormExists) EXPECT_EQ(on.status, VerdictStatus::FormExists);

    auto trivial = verdict(build_action(d4, {}), inv, horo, h, coh);
    EXPECT_NE(trivial.status, VerdictStatus::NoForm);
  }
}

}  // namespace
}  // namespace sphdescent
