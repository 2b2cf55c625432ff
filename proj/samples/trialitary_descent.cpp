// Builds the Spin8 trialitary problem in code, without a problem file, and
// asks whether a form exists.  Then repeats the question for a few
// horospherical subgroups.

#include <iostream>

#include "sphdescent/sphdescent.hpp"

namespace sd = sphdescent;

int main() {
  auto d4 = sd::BasedRootDatum::build("D4", sd::Isogeny::SimplyConnected);
  // the triality alpha1 -> alpha3 -> alpha4 -> alpha1
  auto triality = sd::build_action(d4, {{"t", std::vector<std::size_t>{2, 1, 3, 0}}});

  // Spin8 / Spin4.Spin4: weight lattice 2P, spherical roots 2 alpha_i and
  // one color per simple root.  The lattice basis is 2 omega_i, so the
  // valuation cone is cut out by minus the Cartan columns.
  sd::IntMatrix basis(4, 4);
  std::vector<sd::RatVector> inequalities;
  std::vector<sd::ColorRecord> colors;
  for (std::size_t i = 0; i < 4; ++i) {
    basis(i, i) = 2;
    sd::RatVector row(4), rho(4);
    for (std::size_t j = 0; j < 4; ++j) row[j] = -sd::Rational(d4.cartan_matrix()(j, i));
    rho[i] = 1;
    inequalities.push_back(row);
    colors.push_back({rho, {i}});
  }
  auto invariants = sd::make_invariants_in_basis(d4, basis, sd::RationalCone::from_inequalities(4, inequalities), colors, {});

  sd::HypothesisSet hyps;
  hyps.base_field = sd::BaseField::PAdic;
  hyps.normalizer = sd::NormalizerReason::BySymmetric;
  hyps.form_is_quasi_split = true;

  auto v = sd::verdict(triality, invariants, std::nullopt, hyps);
  std::cout << "Spin8/Spin4.Spin4, quasi-split: " << sd::to_string(v.status) << " (" << v.theorem << ")\n";

  hyps.form_is_quasi_split = false;
  sd::CohomologyData coh{sd::simply_connected_center_characters(triality), std::nullopt};
  v = sd::verdict(triality, invariants, std::nullopt, hyps, coh);
  std::cout << "Spin8/Spin4.Spin4, inner twist: " << sd::to_string(v.status) << " ("
            << sd::to_string(v.obstruction->reason) << ")\n";

  auto report = sd::wonderful_stability_report(invariants, triality);
  std::cout << "wonderful fan: " << report.cone_count << " cones, stable: " << (report.stability.stable ? "yes" : "no")
            << "\n";

  hyps.form_is_quasi_split = true;
  hyps.normalizer = sd::NormalizerReason::ByHorospherical;
  const std::vector<std::pair<std::string, sd::HorosphericalDatum>> horospherical{
      {"I = {alpha2}, M = Z(2 eps1 + eps2 + eps3)", {{1}, {d4.from_epsilon({2, 1, 1, 0})}}},
      {"I = {alpha1}, M = 0", {{0}, {}}},
  };
  for (const auto& [label, datum] : horospherical)
    std::cout << label << ": " << sd::to_string(sd::verdict(triality, std::nullopt, datum, hyps).status) << "\n";
}
