#pragma once

// The verdict engine: does G/H admit a G0-equivariant k0-form, and by which
// theorem.  Every check performed is recorded in the trace.

#include <optional>
#include <string>
#include <vector>

#include "sphdescent/cohomology.hpp"
#include "sphdescent/spherical_data.hpp"

namespace sphdescent {

enum class NormalizerReason { AssertedTrue, ByHorospherical, BySymmetric, Unknown };

inline std::string to_string(NormalizerReason r) {
  switch (r) {
    case NormalizerReason::AssertedTrue: return "AssertedTrue";
    case NormalizerReason::ByHorospherical: return "ByHorospherical";
    case NormalizerReason::BySymmetric: return "BySymmetric";
    case NormalizerReason::Unknown: return "Unknown";
  }
  return "?";
}

inline std::optional<NormalizerReason> parse_normalizer_reason(const std::string& s) {
  for (auto r : {NormalizerReason::AssertedTrue, NormalizerReason::ByHorospherical, NormalizerReason::BySymmetric,
                 NormalizerReason::Unknown})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

struct HypothesisSet {
  bool field_is_large = false;
  bool char_zero = false;
  bool form_is_quasi_split = false;
  NormalizerReason normalizer = NormalizerReason::Unknown;
  std::optional<BaseField> base_field;

  friend bool operator==(const HypothesisSet& a, const HypothesisSet& b) {
    return a.field_is_large == b.field_is_large && a.char_zero == b.char_zero &&
           a.form_is_quasi_split == b.form_is_quasi_split && a.normalizer == b.normalizer && a.base_field == b.base_field;
  }
};

struct CohomologyData {
  std::optional<MultiplicativeTypeModule> a_module;
  std::optional<CharacterMap> kappa;
};

enum class VerdictStatus { FormExists, NoForm, ExistsIffObstructionVanishes, Inconclusive };
enum class CheckResult { Pass, Fail, Unresolved, Info };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::FormExists: return "FormExists";
    case VerdictStatus::NoForm: return "NoForm";
    case VerdictStatus::ExistsIffObstructionVanishes: return "ExistsIffObstructionVanishes";
    case VerdictStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline std::string to_string(CheckResult r) {
  switch (r) {
    case CheckResult::Pass: return "pass";
    case CheckResult::Fail: return "fail";
    case CheckResult::Unresolved: return "unresolved";
    case CheckResult::Info: return "info";
  }
  return "?";
}

struct TraceEntry {
  std::string check;
  CheckResult result;
  std::string detail;
};

inline constexpr const char* kNecessityTheorem = "necessity of invariant preservation";
inline constexpr const char* kQuasiSplitTheorem = "quasi-split existence theorem";
inline constexpr const char* kObstructionTheorem = "Tits-class obstruction theorem";

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::string theorem;
  std::optional<ObstructionVerdict> obstruction;
  std::vector<std::string> missing;
  std::vector<TraceEntry> trace;

  bool has_failure() const {
    for (const auto& t : trace)
      if (t.result == CheckResult::Fail) return true;
    return false;
  }
};

namespace detail {

inline void preservation_trace(const GaloisAction& action, const SphericalInvariants& inv, std::vector<TraceEntry>& trace) {
  auto flag = [](std::optional<bool> b) { return b.value_or(false) ? CheckResult::Pass : CheckResult::Fail; };
  for (std::size_t g = 0; g < action.generator_count(); ++g) {
    const auto& name = action.generator_names()[g];
    auto f = preserves_invariants(action, action.generator_element_index(g), inv);
    trace.push_back({"weight_lattice_preserved[" + name + "]", f.x_ok ? CheckResult::Pass : CheckResult::Fail, ""});
    if (!f.x_ok) {
      trace.push_back({"valuation_cone_preserved[" + name + "]", CheckResult::Info, "not applicable: weight lattice moved"});
      trace.push_back({"omega1_preserved[" + name + "]", CheckResult::Info, "not applicable: weight lattice moved"});
      trace.push_back({"omega2_preserved[" + name + "]", CheckResult::Info, "not applicable: weight lattice moved"});
      continue;
    }
    trace.push_back({"valuation_cone_preserved[" + name + "]", flag(f.v_ok), ""});
    trace.push_back({"omega1_preserved[" + name + "]", flag(f.omega1_ok), ""});
    trace.push_back({"omega2_preserved[" + name + "]", flag(f.omega2_ok), ""});
  }
}

inline void horospherical_trace(const GaloisAction& action, const HorosphericalDatum& datum, std::vector<TraceEntry>& trace) {
  for (const auto& w : validate_horospherical(action.root_datum(), datum)) trace.push_back({"horospherical_datum", CheckResult::Info, w});
  const auto m = scaled_m_lattice(action.root_datum().rank(), datum.M);
  for (std::size_t g = 0; g < action.generator_count(); ++g) {
    const auto& name = action.generator_names()[g];
    auto k = action.generator_element_index(g);
    auto image = action_on_simple_subset(action, datum.I, k);
    bool i_ok = image == datum.I;
    bool m_ok = m.image(action.generator_matrix(g)) == m;
    auto set_text = [](const std::set<std::size_t>& s) {
      std::string out;
      for (auto i : s) out += (out.empty() ? "" : ", ") + std::to_string(i + 1);
      return "{" + out + "}";
    };
    trace.push_back({"I_invariant[" + name + "]", i_ok ? CheckResult::Pass : CheckResult::Fail,
                     i_ok ? "" : "I = " + set_text(datum.I) + " is sent to " + set_text(image)});
    trace.push_back({"M_invariant[" + name + "]", m_ok ? CheckResult::Pass : CheckResult::Fail, m_ok ? "" : "M is not stable"});
  }
}

}  // namespace detail

/// At least one of `invariants` and `horospherical` must be given.
inline Verdict verdict(const GaloisAction& action, const std::optional<SphericalInvariants>& invariants,
                       const std::optional<HorosphericalDatum>& horospherical, const HypothesisSet& hyps,
                       const CohomologyData& coh = {}) {
  if (!invariants && !horospherical) throw std::invalid_argument("verdict needs spherical invariants or a horospherical datum");
  Verdict v;
  if (invariants) detail::preservation_trace(action, *invariants, v.trace);
  if (horospherical) detail::horospherical_trace(action, *horospherical, v.trace);
  if (v.has_failure()) {
    v.status = VerdictStatus::NoForm;
    v.theorem = kNecessityTheorem;
    return v;
  }

  const bool local = hyps.base_field == BaseField::PAdic || hyps.base_field == BaseField::Real;
  auto field_entry = [&](const std::string& name, bool asserted) {
    if (asserted)
      v.trace.push_back({name, CheckResult::Pass, "asserted"});
    else if (local)
      v.trace.push_back({name, CheckResult::Pass, "implied by base field " + to_string(*hyps.base_field)});
    else {
      v.trace.push_back({name, CheckResult::Unresolved, "not asserted"});
      v.missing.push_back(name);
    }
  };
  field_entry("field_is_large", hyps.field_is_large);
  field_entry("char_zero", hyps.char_zero);

  switch (hyps.normalizer) {
    case NormalizerReason::AssertedTrue:
      v.trace.push_back({"normalizer_self_normalizing", CheckResult::Pass, "asserted"});
      break;
    case NormalizerReason::BySymmetric:
      v.trace.push_back({"normalizer_self_normalizing", CheckResult::Pass, "H is symmetric"});
      break;
    case NormalizerReason::ByHorospherical:
      if (horospherical) {
        v.trace.push_back({"normalizer_self_normalizing", CheckResult::Pass, "H is horospherical, so its normalizer is parabolic"});
        break;
      }
      v.trace.push_back({"normalizer_self_normalizing", CheckResult::Unresolved, "ByHorospherical given without a horospherical datum"});
      v.missing.push_back("normalizer_self_normalizing");
      break;
    case NormalizerReason::Unknown:
      v.trace.push_back({"normalizer_self_normalizing", CheckResult::Unresolved, "not asserted"});
      v.missing.push_back("normalizer_self_normalizing");
      break;
  }
  if (!v.missing.empty()) {
    v.status = VerdictStatus::Inconclusive;
    return v;
  }

  if (hyps.form_is_quasi_split) {
    v.trace.push_back({"form_is_quasi_split", CheckResult::Pass, "asserted"});
    v.status = VerdictStatus::FormExists;
    v.theorem = kQuasiSplitTheorem;
    if (horospherical && !invariants) v.theorem += " (horospherical criterion: I and M invariant)";
    return v;
  }
  v.trace.push_back({"form_is_quasi_split", CheckResult::Info, "not asserted; using the obstruction criterion"});
  auto ob = obstruction_verdict(false, coh.kappa, coh.a_module, hyps.base_field);
  v.obstruction = ob;
  v.theorem = kObstructionTheorem;
  if (ob.status == ObstructionStatus::Vanishes) {
    v.trace.push_back({"obstruction_vanishes", CheckResult::Pass, to_string(ob.reason) + ": " + ob.detail});
    v.status = VerdictStatus::FormExists;
  } else {
    v.trace.push_back({"obstruction_vanishes", CheckResult::Unresolved, to_string(ob.reason) + ": " + ob.detail});
    v.status = VerdictStatus::ExistsIffObstructionVanishes;
  }
  return v;
}

struct WonderfulReport {
  std::size_t cone_count = 0;
  FanVerdict fan;
  bool wonderful = false;
  StabilityResult stability;
};

/// Builds the wonderful fan of the valuation cone and checks validity,
/// wonderfulness and stability under the action.  Throws NotStrictlyConvex.
inline WonderfulReport wonderful_stability_report(const SphericalInvariants& inv, const GaloisAction& action) {
  WonderfulReport r;
  auto fan = wonderful_fan(inv.valuation_cone);
  r.cone_count = fan.cones().size();
  r.fan = is_valid_fan(fan, inv.valuation_cone);
  r.wonderful = is_wonderful(fan, inv.valuation_cone);
  for (std::size_t g = 0; g < action.generator_count(); ++g)
    if (!restrict_to(inv.weight_lattice, action.generator_matrix(g))) {
      r.stability.stable = false;
      r.stability.generator = action.generator_names()[g];
      return r;
    }
  r.stability = is_gamma_stable(fan, action, inv.weight_lattice);
  return r;
}

}  // namespace sphdescent
