#pragma once

// Structured and text reports for problems: verdicts, invariant checks,
// fans and cohomology.  Output ordering is deterministic.

#include <iomanip>
#include <sstream>
#include <string>

#include "sphdescent/problem.hpp"
#include "sphdescent/weyl_oracle.hpp"

namespace sphdescent {

inline int exit_code(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::FormExists:
    case VerdictStatus::ExistsIffObstructionVanishes: return 0;
    case VerdictStatus::NoForm: return 1;
    case VerdictStatus::Inconclusive: return 2;
  }
  return 2;
}

inline Verdict run_verdict(const Problem& p) {
  if (!p.invariants && !p.horospherical) throw ParseError("", "a verdict needs an invariants or a horospherical block");
  return verdict(p.action, p.invariants, p.horospherical, p.hypotheses, p.cohomology);
}

inline Json verdict_json(const Problem& p, const Verdict& v) {
  Json j = Json::object();
  j["problem"] = p.name;
  j["status"] = to_string(v.status);
  j["exit_code"] = exit_code(v.status);
  j["theorem"] = v.theorem;
  if (v.obstruction)
    j["obstruction"] = {{"status", to_string(v.obstruction->status)},
                        {"reason", to_string(v.obstruction->reason)},
                        {"detail", v.obstruction->detail}};
  else
    j["obstruction"] = nullptr;
  j["missing"] = v.missing;
  Json trace = Json::array();
  for (const auto& t : v.trace) trace.push_back({{"check", t.check}, {"result", to_string(t.result)}, {"detail", t.detail}});
  j["trace"] = trace;
  return j;
}

inline std::string verdict_text(const Problem& p, const Verdict& v) {
  std::ostringstream out;
  auto row = [&](const std::string& k, const std::string& val) { out << std::left << std::setw(12) << k << val << "\n"; };
  row("problem", p.name);
  row("status", to_string(v.status));
  if (!v.theorem.empty()) row("theorem", v.theorem);
  if (v.obstruction) row("obstruction", to_string(v.obstruction->status) + " (" + to_string(v.obstruction->reason) + ")");
  if (!v.missing.empty()) {
    std::string m;
    for (const auto& s : v.missing) m += (m.empty() ? "" : ", ") + s;
    row("missing", m);
  }
  std::size_t width = 0;
  for (const auto& t : v.trace) width = std::max(width, t.check.size());
  out << "trace\n";
  for (const auto& t : v.trace) {
    out << "  " << std::left << std::setw(static_cast<int>(width) + 2) << t.check << std::setw(11) << to_string(t.result);
    out << t.detail << "\n";
  }
  std::string s = out.str();
  // drop trailing spaces left by empty details
  std::string cleaned;
  std::istringstream lines(s);
  for (std::string line; std::getline(lines, line);) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    cleaned += line + "\n";
  }
  return cleaned;
}

/// Preservation flags for every element of the closure, and the
/// horospherical check when present.
inline Json invariants_report(const Problem& p) {
  Json j = Json::object();
  j["problem"] = p.name;
  j["action_order"] = p.action.order();
  if (p.invariants) {
    Json rows = Json::array();
    bool all = true;
    for (std::size_t k = 0; k < p.action.order(); ++k) {
      auto f = preserves_invariants(p.action, k, *p.invariants);
      auto opt = [](std::optional<bool> b) { return b ? Json(*b) : Json(nullptr); };
      rows.push_back({{"element", p.action.elements()[k].label},
                      {"weight_lattice", f.x_ok},
                      {"valuation_cone", opt(f.v_ok)},
                      {"omega1", opt(f.omega1_ok)},
                      {"omega2", opt(f.omega2_ok)}});
      all = all && f.all();
    }
    j["invariants"] = {{"preserved", all}, {"elements", rows}};
  }
  if (p.horospherical) {
    auto c = horospherical_invariant(p.action, *p.horospherical);
    Json h = {{"invariant", c.invariant}};
    if (!c.invariant) {
      h["violator"] = *c.violator;
      h["reason"] = c.reason;
    }
    h["warnings"] = validate_horospherical(p.brd, *p.horospherical);
    j["horospherical"] = h;
  }
  return j;
}

inline Json cone_json(const ColoredCone& c) {
  return {{"rays", [&] {
             Json r = Json::array();
             for (const auto& v : c.cone.rays()) r.push_back(vector_json(v));
             return r;
           }()},
          {"colors", colors_json(c.colors)}};
}

/// Validity, wonderfulness and stability of the problem's fan, or of the
/// wonderful fan of the valuation cone when no fan is given.
inline Json fan_report(const Problem& p) {
  if (!p.invariants) throw ParseError("/invariants", "fan checks need the invariants block");
  const auto& inv = *p.invariants;
  Json j = Json::object();
  j["problem"] = p.name;
  ColoredFan fan = p.fan ? *p.fan : wonderful_fan(inv.valuation_cone);
  j["source"] = p.fan ? "problem" : "wonderful";
  j["cone_count"] = fan.cones().size();
  auto fv = is_valid_fan(fan, inv.valuation_cone);
  j["valid"] = fv.valid();
  j["axioms"] = {{"nonempty", fv.nonempty}, {"cones_ok", fv.cones_ok}, {"i", fv.axiom_i}, {"ii", fv.axiom_ii}, {"iii", fv.axiom_iii}};
  j["problems"] = fv.problems;
  j["wonderful"] = is_wonderful(fan, inv.valuation_cone);
  StabilityResult st;
  for (std::size_t g = 0; g < p.action.generator_count() && st.stable; ++g)
    if (!restrict_to(inv.weight_lattice, p.action.generator_matrix(g))) {
      st.stable = false;
      st.generator = p.action.generator_names()[g];
    }
  if (st.stable) st = is_gamma_stable(fan, p.action, inv.weight_lattice);
  Json s = {{"stable", st.stable}};
  if (st.generator) s["generator"] = *st.generator;
  if (st.cone_index) s["cone"] = cone_json(fan.cones()[*st.cone_index]);
  j["stability"] = s;
  return j;
}

inline std::string group_label(const FgAbelianGroup& g) {
  auto f = g.invariant_factors();
  if (f.empty()) return "trivial";
  std::string s;
  for (const auto& d : f) s += (s.empty() ? "" : " x ") + (d == 0 ? std::string("Z") : "Z/" + to_string(d));
  return s;
}

/// One block of lines per character module present.
inline std::vector<std::string> cohomology_report(const Problem& p) {
  std::vector<std::string> out;
  auto describe = [&](const std::string& label, const MultiplicativeTypeModule& m) {
    out.push_back(label + ": " + group_label(m.characters()));
    auto fixed = m.fixed_characters();
    out.push_back("  fixed characters: " + group_label(fixed));
    if (!m.characters().is_finite())
      out.push_back("  H² test not applicable (positive-dimensional)");
    else if (p.hypotheses.base_field != BaseField::PAdic)
      out.push_back("  H² test not applicable (base field is not p-adic)");
    else if (h2_local_vanishes(m))
      out.push_back("  H² vanishes (fixed characters trivial)");
    else
      out.push_back("  H² nonvanishing (fixed characters " + group_label(fixed) + ")");
  };
  if (p.cohomology.a_module) describe("A_characters", *p.cohomology.a_module);
  if (p.z_module) describe("Z_characters", *p.z_module);
  if (p.cohomology.kappa) out.push_back(std::string("kappa: ") + (p.cohomology.kappa->is_zero() ? "zero map" : "nonzero map"));
  auto ob = obstruction_verdict(p.hypotheses.form_is_quasi_split, p.cohomology.kappa, p.cohomology.a_module, p.hypotheses.base_field);
  out.push_back("obstruction: " + to_string(ob.status) + " (" + to_string(ob.reason) + ")");
  return out;
}

/// "s2 s1 s3" for a reduced word (applied right to left), "e" when empty.
inline std::string word_text(const std::vector<std::size_t>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (auto i : word) s += (s.empty() ? "s" : " s") + std::to_string(i + 1);
  return s;
}

}  // namespace sphdescent
