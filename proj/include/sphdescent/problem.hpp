#pragma once

// The JSON problem format (schema 1): parsing with JSON-pointer error
// locations, and serialization to a normalized form that re-parses to the
// same problem.
//
// Vectors in X may be written as a plain array of X coordinates or as an
// object {"eps": [...]}, {"simple_roots": [...]} or {"fundamental_weights":
// [...]}.  Vectors in V are plain arrays in the basis dual to the stated
// weight-lattice basis.  Rational entries are integers or "a/b" strings.

#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sphdescent/descent.hpp"

namespace sphdescent {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string pointer, const std::string& message)
      : std::runtime_error((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// How a character module is specified: explicitly, or as the character
/// group of the center (X/ZR) or of the simply connected center (P/Q).
struct ModuleSpec {
  enum class Kind { Explicit, Center, SimplyConnectedCenter };
  Kind kind = Kind::Explicit;
  IntMatrix presentation;
  std::size_t generators = 0;
  std::map<std::string, IntMatrix> action;

  friend bool operator==(const ModuleSpec& a, const ModuleSpec& b) {
    return a.kind == b.kind && a.presentation == b.presentation && a.generators == b.generators && a.action == b.action;
  }
};

struct CohomologySpec {
  std::optional<ModuleSpec> a_characters;
  std::optional<ModuleSpec> z_characters;
  std::optional<IntMatrix> kappa_matrix;
};

struct Problem {
  std::string name;
  std::string description;
  std::string type;
  Isogeny isogeny = Isogeny::SimplyConnected;
  std::optional<RatMatrix> custom_lattice;  // omega coordinates
  std::size_t torus_rank = 0;
  BasedRootDatum brd;
  std::vector<GeneratorSpec> generators;
  GaloisAction action;
  std::optional<SphericalInvariants> invariants;
  std::optional<HorosphericalDatum> horospherical;
  HypothesisSet hypotheses;
  std::optional<CohomologySpec> cohomology_spec;
  CohomologyData cohomology;
  std::optional<MultiplicativeTypeModule> z_module;
  std::optional<ColoredFan> fan;
};

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(path, key), "required field is missing");
  return *it;
}

inline void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ParseError(child(path, it.key()), "unknown field");
  }
}

inline Rational parse_rational_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
  }
  throw ParseError(path, "expected an integer or an \"a/b\" string");
}

inline bool parse_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path, "expected true or false");
  return j.get<bool>();
}

inline std::size_t parse_size(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ParseError(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline std::string parse_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

inline const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

inline RatVector parse_plain_vector(const Json& j, const std::string& path, std::optional<std::size_t> length) {
  require_array(j, path);
  RatVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_rational_json(j[i], child(path, i)));
  if (length && out.size() != *length)
    throw ParseError(path, "expected " + std::to_string(*length) + " entries, found " + std::to_string(out.size()));
  return out;
}

inline IntVector parse_int_vector(const Json& j, const std::string& path, std::optional<std::size_t> length) {
  auto q = parse_plain_vector(j, path, length);
  if (!is_integral(q)) throw ParseError(path, "expected integer entries");
  return to_integer(q);
}

inline IntMatrix parse_int_matrix(const Json& j, const std::string& path, std::optional<std::size_t> rows,
                                  std::optional<std::size_t> cols) {
  require_array(j, path);
  if (rows && j.size() != *rows) throw ParseError(path, "expected " + std::to_string(*rows) + " rows");
  if (j.empty()) return IntMatrix(0, cols.value_or(0));
  auto first = parse_int_vector(j[0], child(path, 0), cols);
  IntMatrix m(0, first.size());
  for (std::size_t i = 0; i < j.size(); ++i) m.append_row(parse_int_vector(j[i], child(path, i), first.size()));
  return m;
}

/// A vector of X in any of the accepted notations.
inline RatVector parse_x_vector(const BasedRootDatum& brd, const Json& j, const std::string& path) {
  if (j.is_array()) return parse_plain_vector(j, path, brd.rank());
  if (!j.is_object() || j.size() != 1)
    throw ParseError(path, "expected an array or an object with one of eps, simple_roots, fundamental_weights");
  const auto& key = j.begin().key();
  const auto sub = child(path, key);
  try {
    if (key == "eps") return brd.from_epsilon(parse_plain_vector(j.begin().value(), sub, brd.epsilon_dimension()));
    if (key == "simple_roots") return brd.from_simple_roots(parse_plain_vector(j.begin().value(), sub, brd.semisimple_rank()));
    if (key == "fundamental_weights") return brd.from_fundamental_weights(parse_plain_vector(j.begin().value(), sub, brd.rank()));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(sub, e.what());
  }
  throw ParseError(sub, "unknown vector notation");
}

inline std::set<std::size_t> parse_simple_root_set(const Json& j, const std::string& path, std::size_t n) {
  require_array(j, path);
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto k = parse_size(j[i], child(path, i));
    if (k < 1 || k > n) throw ParseError(child(path, i), "simple roots are numbered 1.." + std::to_string(n));
    out.insert(k - 1);
  }
  return out;
}

inline std::vector<ColorRecord> parse_colors(const Json& j, const std::string& path, std::size_t d, std::size_t n) {
  require_array(j, path);
  std::vector<ColorRecord> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = child(path, i);
    check_keys(j[i], p, {"rho", "sigma"});
    out.push_back({parse_plain_vector(require(j[i], "rho", p), child(p, "rho"), d),
                   parse_simple_root_set(require(j[i], "sigma", p), child(p, "sigma"), n)});
  }
  return out;
}

inline IntMatrix basis_change(const Lattice& lattice, const IntMatrix& basis) {
  IntMatrix t(lattice.rank(), basis.rows());
  for (std::size_t i = 0; i < lattice.rank(); ++i) t.set_row(i, *solve_integral(basis, lattice.basis().row(i)));
  return t;
}

inline ModuleSpec parse_module(const Json& j, const std::string& path, const std::vector<std::string>& names) {
  ModuleSpec m;
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "center") m.kind = ModuleSpec::Kind::Center;
    else if (s == "simply_connected_center") m.kind = ModuleSpec::Kind::SimplyConnectedCenter;
    else throw ParseError(path, "expected \"center\", \"simply_connected_center\" or an explicit module");
    return m;
  }
  check_keys(j, path, {"presentation", "generators", "action"});
  std::optional<std::size_t> gens;
  if (j.contains("generators")) gens = parse_size(j["generators"], child(path, "generators"));
  m.presentation = parse_int_matrix(require(j, "presentation", path), child(path, "presentation"), std::nullopt, gens);
  if (m.presentation.rows() == 0 && !gens) throw ParseError(child(path, "generators"), "required when the presentation is empty");
  m.generators = m.presentation.cols();
  const auto apath = child(path, "action");
  const auto& action = j.contains("action") ? j["action"] : Json::object();
  if (!action.is_object()) throw ParseError(apath, "expected an object keyed by generator name");
  for (auto it = action.begin(); it != action.end(); ++it)
    if (std::find(names.begin(), names.end(), it.key()) == names.end())
      throw ParseError(child(apath, it.key()), "not a generator of the action");
  for (const auto& name : names) {
    if (!action.contains(name)) throw ParseError(child(apath, name), "missing matrix for generator '" + name + "'");
    m.action[name] = parse_int_matrix(action[name], child(apath, name), m.generators, m.generators);
  }
  return m;
}

inline MultiplicativeTypeModule build_module(const ModuleSpec& spec, const GaloisAction& action, const std::string& path) {
  try {
    switch (spec.kind) {
      case ModuleSpec::Kind::Center: return center_characters(action);
      case ModuleSpec::Kind::SimplyConnectedCenter: return simply_connected_center_characters(action);
      case ModuleSpec::Kind::Explicit: break;
    }
    std::vector<IntMatrix> mats;
    for (const auto& name : action.generator_names()) mats.push_back(spec.action.at(name));
    return MultiplicativeTypeModule(FgAbelianGroup(spec.presentation), action.generator_names(), std::move(mats));
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace detail

inline Problem parse_problem(const Json& j) {
  using namespace detail;
  Problem p;
  check_keys(j, "", {"schema", "name", "description", "root_datum", "action", "invariants", "horospherical",
                     "hypotheses", "cohomology", "fan"});
  if (parse_size(require(j, "schema", ""), "/schema") != 1) throw ParseError("/schema", "only schema 1 is supported");
  if (j.contains("name")) p.name = parse_string(j["name"], "/name");
  if (j.contains("description")) p.description = parse_string(j["description"], "/description");

  // root datum
  const auto& rd = require(j, "root_datum", "");
  check_keys(rd, "/root_datum", {"type", "isogeny", "torus_rank", "lattice"});
  p.type = parse_string(require(rd, "type", "/root_datum"), "/root_datum/type");
  auto iso = parse_string(require(rd, "isogeny", "/root_datum"), "/root_datum/isogeny");
  if (iso == "simply_connected") p.isogeny = Isogeny::SimplyConnected;
  else if (iso == "adjoint") p.isogeny = Isogeny::Adjoint;
  else if (iso == "custom") p.isogeny = Isogeny::Custom;
  else throw ParseError("/root_datum/isogeny", "expected simply_connected, adjoint or custom");
  if (rd.contains("torus_rank")) p.torus_rank = parse_size(rd["torus_rank"], "/root_datum/torus_rank");
  try {
    auto [components, torus] = BasedRootDatum::parse_type(p.type);
    std::size_t rank = torus + p.torus_rank;
    for (const auto& c : components) rank += c.rank;
    if (p.isogeny == Isogeny::Custom) {
      const auto& lat = require(rd, "lattice", "/root_datum");
      require_array(lat, "/root_datum/lattice");
      RatMatrix m(0, rank);
      for (std::size_t i = 0; i < lat.size(); ++i) m.append_row(parse_plain_vector(lat[i], child("/root_datum/lattice", i), rank));
      p.custom_lattice = m;
    } else if (rd.contains("lattice")) {
      throw ParseError("/root_datum/lattice", "only allowed with isogeny custom");
    }
    p.brd = BasedRootDatum::build(p.type, p.isogeny, p.custom_lattice, p.torus_rank);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError("/root_datum", e.what());
  }
  const auto& brd = p.brd;
  const std::size_t n = brd.semisimple_rank();

  // action
  const auto& act = require(j, "action", "");
  check_keys(act, "/action", {"generators"});
  const auto& gens = require_array(require(act, "generators", "/action"), "/action/generators");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto gp = child("/action/generators", g);
    check_keys(gens[g], gp, {"name", "s_permutation", "matrix_on_X"});
    GeneratorSpec spec{parse_string(require(gens[g], "name", gp), child(gp, "name")), {}};
    const bool has_perm = gens[g].contains("s_permutation"), has_matrix = gens[g].contains("matrix_on_X");
    if (has_perm == has_matrix) throw ParseError(gp, "give exactly one of s_permutation and matrix_on_X");
    if (has_perm) {
      const auto pp = child(gp, "s_permutation");
      auto v = parse_int_vector(gens[g]["s_permutation"], pp, n);
      std::vector<std::size_t> perm;
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] < 1 || v[i] > static_cast<long long>(n)) throw ParseError(child(pp, i), "simple roots are numbered 1.." + std::to_string(n));
        perm.push_back(static_cast<std::size_t>(v[i]) - 1);
      }
      spec.data = perm;
    } else {
      spec.data = parse_int_matrix(gens[g]["matrix_on_X"], child(gp, "matrix_on_X"), brd.rank(), brd.rank());
    }
    for (const auto& other : p.generators)
      if (other.name == spec.name) throw ParseError(child(gp, "name"), "duplicate generator name '" + spec.name + "'");
    try {
      build_action(brd, {spec});
    } catch (const InvalidAction& e) {
      throw ParseError(child(gp, has_perm ? "s_permutation" : "matrix_on_X"), e.what());
    } catch (const CapExceeded&) {
      // an infinite-order generator is reported by the closure below
    }
    p.generators.push_back(std::move(spec));
  }
  try {
    p.action = build_action(brd, p.generators);
  } catch (const std::exception& e) {
    throw ParseError("/action/generators", e.what());
  }

  // invariants
  std::optional<IntMatrix> to_hnf;  // T with HNF basis = T * stated basis
  if (j.contains("invariants")) {
    const auto& inv = j["invariants"];
    check_keys(inv, "/invariants", {"weight_lattice", "valuation_cone", "colors"});
    const auto& wl = require(inv, "weight_lattice", "/invariants");
    check_keys(wl, "/invariants/weight_lattice", {"basis"});
    const auto& bj = require_array(require(wl, "basis", "/invariants/weight_lattice"), "/invariants/weight_lattice/basis");
    IntMatrix basis(0, brd.rank());
    for (std::size_t i = 0; i < bj.size(); ++i) {
      const auto bp = child("/invariants/weight_lattice/basis", i);
      auto v = parse_x_vector(brd, bj[i], bp);
      if (!is_integral(v)) throw ParseError(bp, "weight lattice vectors must lie in X, got " + format_vector(v));
      basis.append_row(to_integer(v));
    }
    if (rank(basis) != basis.rows()) throw ParseError("/invariants/weight_lattice/basis", "basis vectors are linearly dependent");
    const std::size_t d = basis.rows();
    auto lattice = Lattice::span(brd.rank(), basis);
    to_hnf = basis_change(lattice, basis);

    const auto& vc = require(inv, "valuation_cone", "/invariants");
    check_keys(vc, "/invariants/valuation_cone", {"generators", "lineality", "inequalities", "equations"});
    auto read_list = [&](const char* key) {
      std::vector<RatVector> out;
      if (!vc.contains(key)) return out;
      const auto path = child("/invariants/valuation_cone", key);
      require_array(vc[key], path);
      for (std::size_t i = 0; i < vc[key].size(); ++i) out.push_back(parse_plain_vector(vc[key][i], child(path, i), d));
      return out;
    };
    auto cg = read_list("generators"), cl = read_list("lineality"), ci = read_list("inequalities"), ce = read_list("equations");
    const bool by_gens = vc.contains("generators") || vc.contains("lineality");
    const bool by_ineqs = vc.contains("inequalities") || vc.contains("equations");
    if (by_gens == by_ineqs) throw ParseError("/invariants/valuation_cone", "give generators/lineality or inequalities/equations");
    auto cone = by_gens ? RationalCone::from_generators(d, cg, cl) : RationalCone::from_inequalities(d, ci, ce);
    std::vector<ColorRecord> o1, o2;
    if (inv.contains("colors")) {
      const auto& cj = inv["colors"];
      check_keys(cj, "/invariants/colors", {"omega1", "omega2"});
      if (cj.contains("omega1")) o1 = parse_colors(cj["omega1"], "/invariants/colors/omega1", d, n);
      if (cj.contains("omega2")) o2 = parse_colors(cj["omega2"], "/invariants/colors/omega2", d, n);
    }
    try {
      p.invariants = make_invariants_in_basis(brd, basis, cone, std::move(o1), std::move(o2));
    } catch (const std::exception& e) {
      throw ParseError("/invariants", e.what());
    }
  }

  if (j.contains("horospherical")) {
    const auto& h = j["horospherical"];
    check_keys(h, "/horospherical", {"I", "M"});
    HorosphericalDatum datum;
    datum.I = parse_simple_root_set(require(h, "I", "/horospherical"), "/horospherical/I", n);
    const auto& mj = require_array(require(h, "M", "/horospherical"), "/horospherical/M");
    for (std::size_t i = 0; i < mj.size(); ++i) datum.M.push_back(parse_x_vector(brd, mj[i], child("/horospherical/M", i)));
    p.horospherical = std::move(datum);
  }

  // hypotheses
  const auto& hj = require(j, "hypotheses", "");
  check_keys(hj, "/hypotheses", {"field_is_large", "char_zero", "form_is_quasi_split", "normalizer_self_normalizing", "base_field"});
  if (hj.contains("field_is_large")) p.hypotheses.field_is_large = parse_bool(hj["field_is_large"], "/hypotheses/field_is_large");
  if (hj.contains("char_zero")) p.hypotheses.char_zero = parse_bool(hj["char_zero"], "/hypotheses/char_zero");
  if (hj.contains("form_is_quasi_split"))
    p.hypotheses.form_is_quasi_split = parse_bool(hj["form_is_quasi_split"], "/hypotheses/form_is_quasi_split");
  if (hj.contains("normalizer_self_normalizing")) {
    auto r = parse_normalizer_reason(parse_string(hj["normalizer_self_normalizing"], "/hypotheses/normalizer_self_normalizing"));
    if (!r) throw ParseError("/hypotheses/normalizer_self_normalizing", "expected AssertedTrue, ByHorospherical, BySymmetric or Unknown");
    p.hypotheses.normalizer = *r;
  }
  if (hj.contains("base_field")) {
    auto f = parse_base_field(parse_string(hj["base_field"], "/hypotheses/base_field"));
    if (!f) throw ParseError("/hypotheses/base_field", "expected p_adic, real or large_other");
    p.hypotheses.base_field = f;
  }
  if (p.hypotheses.normalizer == NormalizerReason::ByHorospherical && !p.horospherical)
    throw ParseError("/hypotheses/normalizer_self_normalizing", "ByHorospherical requires a horospherical block");

  if (j.contains("cohomology")) {
    const auto& cj = j["cohomology"];
    check_keys(cj, "/cohomology", {"A_characters", "Z_characters", "kappa_matrix"});
    CohomologySpec spec;
    const auto& names = p.action.generator_names();
    if (cj.contains("A_characters")) {
      spec.a_characters = parse_module(cj["A_characters"], "/cohomology/A_characters", names);
      p.cohomology.a_module = build_module(*spec.a_characters, p.action, "/cohomology/A_characters");
    }
    if (cj.contains("Z_characters")) {
      spec.z_characters = parse_module(cj["Z_characters"], "/cohomology/Z_characters", names);
      p.z_module = build_module(*spec.z_characters, p.action, "/cohomology/Z_characters");
    }
    if (cj.contains("kappa_matrix")) {
      if (!spec.a_characters || !spec.z_characters)
        throw ParseError("/cohomology/kappa_matrix", "needs both A_characters and Z_characters");
      const auto& z = *p.z_module;
      spec.kappa_matrix = parse_int_matrix(cj["kappa_matrix"], "/cohomology/kappa_matrix", z.characters().generator_count(),
                                           p.cohomology.a_module->characters().generator_count());
      try {
        p.cohomology.kappa = CharacterMap(*p.cohomology.a_module, z, *spec.kappa_matrix);
      } catch (const std::exception& e) {
        throw ParseError("/cohomology/kappa_matrix", e.what());
      }
    }
    p.cohomology_spec = std::move(spec);
  }

  if (j.contains("fan")) {
    if (!p.invariants) throw ParseError("/fan", "a fan needs the invariants block");
    const std::size_t d = p.invariants->v_dimension();
    const auto tq = to_rational(*to_hnf);
    const auto& fj = require(j, "fan", "");
    check_keys(fj, "/fan", {"cones"});
    const auto& cones = require_array(require(fj, "cones", "/fan"), "/fan/cones");
    std::vector<ColoredCone> out;
    for (std::size_t c = 0; c < cones.size(); ++c) {
      const auto cp = child("/fan/cones", c);
      check_keys(cones[c], cp, {"rays", "colors"});
      std::vector<RatVector> rays;
      if (cones[c].contains("rays")) {
        require_array(cones[c]["rays"], child(cp, "rays"));
        for (std::size_t i = 0; i < cones[c]["rays"].size(); ++i)
          rays.push_back(tq * parse_plain_vector(cones[c]["rays"][i], child(child(cp, "rays"), i), d));
      }
      std::vector<ColorRecord> colors;
      if (cones[c].contains("colors")) colors = parse_colors(cones[c]["colors"], child(cp, "colors"), d, n);
      for (auto& col : colors) col.rho = tq * col.rho;
      out.push_back(ColoredCone::make(d, rays, colors));
    }
    p.fan = ColoredFan(std::move(out));
  }
  return p;
}

inline Problem parse_problem_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", e.what());
  }
  return parse_problem(j);
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

// ---------------------------------------------------------------------------
// serialization

inline Json rational_json(const Rational& q) {
  if (is_integral(q)) {
    const Integer n = numerator(q);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return Json(static_cast<long long>(n));
  }
  return Json(to_string(q));
}

template <class T>
Json vector_json(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(Rational(x)));
  return out;
}

template <class T>
Json matrix_json(const Matrix<T>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

inline Json simple_root_set_json(const std::set<std::size_t>& s) {
  Json out = Json::array();
  for (auto i : s) out.push_back(i + 1);
  return out;
}

inline Json colors_json(const std::vector<ColorRecord>& colors) {
  Json out = Json::array();
  for (const auto& c : colors) out.push_back({{"rho", vector_json(c.rho)}, {"sigma", simple_root_set_json(c.sigma)}});
  return out;
}

inline Json module_json(const ModuleSpec& m) {
  if (m.kind == ModuleSpec::Kind::Center) return "center";
  if (m.kind == ModuleSpec::Kind::SimplyConnectedCenter) return "simply_connected_center";
  Json action = Json::object();
  for (const auto& [name, mat] : m.action) action[name] = matrix_json(mat);
  return {{"presentation", matrix_json(m.presentation)}, {"generators", m.generators}, {"action", action}};
}

/// Normalized form: X vectors in plain coordinates, the weight lattice in
/// its HNF basis, cones by rays and lineality.
inline Json serialize_problem(const Problem& p) {
  Json j = Json::object();
  j["schema"] = 1;
  if (!p.name.empty()) j["name"] = p.name;
  if (!p.description.empty()) j["description"] = p.description;
  Json rd = {{"type", p.type}, {"isogeny", to_string(p.isogeny)}};
  if (p.torus_rank) rd["torus_rank"] = p.torus_rank;
  if (p.custom_lattice) rd["lattice"] = matrix_json(*p.custom_lattice);
  j["root_datum"] = rd;

  Json gens = Json::array();
  for (const auto& g : p.generators) {
    Json gj = {{"name", g.name}};
    if (const auto* perm = std::get_if<std::vector<std::size_t>>(&g.data)) {
      Json pj = Json::array();
      for (auto i : *perm) pj.push_back(i + 1);
      gj["s_permutation"] = pj;
    } else {
      gj["matrix_on_X"] = matrix_json(std::get<IntMatrix>(g.data));
    }
    gens.push_back(gj);
  }
  j["action"] = {{"generators", gens}};

  if (p.invariants) {
    const auto& inv = *p.invariants;
    Json cone = {{"generators", Json::array()}};
    for (const auto& r : inv.valuation_cone.rays()) cone["generators"].push_back(vector_json(r));
    if (!inv.valuation_cone.lineality().empty()) {
      cone["lineality"] = Json::array();
      for (const auto& l : inv.valuation_cone.lineality()) cone["lineality"].push_back(vector_json(l));
    }
    Json basis = Json::array();
    for (std::size_t i = 0; i < inv.weight_lattice.rank(); ++i) basis.push_back(vector_json(inv.weight_lattice.basis().row(i)));
    j["invariants"] = {{"weight_lattice", {{"basis", basis}}},
                       {"valuation_cone", cone},
                       {"colors", {{"omega1", colors_json(inv.omega1)}, {"omega2", colors_json(inv.omega2)}}}};
  }
  if (p.horospherical) {
    Json m = Json::array();
    for (const auto& v : p.horospherical->M) m.push_back(vector_json(v));
    j["horospherical"] = {{"I", simple_root_set_json(p.horospherical->I)}, {"M", m}};
  }
  const auto& h = p.hypotheses;
  j["hypotheses"] = {{"field_is_large", h.field_is_large},
                     {"char_zero", h.char_zero},
                     {"form_is_quasi_split", h.form_is_quasi_split},
                     {"normalizer_self_normalizing", to_string(h.normalizer)}};
  if (h.base_field) j["hypotheses"]["base_field"] = to_string(*h.base_field);
  if (p.cohomology_spec) {
    Json c = Json::object();
    if (p.cohomology_spec->a_characters) c["A_characters"] = module_json(*p.cohomology_spec->a_characters);
    if (p.cohomology_spec->z_characters) c["Z_characters"] = module_json(*p.cohomology_spec->z_characters);
    if (p.cohomology_spec->kappa_matrix) c["kappa_matrix"] = matrix_json(*p.cohomology_spec->kappa_matrix);
    j["cohomology"] = c;
  }
  if (p.fan) {
    Json cones = Json::array();
    for (const auto& c : p.fan->cones()) {
      Json rays = Json::array();
      for (const auto& r : c.cone.rays()) rays.push_back(vector_json(r));
      for (const auto& l : c.cone.lineality()) {
        rays.push_back(vector_json(l));
        rays.push_back(vector_json(negate(l)));
      }
      cones.push_back({{"rays", rays}, {"colors", colors_json(c.colors)}});
    }
    j["fan"] = {{"cones", cones}};
  }
  return j;
}

}  // namespace sphdescent
