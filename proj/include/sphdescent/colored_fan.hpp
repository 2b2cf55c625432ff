#pragma once

// Colored cones and colored fans in V = Hom(weight lattice, Q): faces, the
// fan axioms, the wonderful fan of a valuation cone, and Gamma-stability.

#include <string>
#include <vector>

#include "sphdescent/cone.hpp"
#include "sphdescent/galois_action.hpp"

namespace sphdescent {

/// Image (rho(D), sigma(D)) of a color: a vector of V and a set of
/// simple-root indices.
struct ColorRecord {
  RatVector rho;
  std::set<std::size_t> sigma;

  friend bool operator==(const ColorRecord& a, const ColorRecord& b) { return a.rho == b.rho && a.sigma == b.sigma; }
  friend bool operator<(const ColorRecord& a, const ColorRecord& b) {
    if (a.rho != b.rho) return a.rho < b.rho;
    return a.sigma < b.sigma;
  }
};

/// (m rho, p(sigma)) for a matrix m on V and a permutation p of S.
inline ColorRecord act_on_color(const ColorRecord& c, const RatMatrix& m, const std::vector<std::size_t>& perm) {
  ColorRecord out;
  out.rho = m * c.rho;
  for (auto i : c.sigma) out.sigma.insert(perm.at(i));
  return out;
}

inline std::vector<ColorRecord> normalized_colors(std::vector<ColorRecord> colors) {
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  return colors;
}

class NotStrictlyConvex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ColoredCone {
  RationalCone cone;
  std::vector<ColorRecord> colors;  // sorted, unique

  /// Cone generated by `generators` together with rho of every color.
  static ColoredCone make(std::size_t d, const std::vector<RatVector>& generators, std::vector<ColorRecord> colors) {
    std::vector<RatVector> gens = generators;
    for (const auto& c : colors) {
      if (c.rho.size() != d) throw DimensionError("color vector has length " + std::to_string(c.rho.size()));
      gens.push_back(c.rho);
    }
    return {RationalCone::from_generators(d, gens), normalized_colors(std::move(colors))};
  }

  ColoredCone image(const RatMatrix& m, const std::vector<std::size_t>& perm) const {
    std::vector<ColorRecord> img;
    for (const auto& c : colors) img.push_back(act_on_color(c, m, perm));
    return {cone.image(m), normalized_colors(std::move(img))};
  }

  friend bool operator==(const ColoredCone& a, const ColoredCone& b) { return a.cone == b.cone && a.colors == b.colors; }
  friend bool operator<(const ColoredCone& a, const ColoredCone& b) {
    if (a.cone != b.cone) return a.cone < b.cone;
    return a.colors < b.colors;
  }
};

/// Problems with a colored cone relative to the valuation cone: lineality,
/// a color with rho = 0, or an extreme ray that is neither in the valuation
/// cone nor spanned by the image of a color.
inline std::vector<std::string> colored_cone_problems(const ColoredCone& c, const RationalCone& valuation_cone) {
  std::vector<std::string> out;
  if (!c.cone.is_strictly_convex()) out.push_back("cone is not strictly convex");
  for (const auto& col : c.colors)
    if (is_zero(col.rho)) out.push_back("a color has rho = 0");
  for (const auto& r : c.cone.rays()) {
    bool ok = valuation_cone.contains(r);
    for (const auto& col : c.colors)
      if (!ok && !is_zero(col.rho)) ok = primitive(col.rho) == r;
    if (!ok) out.push_back("ray " + format_vector(r) + " is neither in the valuation cone nor the image of a color");
  }
  return out;
}

/// All faces (C0, F0) with F0 = {D in F : rho(D) in C0}.
inline std::vector<ColoredCone> faces(const ColoredCone& c) {
  std::vector<ColoredCone> out;
  for (auto& f : c.cone.faces()) {
    std::vector<ColorRecord> cols;
    for (const auto& col : c.colors)
      if (f.contains(col.rho)) cols.push_back(col);
    out.push_back({std::move(f), std::move(cols)});
  }
  return out;
}

class ColoredFan {
 public:
  ColoredFan() = default;
  explicit ColoredFan(std::vector<ColoredCone> cones) : cones_(std::move(cones)) {
    std::sort(cones_.begin(), cones_.end());
    cones_.erase(std::unique(cones_.begin(), cones_.end()), cones_.end());
  }

  const std::vector<ColoredCone>& cones() const { return cones_; }
  bool contains(const ColoredCone& c) const { return std::binary_search(cones_.begin(), cones_.end(), c); }
  friend bool operator==(const ColoredFan& a, const ColoredFan& b) { return a.cones_ == b.cones_; }

 private:
  std::vector<ColoredCone> cones_;
};

struct FanVerdict {
  bool nonempty = true;
  bool cones_ok = true;
  bool axiom_i = true;
  bool axiom_ii = true;
  bool axiom_iii = true;
  std::vector<std::string> problems;

  bool valid() const { return nonempty && cones_ok && axiom_i && axiom_ii && axiom_iii; }
};

inline FanVerdict is_valid_fan(const ColoredFan& fan, const RationalCone& valuation_cone) {
  const std::size_t d = valuation_cone.ambient_dim();
  for (const auto& c : fan.cones())
    if (c.cone.ambient_dim() != d) throw DimensionError("fan cone and valuation cone live in different dimensions");
  FanVerdict v;
  const auto& cones = fan.cones();
  if (cones.empty()) {
    v.nonempty = false;
    v.problems.push_back("fan is empty");
  }
  for (std::size_t i = 0; i < cones.size(); ++i) {
    for (const auto& p : colored_cone_problems(cones[i], valuation_cone)) {
      v.cones_ok = false;
      v.problems.push_back("cone " + std::to_string(i) + ": " + p);
    }
    if (!relative_interior_meets(cones[i].cone, valuation_cone).feasible) {
      v.axiom_i = false;
      v.problems.push_back("axiom (i): relative interior of cone " + std::to_string(i) + " misses the valuation cone");
    }
    for (const auto& f : faces(cones[i])) {
      if (!relative_interior_meets(f.cone, valuation_cone).feasible) continue;
      if (!fan.contains(f)) {
        v.axiom_ii = false;
        v.problems.push_back("axiom (ii): a face of cone " + std::to_string(i) + " with rays " +
                             std::to_string(f.cone.rays().size()) + " meeting the valuation cone is missing");
      }
    }
  }
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j)
      if (relative_interiors_meet_in(cones[i].cone, cones[j].cone, valuation_cone).feasible) {
        v.axiom_iii = false;
        v.problems.push_back("axiom (iii): cones " + std::to_string(i) + " and " + std::to_string(j) +
                             " share a relative interior point in the valuation cone");
      }
  return v;
}

/// The colorless face fan of a strictly convex valuation cone.
inline ColoredFan wonderful_fan(const RationalCone& valuation_cone) {
  if (!valuation_cone.is_strictly_convex())
    throw NotStrictlyConvex("valuation cone has a lineality space of dimension " +
                            std::to_string(valuation_cone.lineality().size()) +
                            "; no wonderful embedding is representable");
  std::vector<ColoredCone> cones;
  for (auto& f : valuation_cone.faces()) cones.push_back({std::move(f), {}});
  return ColoredFan(std::move(cones));
}

/// Colored cones of the fan not contained in any other cone of the fan.
inline std::vector<ColoredCone> maximal_cones(const ColoredFan& fan) {
  std::vector<ColoredCone> out;
  for (const auto& c : fan.cones()) {
    bool maximal = true;
    for (const auto& o : fan.cones())
      if (!(o == c) && o.cone.contains(c.cone) && !(o.cone == c.cone)) maximal = false;
    if (maximal) out.push_back(c);
  }
  return out;
}

inline bool is_wonderful(const ColoredFan& fan, const RationalCone& valuation_cone) {
  for (const auto& c : fan.cones())
    if (!c.colors.empty()) return false;
  auto top = maximal_cones(fan);
  return top.size() == 1 && top[0].cone == valuation_cone;
}

struct StabilityResult {
  bool stable = true;
  std::optional<std::string> generator;
  std::optional<std::size_t> cone_index;
};

/// Checks (g C, g F) in the fan for every generator g and colored cone; g acts
/// on V by the dual of its action on the weight lattice.
inline StabilityResult is_gamma_stable(const ColoredFan& fan, const GaloisAction& action, const Lattice& weight_lattice) {
  auto dual = dual_action_on_V(action, weight_lattice);
  StabilityResult res;
  for (std::size_t g = 0; g < action.generator_count(); ++g) {
    std::size_t e = action.generator_element_index(g);
    auto m = to_rational(dual[e]);
    const auto& perm = action.elements()[e].simple_permutation;
    for (std::size_t i = 0; i < fan.cones().size(); ++i)
      if (!fan.contains(fan.cones()[i].image(m, perm))) {
        res.stable = false;
        res.generator = action.generator_names()[g];
        res.cone_index = i;
        return res;
      }
  }
  return res;
}

}  // namespace sphdescent
