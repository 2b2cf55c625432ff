#pragma once

// The *-action: a finite group of based root datum automorphisms given by
// named generators, with its closure and the actions it induces on
// sublattices of X, on their duals, and on subsets of S.

#include <map>
#include <set>
#include <string>
#include <variant>

#include "sphdescent/root_datum.hpp"

namespace sphdescent {

inline constexpr std::size_t kDefaultClosureCap = 10'000;

class InvalidAction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A generator given either as a permutation of simple-root indices
/// (0-based, alpha_i -> alpha_{p[i]}) or as a matrix on X.
struct GeneratorSpec {
  std::string name;
  std::variant<std::vector<std::size_t>, IntMatrix> data;
};

struct ActionElement {
  IntMatrix matrix;
  std::vector<std::size_t> simple_permutation;
  std::vector<std::size_t> word;  // generator indices, leftmost applied last
  std::string label;
};

class GaloisAction {
 public:
  GaloisAction() = default;

  const BasedRootDatum& root_datum() const { return brd_; }
  const std::vector<std::string>& generator_names() const { return names_; }
  std::size_t generator_count() const { return names_.size(); }

  /// Closure elements in BFS order; element 0 is the identity.
  const std::vector<ActionElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool is_trivial() const { return elements_.size() == 1; }

  const IntMatrix& generator_matrix(std::size_t g) const { return elements_.at(generator_elements_.at(g)).matrix; }
  const ActionElement& generator(std::size_t g) const { return elements_.at(generator_elements_.at(g)); }
  std::size_t generator_element_index(std::size_t g) const { return generator_elements_.at(g); }

  std::optional<std::size_t> find(const IntMatrix& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend GaloisAction build_action(const BasedRootDatum& brd, const std::vector<GeneratorSpec>& gens, std::size_t cap);

 private:
  BasedRootDatum brd_;
  std::vector<std::string> names_;
  std::vector<std::size_t> generator_elements_;
  std::vector<ActionElement> elements_;
  std::map<IntMatrix, std::size_t> index_;
};

inline std::string word_label(const std::vector<std::string>& names, const std::vector<std::size_t>& word) {
  if (word.empty()) return "id";
  std::string s;
  for (auto g : word) {
    if (!s.empty()) s += "*";
    s += names[g];
  }
  return s;
}

/// Validates the generators and computes the finite group they generate.
/// Throws InvalidAction for a non-automorphism and CapExceeded when the
/// closure grows beyond `cap` (the image of the action must be finite).
inline GaloisAction build_action(const BasedRootDatum& brd, const std::vector<GeneratorSpec>& gens,
                                 std::size_t cap = kDefaultClosureCap) {
  GaloisAction act;
  act.brd_ = brd;
  std::vector<BRDAutomorphism> auts;
  std::set<std::string> seen_names;
  for (const auto& g : gens) {
    if (!seen_names.insert(g.name).second) throw InvalidAction("duplicate generator name '" + g.name + "'");
    act.names_.push_back(g.name);
    IntMatrix m;
    if (const auto* perm = std::get_if<std::vector<std::size_t>>(&g.data)) {
      std::optional<IntMatrix> ext;
      try {
        ext = brd.diagram_matrix(*perm);
      } catch (const InvalidRootDatum& e) {
        throw InvalidAction("generator '" + g.name + "': " + e.what());
      }
      if (!ext) throw InvalidAction("generator '" + g.name + "': the diagram permutation does not stabilize X");
      m = *ext;
    } else {
      m = std::get<IntMatrix>(g.data);
    }
    auto aut = brd.as_automorphism(m);
    if (!aut) throw InvalidAction("generator '" + g.name + "' is not an automorphism of the based root datum");
    auts.push_back(*aut);
  }

  auto add = [&](IntMatrix m, std::vector<std::size_t> word) -> std::size_t {
    auto [it, inserted] = act.index_.emplace(m, act.elements_.size());
    if (!inserted) return it->second;
    if (act.elements_.size() >= cap)
      throw CapExceeded("the action generates more than " + std::to_string(cap) +
                        " automorphisms; the *-action must have finite image");
    auto aut = brd.as_automorphism(m);
    act.elements_.push_back({m, aut->simple_permutation, word, word_label(act.names_, word)});
    return act.elements_.size() - 1;
  };
  add(IntMatrix::identity(brd.rank()), {});
  for (std::size_t g = 0; g < auts.size(); ++g) act.generator_elements_.push_back(add(auts[g].matrix, {g}));
  for (std::size_t i = 0; i < act.elements_.size(); ++i) {
    for (std::size_t g = 0; g < auts.size(); ++g) {
      std::vector<std::size_t> word{g};
      const auto& w = act.elements_[i].word;
      word.insert(word.end(), w.begin(), w.end());
      add(auts[g].matrix * act.elements_[i].matrix, std::move(word));
    }
  }
  return act;
}

struct SublatticeAction {
  /// Restricted matrices in the basis of L, one per closure element; empty
  /// when L is not stable.
  std::vector<IntMatrix> matrices;
  std::optional<std::string> violator;

  bool stable() const { return !violator.has_value(); }
};

inline SublatticeAction induced_action_on_sublattice(const GaloisAction& action, const Lattice& l) {
  if (l.ambient_rank() != action.root_datum().rank()) throw DimensionError("sublattice lives in the wrong ambient rank");
  SublatticeAction out;
  for (const auto& e : action.elements()) {
    auto r = restrict_to(l, e.matrix);
    if (!r) {
      out.matrices.clear();
      out.violator = e.label;
      return out;
    }
    out.matrices.push_back(std::move(*r));
  }
  return out;
}

/// Inverse-transpose of the restricted matrices: the action on
/// V = Hom(L, Q) in the basis dual to the HNF basis of L.
inline std::vector<IntMatrix> dual_action_on_V(const GaloisAction& action, const Lattice& weight_lattice) {
  auto res = induced_action_on_sublattice(action, weight_lattice);
  if (!res.stable()) throw InvalidAction("element '" + *res.violator + "' does not stabilize the weight lattice");
  std::vector<IntMatrix> out;
  for (const auto& m : res.matrices) out.push_back(unimodular_inverse(m).transpose());
  return out;
}

/// Image of a set of simple-root indices under closure element `element`.
inline std::set<std::size_t> action_on_simple_subset(const GaloisAction& action, const std::set<std::size_t>& subset,
                                                     std::size_t element) {
  const auto& perm = action.elements().at(element).simple_permutation;
  std::set<std::size_t> out;
  for (auto i : subset) {
    if (i >= perm.size()) throw std::out_of_range("simple root index " + std::to_string(i) + " out of range");
    out.insert(perm[i]);
  }
  return out;
}

}  // namespace sphdescent
