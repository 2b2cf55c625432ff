#pragma once

// Brute-force Weyl group computations: orbits, orthogonal root quadruples in
// D4, and conjugacy of root subsets by lazy search through W.

#include <optional>
#include <set>
#include <vector>

#include "sphdescent/root_datum.hpp"

namespace sphdescent {

inline constexpr std::size_t kDefaultOrbitCap = 10'000'000;

/// A set of roots, kept sorted so equality is syntactic.
class RootSubset {
 public:
  RootSubset() = default;

  /// Throws std::invalid_argument if some vector is not a root of brd.
  RootSubset(const BasedRootDatum& brd, std::vector<IntVector> roots) : roots_(std::move(roots)) {
    for (const auto& r : roots_)
      if (!brd.root_index(r)) throw std::invalid_argument("vector " + format_vector(r) + " is not a root");
    normalize();
  }

  static RootSubset from_indices(const BasedRootDatum& brd, const std::vector<std::size_t>& indices) {
    std::vector<IntVector> v;
    for (auto i : indices) v.push_back(brd.roots().at(i));
    return RootSubset(brd, std::move(v));
  }

  /// The subset together with the negatives of its elements.
  RootSubset symmetrized() const {
    RootSubset out = *this;
    for (const auto& r : roots_) out.roots_.push_back(negate(r));
    out.normalize();
    return out;
  }

  RootSubset image(const IntMatrix& m) const {
    RootSubset out;
    for (const auto& r : roots_) out.roots_.push_back(m * r);
    out.normalize();
    return out;
  }

  bool is_negation_closed() const { return symmetrized() == *this; }

  const std::vector<IntVector>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }

  friend bool operator==(const RootSubset& a, const RootSubset& b) { return a.roots_ == b.roots_; }
  friend bool operator<(const RootSubset& a, const RootSubset& b) { return a.roots_ < b.roots_; }

 private:
  void normalize() {
    std::sort(roots_.begin(), roots_.end());
    roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());
  }

  std::vector<IntVector> roots_;
};

/// W-orbit of v (X coordinates, rational allowed) by closure under simple
/// reflections; sorted.  Throws CapExceeded beyond `cap` vectors.
inline std::vector<RatVector> weyl_orbit(const BasedRootDatum& brd, const RatVector& v,
                                         std::size_t cap = kDefaultOrbitCap) {
  if (v.size() != brd.rank()) throw DimensionError("weyl_orbit: expected a vector of length " + std::to_string(brd.rank()));
  std::set<RatVector> seen{v};
  std::deque<RatVector> queue{v};
  while (!queue.empty()) {
    RatVector x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < brd.semisimple_rank(); ++i) {
      Rational c = brd.pairing(x, brd.simple_coroot(i));
      if (c == 0) continue;
      RatVector y = x;
      for (std::size_t k = 0; k < y.size(); ++k) y[k] -= c * brd.simple_root(i)[k];
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw CapExceeded("Weyl orbit exceeds cap " + std::to_string(cap));
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

inline std::vector<RatVector> weyl_orbit(const BasedRootDatum& brd, const IntVector& v,
                                         std::size_t cap = kDefaultOrbitCap) {
  return weyl_orbit(brd, to_rational(v), cap);
}

inline bool is_type_d4(const BasedRootDatum& brd) {
  return brd.components().size() == 1 && brd.components()[0] == CartanComponent{'D', 4};
}

/// Negation-closed sets {±b0, ±b1, ±b2, ±b3} of pairwise orthogonal roots in
/// a datum of type D4 (torus factors allowed), sorted.
inline std::vector<RootSubset> orthogonal_quadruples(const BasedRootDatum& brd) {
  if (!is_type_d4(brd)) throw std::invalid_argument("orthogonal_quadruples requires type D4, got " + brd.type_label());
  const std::size_t n = brd.positive_root_count();
  const auto& roots = brd.roots();
  auto orth = [&](std::size_t a, std::size_t b) { return brd.inner_product(roots[a], roots[b]) == 0; };
  std::set<RootSubset> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!orth(a, b)) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (!orth(a, c) || !orth(b, c)) continue;
        for (std::size_t d = c + 1; d < n; ++d)
          if (orth(a, d) && orth(b, d) && orth(c, d))
            out.insert(RootSubset::from_indices(brd, {a, b, c, d}).symmetrized());
      }
    }
  return {out.begin(), out.end()};
}

/// First element w of W in BFS order with w(a) = b, or nullopt.
inline std::optional<WeylElement> are_weyl_conjugate(const BasedRootDatum& brd, const RootSubset& a, const RootSubset& b,
                                                     std::size_t cap = kDefaultWeylCap) {
  if (brd.weyl_group_order() > cap)
    throw CapExceeded("|W| = " + brd.weyl_group_order().str() + " exceeds cap " + std::to_string(cap));
  if (a.size() != b.size()) return std::nullopt;
  std::optional<WeylElement> witness;
  visit_weyl_group(brd, cap, [&](const WeylElement& w) {
    if (a.image(w.matrix) == b) witness = w;
    return witness.has_value();
  });
  return witness;
}

}  // namespace sphdescent
