#pragma once

// Subgroups of Z^n kept in Hermite normal form, so equality is syntactic.

#include <string>
#include <vector>

#include "sphdescent/normal_form.hpp"

namespace sphdescent {

class Lattice {
 public:
  Lattice() = default;

  /// Lattice spanned by the rows of `generators` (any number, any rank).
  static Lattice span(std::size_t ambient_rank, const IntMatrix& generators) {
    if (!generators.empty() && generators.cols() != ambient_rank)
      throw DimensionError("lattice generators have length " + std::to_string(generators.cols()) +
                           ", expected " + std::to_string(ambient_rank));
    Lattice l;
    l.ambient_rank_ = ambient_rank;
    l.basis_ = IntMatrix(0, ambient_rank);
    if (generators.empty()) return l;
    auto h = hnf(generators).h;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      auto row = h.row(i);
      if (!is_zero(row)) l.basis_.append_row(row);
    }
    return l;
  }

  static Lattice span(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
    IntMatrix g(0, ambient_rank);
    for (const auto& v : generators) g.append_row(v);
    return span(ambient_rank, g);
  }

  static Lattice full(std::size_t n) { return span(n, IntMatrix::identity(n)); }
  static Lattice zero(std::size_t n) { return span(n, IntMatrix(0, n)); }

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const IntVector& v) const {
    if (v.size() != ambient_rank_) throw DimensionError("lattice membership: length mismatch");
    if (is_zero(v)) return true;
    if (rank() == 0) return false;
    return solve_integral(basis_, v).has_value();
  }

  bool contains(const Lattice& other) const {
    for (std::size_t i = 0; i < other.rank(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of v in the HNF basis; throws if v is not in the lattice.
  IntVector coordinates(const IntVector& v) const {
    if (is_zero(v)) return IntVector(rank(), Integer(0));
    auto c = solve_integral(basis_, v);
    if (!c) throw std::domain_error("vector " + format_vector(v) + " is not in the lattice");
    return *c;
  }

  /// Image under x -> g x (column convention).
  Lattice image(const IntMatrix& g) const {
    if (g.rows() != ambient_rank_ || g.cols() != ambient_rank_) throw DimensionError("lattice image: matrix shape");
    return span(ambient_rank_, basis_ * g.transpose());
  }

  bool is_saturated() const {
    if (rank() == 0) return true;
    for (const auto& d : invariant_factors(basis_))
      if (d != 1) return false;
    return true;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_rank_ = 0;
  IntMatrix basis_;
};

/// True iff the two subgroups coincide; throws on ambient rank mismatch.
inline bool sublattice_equal(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw DimensionError("sublattice_equal: ambient ranks " + std::to_string(a.ambient_rank()) + " and " +
                         std::to_string(b.ambient_rank()));
  return a == b;
}

/// Common fixed sublattice {v : g v = v for every generator}.
inline Lattice fixed_sublattice(std::size_t ambient_rank, const std::vector<IntMatrix>& generators) {
  if (generators.empty()) return Lattice::full(ambient_rank);
  // v (g - I) ^T = 0 for all g  <=>  v lies in the left kernel of [ (g1-I)^T | (g2-I)^T | ... ]
  IntMatrix stacked(ambient_rank, ambient_rank * generators.size());
  const auto id = IntMatrix::identity(ambient_rank);
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& g = generators[k];
    if (g.rows() != ambient_rank || g.cols() != ambient_rank)
      throw DimensionError("fixed_sublattice: generator " + std::to_string(k) + " is not " +
                           std::to_string(ambient_rank) + "x" + std::to_string(ambient_rank));
    if (!is_unimodular(g))
      throw std::invalid_argument("fixed_sublattice: generator " + std::to_string(k) + " is not unimodular");
    auto d = (g - id).transpose();
    for (std::size_t i = 0; i < ambient_rank; ++i)
      for (std::size_t j = 0; j < ambient_rank; ++j) stacked(i, k * ambient_rank + j) = d(i, j);
  }
  return Lattice::span(ambient_rank, integer_left_kernel(stacked));
}

/// Matrix of x -> g x restricted to `l`, in the coordinates of l's basis
/// (column convention); nullopt when g does not map l onto itself.
inline std::optional<IntMatrix> restrict_to(const Lattice& l, const IntMatrix& g) {
  if (!(l.image(g) == l)) return std::nullopt;
  const std::size_t k = l.rank();
  IntMatrix coef(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto img = g * l.basis().row(i);
    coef.set_row(i, l.coordinates(img));
  }
  return coef.transpose();
}

}  // namespace sphdescent
