#pragma once

// Finitely generated abelian groups given by cokernel presentations.
//
// A presentation matrix with m rows and n columns presents Z^n / R where R is
// spanned by the rows.  Elements are integer column vectors in the n
// generators; endomorphisms act by x -> a x.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sphdescent/lattice.hpp"

namespace sphdescent {

/// Element enumeration refuses groups with more torsion elements than this.
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

class FgAbelianGroup {
 public:
  FgAbelianGroup() : FgAbelianGroup(IntMatrix(0, 0)) {}

  explicit FgAbelianGroup(IntMatrix presentation, std::optional<IntMatrix> inclusion = std::nullopt)
      : presentation_(std::move(presentation)), inclusion_(std::move(inclusion)) {
    const std::size_t n = presentation_.cols();
    auto res = snf(presentation_);
    factors_.assign(n, Integer(0));
    for (std::size_t i = 0; i < std::min(presentation_.rows(), n); ++i) factors_[i] = res.s(i, i);
    smith_ = res.v.transpose();
    smith_inverse_ = unimodular_inverse(smith_);
    relations_ = Lattice::span(n, presentation_);
  }

  /// Z/d1 x Z/d2 x ... (d = 0 gives a free factor).
  static FgAbelianGroup cyclic_product(const std::vector<long long>& orders) {
    IntMatrix p(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) p(i, i) = orders[i];
    return FgAbelianGroup(p);
  }

  std::size_t generator_count() const { return presentation_.cols(); }
  const IntMatrix& presentation() const { return presentation_; }
  const Lattice& relations() const { return relations_; }

  /// Column j is the image of generator j in the parent group, when this
  /// group was produced as a subgroup.
  const std::optional<IntMatrix>& inclusion() const { return inclusion_; }

  /// V^T from the Smith form U P V = S; maps generator coordinates to Smith
  /// coordinates.
  const IntMatrix& smith_transform() const { return smith_; }

  /// Full Smith diagonal, one entry per generator (units included).
  const IntVector& smith_diagonal() const { return factors_; }

  /// Nontrivial invariant factors d1 | d2 | ... with zeros (free part) last.
  IntVector invariant_factors() const {
    IntVector torsion, free;
    for (const auto& d : factors_) {
      if (d == 0)
        free.push_back(0);
      else if (d != 1)
        torsion.push_back(d);
    }
    torsion.insert(torsion.end(), free.begin(), free.end());
    return torsion;
  }

  std::size_t free_rank() const {
    return static_cast<std::size_t>(std::count(factors_.begin(), factors_.end(), Integer(0)));
  }
  bool is_finite() const { return free_rank() == 0; }

  Integer torsion_order() const {
    Integer o = 1;
    for (const auto& d : factors_)
      if (d != 0) o *= d;
    return o;
  }

  /// Order of a finite group; throws for infinite groups.
  Integer order() const {
    if (!is_finite()) throw std::domain_error("group has positive free rank");
    return torsion_order();
  }

  bool is_trivial() const { return is_finite() && torsion_order() == 1; }

  /// Smith coordinates y = V^T x, reduced mod the diagonal.
  IntVector smith_coordinates(const IntVector& x) const {
    auto y = smith_ * x;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (factors_[i] != 0) {
        y[i] %= factors_[i];
        if (y[i] < 0) y[i] += factors_[i];
      }
    return y;
  }

  bool is_zero_element(const IntVector& x) const { return relations_.contains(x); }
  bool equal_elements(const IntVector& a, const IntVector& b) const {
    IntVector d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return is_zero_element(d);
  }

  /// One representative per element of a finite group, in generator coordinates.
  std::vector<IntVector> elements(std::size_t cap = kDefaultEnumerationCap) const {
    if (!is_finite()) throw std::domain_error("cannot enumerate an infinite group");
    if (torsion_order() > cap)
      throw std::length_error("group has " + torsion_order().str() + " elements, above enumeration cap " +
                              std::to_string(cap));
    std::vector<IntVector> out;
    IntVector y(factors_.size(), Integer(0));
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == y.size()) {
        out.push_back(smith_inverse_ * y);
        return;
      }
      for (Integer k = 0; k < factors_[i]; ++k) {
        y[i] = k;
        rec(i + 1);
      }
    };
    rec(0);
    return out;
  }

  /// True iff x -> a x maps the relation subgroup into itself.
  bool descends(const IntMatrix& a) const {
    const std::size_t n = generator_count();
    if (a.rows() != n || a.cols() != n) return false;
    for (std::size_t i = 0; i < presentation_.rows(); ++i)
      if (!relations_.contains(a * presentation_.row(i))) return false;
    return true;
  }

  /// True iff a descends and the induced endomorphism is onto (hence bijective).
  bool is_automorphism(const IntMatrix& a) const {
    if (!descends(a)) return false;
    const std::size_t n = generator_count();
    IntMatrix gens = a.transpose();
    for (std::size_t i = 0; i < presentation_.rows(); ++i) gens.append_row(presentation_.row(i));
    return Lattice::span(n, gens) == Lattice::full(n);
  }

 private:
  IntMatrix presentation_;
  std::optional<IntMatrix> inclusion_;
  IntVector factors_;
  IntMatrix smith_;
  IntMatrix smith_inverse_;
  Lattice relations_;
};

class NotAnAutomorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Subgroup of elements fixed by every automorphism in `action`, computed as
/// L / R with L = {x : (a - 1) x in R for all a} (no element enumeration).
inline FgAbelianGroup fixed_points_fg(const FgAbelianGroup& group, const std::vector<IntMatrix>& action) {
  const std::size_t n = group.generator_count();
  for (std::size_t k = 0; k < action.size(); ++k)
    if (!group.is_automorphism(action[k]))
      throw NotAnAutomorphism("automorphism " + std::to_string(k) + " does not descend to an automorphism of the group");

  Lattice fixed_lifts = Lattice::full(n);
  if (!action.empty() && n > 0) {
    // unknowns: x (n) then one z block per automorphism; rows: V^T (a - 1) x - D z_a = 0
    const std::size_t k = action.size();
    IntMatrix big(k * n, n + k * n);
    const auto id = IntMatrix::identity(n);
    const IntMatrix& vt = group.smith_transform();
    const auto& diag = group.smith_diagonal();
    for (std::size_t b = 0; b < k; ++b) {
      auto block = vt * (action[b] - id);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) big(b * n + i, j) = block(i, j);
        big(b * n + i, n + b * n + i) = -diag[i];
      }
    }
    auto kernel = integer_right_kernel(big);
    IntMatrix lifts(0, n);
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
      auto row = kernel.row(r);
      lifts.append_row(IntVector(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n)));
    }
    fixed_lifts = Lattice::span(n, lifts);
  }

  const std::size_t p = fixed_lifts.rank();
  IntMatrix pres(0, p);
  for (std::size_t i = 0; i < group.presentation().rows(); ++i) {
    auto rel = group.presentation().row(i);
    if (is_zero(rel)) continue;
    pres.append_row(fixed_lifts.coordinates(rel));
  }
  if (pres.rows() == 0) pres = IntMatrix(0, p);
  return FgAbelianGroup(pres, fixed_lifts.basis().transpose());
}

}  // namespace sphdescent
