#pragma once

// Combinatorial invariants (weight lattice, valuation cone, color data) of a
// spherical homogeneous space, horospherical data (I, M), and the checks that
// a *-action preserves them.
//
// V = Hom(weight lattice, Q) is coordinatized by the basis dual to the HNF
// basis of the weight lattice.

#include <optional>
#include <string>
#include <vector>

#include "sphdescent/colored_fan.hpp"

namespace sphdescent {

class InvalidInvariants : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SphericalInvariants {
  Lattice weight_lattice;
  RationalCone valuation_cone;
  std::vector<ColorRecord> omega1;
  std::vector<ColorRecord> omega2;

  std::size_t v_dimension() const { return weight_lattice.rank(); }
};

/// Sorts color lists and checks dimensions, simple-root indices and that no
/// record lies in both lists.  Throws InvalidInvariants.
inline SphericalInvariants make_invariants(const BasedRootDatum& brd, Lattice weight_lattice, RationalCone valuation_cone,
                                           std::vector<ColorRecord> omega1, std::vector<ColorRecord> omega2) {
  if (weight_lattice.ambient_rank() != brd.rank())
    throw InvalidInvariants("weight lattice lives in Z^" + std::to_string(weight_lattice.ambient_rank()) +
                            " but X has rank " + std::to_string(brd.rank()));
  const std::size_t d = weight_lattice.rank();
  if (valuation_cone.ambient_dim() != d)
    throw InvalidInvariants("valuation cone lives in Q^" + std::to_string(valuation_cone.ambient_dim()) +
                            " but the weight lattice has rank " + std::to_string(d));
  for (const auto* list : {&omega1, &omega2})
    for (const auto& c : *list) {
      if (c.rho.size() != d) throw InvalidInvariants("color vector " + format_vector(c.rho) + " has the wrong length");
      for (auto s : c.sigma)
        if (s >= brd.semisimple_rank()) throw InvalidInvariants("color refers to simple root " + std::to_string(s + 1) + " which does not exist");
    }
  SphericalInvariants inv{std::move(weight_lattice), std::move(valuation_cone), normalized_colors(std::move(omega1)),
                          normalized_colors(std::move(omega2))};
  for (const auto& c : inv.omega1)
    if (std::binary_search(inv.omega2.begin(), inv.omega2.end(), c))
      throw InvalidInvariants("color record " + format_vector(c.rho) + " appears in both omega1 and omega2");
  return inv;
}

/// Same as make_invariants, but the cone and the color vectors are given in
/// the basis of V dual to the rows of `basis` (a basis of the weight
/// lattice).  If H = T U with U = basis and H the HNF basis, a functional
/// with coordinates phi_U has coordinates T phi_U.
inline SphericalInvariants make_invariants_in_basis(const BasedRootDatum& brd, const IntMatrix& basis,
                                                    const RationalCone& valuation_cone, std::vector<ColorRecord> omega1,
                                                    std::vector<ColorRecord> omega2) {
  if (basis.cols() != brd.rank()) throw InvalidInvariants("weight lattice basis vectors must have length " + std::to_string(brd.rank()));
  if (rank(basis) != basis.rows()) throw InvalidInvariants("weight lattice basis is linearly dependent");
  auto lattice = Lattice::span(brd.rank(), basis);
  if (valuation_cone.ambient_dim() != basis.rows())
    throw InvalidInvariants("valuation cone lives in Q^" + std::to_string(valuation_cone.ambient_dim()) +
                            " but the weight lattice has rank " + std::to_string(basis.rows()));
  IntMatrix t(lattice.rank(), basis.rows());
  for (std::size_t i = 0; i < lattice.rank(); ++i) t.set_row(i, *solve_integral(basis, lattice.basis().row(i)));
  auto tq = to_rational(t);
  for (auto* list : {&omega1, &omega2})
    for (auto& c : *list) {
      if (c.rho.size() != basis.rows()) throw InvalidInvariants("color vector " + format_vector(c.rho) + " has the wrong length");
      c.rho = tq * c.rho;
    }
  return make_invariants(brd, lattice, valuation_cone.image(t), std::move(omega1), std::move(omega2));
}

inline bool invariants_equal(const SphericalInvariants& a, const SphericalInvariants& b) {
  if (a.weight_lattice.ambient_rank() != b.weight_lattice.ambient_rank())
    throw DimensionError("invariants refer to character lattices of different rank");
  return a.weight_lattice == b.weight_lattice && a.valuation_cone == b.valuation_cone && a.omega1 == b.omega1 &&
         a.omega2 == b.omega2;
}

struct PreservationFlags {
  bool x_ok = false;
  std::optional<bool> v_ok, omega1_ok, omega2_ok;  // absent when x_ok is false

  bool all() const { return x_ok && *v_ok && *omega1_ok && *omega2_ok; }
};

/// The invariants transported by closure element `element`; nullopt when it
/// does not stabilize the weight lattice.
inline std::optional<SphericalInvariants> apply_action(const GaloisAction& action, std::size_t element,
                                                       const SphericalInvariants& inv) {
  const auto& e = action.elements().at(element);
  auto r = restrict_to(inv.weight_lattice, e.matrix);
  if (!r) return std::nullopt;
  auto dual = to_rational(unimodular_inverse(*r).transpose());
  auto move_colors = [&](const std::vector<ColorRecord>& cs) {
    std::vector<ColorRecord> out;
    for (const auto& c : cs) out.push_back(act_on_color(c, dual, e.simple_permutation));
    return normalized_colors(std::move(out));
  };
  return SphericalInvariants{inv.weight_lattice, inv.valuation_cone.image(dual), move_colors(inv.omega1),
                             move_colors(inv.omega2)};
}

inline PreservationFlags preserves_invariants(const GaloisAction& action, std::size_t element,
                                              const SphericalInvariants& inv) {
  PreservationFlags f;
  auto moved = apply_action(action, element, inv);
  if (!moved) return f;
  f.x_ok = true;
  f.v_ok = moved->valuation_cone == inv.valuation_cone;
  f.omega1_ok = moved->omega1 == inv.omega1;
  f.omega2_ok = moved->omega2 == inv.omega2;
  return f;
}

/// Horospherical datum: a set I of simple-root indices and generators of M
/// in X coordinates (rational entries allowed, so that data quoted with
/// halves can be recorded and flagged rather than rejected).
struct HorosphericalDatum {
  std::set<std::size_t> I;
  std::vector<RatVector> M;
};

/// The Z-span of the M generators, scaled by the common denominator so it
/// sits in Z^rank; invariance of this lattice is invariance of the span.
inline Lattice scaled_m_lattice(std::size_t rank, const std::vector<RatVector>& gens) {
  Integer den = 1;
  for (const auto& g : gens)
    for (const auto& q : g) den = lcm(den, denominator(q));
  IntMatrix m(0, rank);
  for (const auto& g : gens) {
    if (g.size() != rank) throw DimensionError("M generator has length " + std::to_string(g.size()));
    IntVector row;
    for (const auto& q : g) row.push_back(numerator(q * den));
    m.append_row(row);
  }
  return Lattice::span(rank, m);
}

/// {chi in X : <chi, alpha^v> = 0 for alpha in I}.
inline Lattice characters_orthogonal_to(const BasedRootDatum& brd, const std::set<std::size_t>& I) {
  IntMatrix cols(brd.rank(), I.size());
  std::size_t j = 0;
  for (auto i : I) {
    for (std::size_t k = 0; k < brd.rank(); ++k) cols(k, j) = brd.simple_coroot(i)[k];
    ++j;
  }
  if (I.empty()) return Lattice::full(brd.rank());
  return Lattice::span(brd.rank(), integer_left_kernel(cols));
}

struct HorosphericalCheck {
  bool invariant = true;
  std::optional<std::string> violator;
  std::string reason;
};

inline HorosphericalCheck horospherical_check(const GaloisAction& action, std::size_t element, const HorosphericalDatum& datum) {
  const auto& brd = action.root_datum();
  const auto& e = action.elements().at(element);
  HorosphericalCheck out;
  if (action_on_simple_subset(action, datum.I, element) != datum.I) {
    out.invariant = false;
    out.violator = e.label;
    out.reason = "I is moved";
    return out;
  }
  auto m = scaled_m_lattice(brd.rank(), datum.M);
  if (!(m.image(e.matrix) == m)) {
    out.invariant = false;
    out.violator = e.label;
    out.reason = "M is moved";
  }
  return out;
}

/// True iff every closure element fixes I and M.
inline HorosphericalCheck horospherical_invariant(const GaloisAction& action, const HorosphericalDatum& datum) {
  for (std::size_t k = 0; k < action.order(); ++k) {
    auto c = horospherical_check(action, k, datum);
    if (!c.invariant) return c;
  }
  return {};
}

/// Named warnings: generators of M not orthogonal to the coroots of I, and
/// generators of M outside X.
inline std::vector<std::string> validate_horospherical(const BasedRootDatum& brd, const HorosphericalDatum& datum) {
  std::vector<std::string> warnings;
  for (auto i : datum.I)
    if (i >= brd.semisimple_rank()) throw std::out_of_range("I refers to simple root " + std::to_string(i + 1) + " which does not exist");
  for (const auto& g : datum.M) {
    if (g.size() != brd.rank()) throw DimensionError("M generator has length " + std::to_string(g.size()));
    for (auto i : datum.I) {
      auto p = brd.pairing(g, brd.simple_coroot(i));
      if (p != 0)
        warnings.push_back("orthogonality: <" + format_vector(g) + ", alpha_" + std::to_string(i + 1) + "^v> = " + to_string(p));
    }
    if (!is_integral(g)) warnings.push_back("membership: " + format_vector(g) + " is not in X");
  }
  return warnings;
}

}  // namespace sphdescent
