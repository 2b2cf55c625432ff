#pragma once

// Character modules of groups of multiplicative type with a Galois action,
// character maps between them, and sufficient conditions for the vanishing of
// the image of the Tits class.

#include <string>
#include <vector>

#include "sphdescent/fg_abelian.hpp"
#include "sphdescent/galois_action.hpp"

namespace sphdescent {

class PositiveDimensional : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidCharacterMap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Character group X*(A) as a presentation, with one automorphism per
/// Galois generator (named, in the order of the action's generators).
class MultiplicativeTypeModule {
 public:
  MultiplicativeTypeModule() = default;

  /// Throws NotAnAutomorphism if some matrix does not induce an
  /// automorphism of the presented group.
  MultiplicativeTypeModule(FgAbelianGroup characters, std::vector<std::string> generator_names,
                           std::vector<IntMatrix> action)
      : characters_(std::move(characters)), names_(std::move(generator_names)), action_(std::move(action)) {
    if (names_.size() != action_.size())
      throw std::invalid_argument("module has " + std::to_string(action_.size()) + " matrices for " +
                                  std::to_string(names_.size()) + " generators");
    for (std::size_t g = 0; g < action_.size(); ++g)
      if (!characters_.is_automorphism(action_[g]))
        throw NotAnAutomorphism("action of '" + names_[g] + "' is not an automorphism of the character group");
  }

  const FgAbelianGroup& characters() const { return characters_; }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<IntMatrix>& action() const { return action_; }
  FgAbelianGroup fixed_characters() const { return fixed_points_fg(characters_, action_); }

 private:
  FgAbelianGroup characters_;
  std::vector<std::string> names_;
  std::vector<IntMatrix> action_;
};

/// Z^n / rows(presentation) with the given generators acting by the
/// restriction of the Galois action's generators, through `matrix_of`.
template <class F>
MultiplicativeTypeModule module_from_action(const GaloisAction& action, const IntMatrix& presentation, F matrix_of) {
  std::vector<IntMatrix> mats;
  for (std::size_t g = 0; g < action.generator_count(); ++g) mats.push_back(matrix_of(g));
  return MultiplicativeTypeModule(FgAbelianGroup(presentation), action.generator_names(), std::move(mats));
}

/// X*(Z) = X / ZR for the center Z of the group with this root datum.
inline MultiplicativeTypeModule center_characters(const GaloisAction& action) {
  const auto& brd = action.root_datum();
  IntMatrix rel(0, brd.rank());
  for (std::size_t i = 0; i < brd.semisimple_rank(); ++i) rel.append_row(brd.simple_root(i));
  if (rel.rows() == 0) rel = IntMatrix(0, brd.rank());
  return module_from_action(action, rel, [&](std::size_t g) { return action.generator_matrix(g); });
}

/// X*(Z~) = P / Q for the center of the simply connected cover of the derived
/// group, in fundamental-weight coordinates; generators act by their
/// diagram permutations.
inline MultiplicativeTypeModule simply_connected_center_characters(const GaloisAction& action) {
  const auto& brd = action.root_datum();
  const std::size_t n = brd.semisimple_rank();
  const auto& a = brd.cartan_matrix();
  IntMatrix rel(0, n);
  for (std::size_t j = 0; j < n; ++j) rel.append_row(a.col(j));  // alpha_j in omega coordinates
  return module_from_action(action, rel, [&](std::size_t g) {
    const auto& perm = action.generator(g).simple_permutation;
    IntMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(perm[i], i) = 1;
    return p;
  });
}

/// H^2(k0, A) = 1 for a finite A over a p-adic field, via its duality with
/// the fixed characters.
inline bool h2_local_vanishes(const MultiplicativeTypeModule& m) {
  if (!m.characters().is_finite())
    throw PositiveDimensional("character group has free rank " + std::to_string(m.characters().free_rank()) +
                              "; the local duality test is only implemented for finite groups");
  return m.fixed_characters().is_trivial();
}

/// Homomorphism of character groups given on generators (column j is the
/// image of source generator j).
class CharacterMap {
 public:
  /// Throws InvalidCharacterMap if the matrix does not descend or does not
  /// commute with the Galois actions.
  CharacterMap(MultiplicativeTypeModule source, MultiplicativeTypeModule target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    const auto& s = source_.characters();
    const auto& t = target_.characters();
    if (matrix_.rows() != t.generator_count() || matrix_.cols() != s.generator_count())
      throw InvalidCharacterMap("character map must be " + std::to_string(t.generator_count()) + " x " +
                                std::to_string(s.generator_count()));
    for (std::size_t i = 0; i < s.presentation().rows(); ++i)
      if (!t.is_zero_element(matrix_ * s.presentation().row(i)))
        throw InvalidCharacterMap("character map does not kill source relation " + std::to_string(i));
    if (source_.generator_names() != target_.generator_names())
      throw InvalidCharacterMap("source and target modules are acted on by different generators");
    for (std::size_t g = 0; g < source_.action().size(); ++g) {
      auto lhs = matrix_ * source_.action()[g];
      auto rhs = target_.action()[g] * matrix_;
      for (std::size_t j = 0; j < matrix_.cols(); ++j)
        if (!t.equal_elements(lhs.col(j), rhs.col(j)))
          throw InvalidCharacterMap("character map does not commute with the action of '" +
                                    source_.generator_names()[g] + "'");
    }
  }

  const MultiplicativeTypeModule& source() const { return source_; }
  const MultiplicativeTypeModule& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  bool is_zero() const {
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
      if (!target_.characters().is_zero_element(matrix_.col(j))) return false;
    return true;
  }

 private:
  MultiplicativeTypeModule source_, target_;
  IntMatrix matrix_;
};

enum class ObstructionStatus { Vanishes, Nonvanishing, Unknown };
enum class ObstructionReason { QuasiSplitForm, ZeroCharacterMap, H2TargetTrivial, NontrivialFixedCharacters, InsufficientData };
enum class BaseField { PAdic, Real, LargeOther };

inline std::string to_string(ObstructionStatus s) {
  switch (s) {
    case ObstructionStatus::Vanishes: return "Vanishes";
    case ObstructionStatus::Nonvanishing: return "Nonvanishing";
    case ObstructionStatus::Unknown: return "Unknown";
  }
  return "?";
}

inline std::string to_string(ObstructionReason r) {
  switch (r) {
    case ObstructionReason::QuasiSplitForm: return "quasi_split_form";
    case ObstructionReason::ZeroCharacterMap: return "zero_character_map";
    case ObstructionReason::H2TargetTrivial: return "h2_target_trivial";
    case ObstructionReason::NontrivialFixedCharacters: return "nontrivial_fixed_characters";
    case ObstructionReason::InsufficientData: return "insufficient_data";
  }
  return "?";
}

inline std::string to_string(BaseField f) {
  switch (f) {
    case BaseField::PAdic: return "p_adic";
    case BaseField::Real: return "real";
    case BaseField::LargeOther: return "large_other";
  }
  return "?";
}

inline std::optional<BaseField> parse_base_field(const std::string& s) {
  if (s == "p_adic") return BaseField::PAdic;
  if (s == "real") return BaseField::Real;
  if (s == "large_other") return BaseField::LargeOther;
  return std::nullopt;
}

struct ObstructionVerdict {
  ObstructionStatus status = ObstructionStatus::Unknown;
  ObstructionReason reason = ObstructionReason::InsufficientData;
  std::string detail;

  friend bool operator==(const ObstructionVerdict& a, const ObstructionVerdict& b) {
    return a.status == b.status && a.reason == b.reason;
  }
};

/// Sufficient conditions only; Nonvanishing is never returned because no
/// certificate for it can be computed from these data.
inline ObstructionVerdict obstruction_verdict(bool form_is_quasi_split, const std::optional<CharacterMap>& kappa,
                                              const std::optional<MultiplicativeTypeModule>& a_module,
                                              std::optional<BaseField> base_field) {
  using S = ObstructionStatus;
  using R = ObstructionReason;
  if (form_is_quasi_split) return {S::Vanishes, R::QuasiSplitForm, "the Tits class of a quasi-split form is trivial"};
  if (kappa && kappa->is_zero())
    return {S::Vanishes, R::ZeroCharacterMap, "the map of character groups is zero, so the induced map on H^2 is trivial"};
  if (a_module && base_field == BaseField::PAdic) {
    if (!a_module->characters().is_finite())
      return {S::Unknown, R::InsufficientData, "A has positive dimension; the local duality test does not apply"};
    if (h2_local_vanishes(*a_module))
      return {S::Vanishes, R::H2TargetTrivial, "the fixed characters of A are trivial, so H^2(k0, A) = 1"};
    return {S::Unknown, R::NontrivialFixedCharacters,
            "A has nontrivial fixed characters (" + format_vector(a_module->fixed_characters().invariant_factors()) +
                "), so H^2(k0, A) is nontrivial and the image of the Tits class is not determined"};
  }
  return {S::Unknown, R::InsufficientData, "no sufficient vanishing condition applies"};
}

}  // namespace sphdescent
