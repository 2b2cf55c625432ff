#pragma once

// Based root data (X, X^v, R, R^v, S, S^v) for reductive groups given by a
// Cartan type, an isogeny lattice and an optional central torus.
//
// Coordinates: X is identified with Z^rank through a fixed basis; X^v uses the
// dual basis, so the pairing is the plain dot product.  The basis of X is
// described by its rows in fundamental-weight coordinates (omega coordinates):
// the identity for simply connected groups, the simple roots for adjoint
// groups, the HNF of the supplied generators otherwise.  Every datum also
// carries the Bourbaki epsilon realization of its root system, used for the
// W-invariant inner product and for quoting vectors literally.

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sphdescent/lattice.hpp"

namespace sphdescent {

enum class Isogeny { SimplyConnected, Adjoint, Custom };

inline std::string to_string(Isogeny i) {
  switch (i) {
    case Isogeny::SimplyConnected: return "simply_connected";
    case Isogeny::Adjoint: return "adjoint";
    case Isogeny::Custom: return "custom_lattice";
  }
  return "?";
}

struct CartanComponent {
  char letter = 'A';
  std::size_t rank = 1;
  friend bool operator==(const CartanComponent&, const CartanComponent&) = default;
};

class InvalidRootDatum : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kDefaultWeylCap = 10'000'000;

namespace detail {

inline bool valid_component(char letter, std::size_t rank) {
  switch (letter) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 2;
    case 'D': return rank >= 3;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

inline Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

inline Integer weyl_order(const CartanComponent& c) {
  const std::size_t n = c.rank;
  switch (c.letter) {
    case 'A': return factorial(n + 1);
    case 'B':
    case 'C': return (Integer(1) << n) * factorial(n);
    case 'D': return (Integer(1) << (n - 1)) * factorial(n);
    case 'E': return n == 6 ? Integer(51840) : n == 7 ? Integer(2903040) : Integer(696729600);
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 1;
}

/// Simple roots of one irreducible component in Bourbaki's epsilon coordinates.
inline RatMatrix epsilon_simple_roots(const CartanComponent& c) {
  const std::size_t n = c.rank;
  const Rational half(1, 2);
  auto unit = [](std::size_t dim, std::size_t i, std::size_t j, int sj) {
    RatVector v(dim, Rational(0));
    v[i] += 1;
    if (sj != 0) v[j] += sj;
    return v;
  };
  RatMatrix s(0, 0);
  switch (c.letter) {
    case 'A':
      s = RatMatrix(0, n + 1);
      for (std::size_t i = 0; i < n; ++i) s.append_row(unit(n + 1, i, i + 1, -1));
      break;
    case 'B':
    case 'C':
    case 'D': {
      s = RatMatrix(0, n);
      for (std::size_t i = 0; i + 1 < n; ++i) s.append_row(unit(n, i, i + 1, -1));
      RatVector last(n, Rational(0));
      if (c.letter == 'B') last[n - 1] = 1;
      if (c.letter == 'C') last[n - 1] = 2;
      if (c.letter == 'D') last[n - 2] = last[n - 1] = 1;
      s.append_row(last);
      break;
    }
    case 'G':
      s = RatMatrix(0, 3);
      s.append_row({Rational(1), Rational(-1), Rational(0)});
      s.append_row({Rational(-2), Rational(1), Rational(1)});
      break;
    case 'F':
      s = RatMatrix(0, 4);
      s.append_row({Rational(0), Rational(1), Rational(-1), Rational(0)});
      s.append_row({Rational(0), Rational(0), Rational(1), Rational(-1)});
      s.append_row({Rational(0), Rational(0), Rational(0), Rational(1)});
      s.append_row({half, -half, -half, -half});
      break;
    case 'E': {
      RatMatrix e8(0, 8);
      e8.append_row({half, -half, -half, -half, -half, -half, -half, half});
      e8.append_row({Rational(1), Rational(1), 0, 0, 0, 0, 0, 0});
      for (std::size_t i = 0; i < 6; ++i) {
        RatVector v(8, Rational(0));
        v[i] = -1;
        v[i + 1] = 1;
        e8.append_row(v);
      }
      s = RatMatrix(0, 8);
      for (std::size_t i = 0; i < n; ++i) s.append_row(e8.row(i));
      break;
    }
  }
  return s;
}

}  // namespace detail

/// Automorphism of a based root datum: x -> matrix * x on X, inverse
/// transpose on X^v, with the induced permutations of S and R.
struct BRDAutomorphism {
  IntMatrix matrix;
  std::vector<std::size_t> simple_permutation;  // alpha_i -> alpha_{p[i]}
  std::vector<std::size_t> root_permutation;

  friend bool operator==(const BRDAutomorphism& a, const BRDAutomorphism& b) { return a.matrix == b.matrix; }
  friend bool operator<(const BRDAutomorphism& a, const BRDAutomorphism& b) { return a.matrix < b.matrix; }
};

/// Element of W, with one reduced word (indices of simple reflections,
/// w = s_{word[0]} s_{word[1]} ...).
struct WeylElement {
  IntMatrix matrix;
  std::vector<std::size_t> word;
};

class BasedRootDatum {
 public:
  /// `type` is e.g. "D4", "A1xA1", "A2xT1" or "T2" (components joined by x).
  /// Custom lattice generators are rows in omega coordinates.
  static BasedRootDatum build(const std::string& type, Isogeny isogeny,
                              const std::optional<RatMatrix>& custom_generators = std::nullopt,
                              std::size_t extra_torus_rank = 0) {
    auto [components, torus] = parse_type(type);
    return build(components, torus + extra_torus_rank, isogeny, custom_generators);
  }

  static BasedRootDatum build(char letter, std::size_t rank, Isogeny isogeny,
                              const std::optional<RatMatrix>& custom_generators = std::nullopt) {
    return build(std::vector<CartanComponent>{{letter, rank}}, 0, isogeny, custom_generators);
  }

  static BasedRootDatum build(const std::vector<CartanComponent>& components, std::size_t torus_rank, Isogeny isogeny,
                              const std::optional<RatMatrix>& custom_generators = std::nullopt) {
    BasedRootDatum d;
    d.components_ = components;
    d.torus_rank_ = torus_rank;
    d.isogeny_ = isogeny;
    for (const auto& c : components)
      if (!detail::valid_component(c.letter, c.rank))
        throw InvalidRootDatum(std::string("invalid Dynkin type ") + c.letter + std::to_string(c.rank));
    d.init_cartan_and_epsilon();
    d.init_lattice(custom_generators);
    d.init_roots();
    return d;
  }

  static std::pair<std::vector<CartanComponent>, std::size_t> parse_type(const std::string& type) {
    std::vector<CartanComponent> comps;
    std::size_t torus = 0;
    std::string token;
    auto flush = [&]() {
      if (token.empty()) throw InvalidRootDatum("empty component in type '" + type + "'");
      char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
      std::string digits = token.substr(1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidRootDatum("malformed component '" + token + "' in type '" + type + "'");
      std::size_t r = std::stoul(digits);
      if (letter == 'T')
        torus += r;
      else
        comps.push_back({letter, r});
      token.clear();
    };
    for (char ch : type) {
      if (ch == 'x' || ch == '+' || ch == '*') {
        flush();
      } else if (ch != ' ') {
        token.push_back(ch);
      }
    }
    flush();
    return {comps, torus};
  }

  // --- shape ------------------------------------------------------------

  std::size_t rank() const { return rank_; }
  std::size_t semisimple_rank() const { return ss_rank_; }
  std::size_t torus_rank() const { return torus_rank_; }
  const std::vector<CartanComponent>& components() const { return components_; }
  Isogeny isogeny() const { return isogeny_; }

  std::string type_label() const {
    std::string s;
    for (const auto& c : components_) {
      if (!s.empty()) s += "x";
      s += c.letter + std::to_string(c.rank);
    }
    if (torus_rank_) {
      if (!s.empty()) s += "x";
      s += "T" + std::to_string(torus_rank_);
    }
    return s;
  }

  /// Cartan matrix a(i, j) = <alpha_j, alpha_i^v>.
  const IntMatrix& cartan_matrix() const { return cartan_; }

  /// Rows: basis of X in omega coordinates (torus coordinates last).
  const IntMatrix& lattice_basis() const { return basis_; }

  // --- roots --------------------------------------------------------------

  /// All roots in X coordinates: positive roots first (by height), then their
  /// negatives in the same order.  The first semisimple_rank() are simple.
  const std::vector<IntVector>& roots() const { return roots_; }
  const std::vector<IntVector>& coroots() const { return coroots_; }
  std::size_t positive_root_count() const { return roots_.size() / 2; }

  const IntVector& simple_root(std::size_t i) const { return roots_.at(i); }
  const IntVector& simple_coroot(std::size_t i) const { return coroots_.at(i); }

  /// Coefficients of root k in the simple roots.
  const IntVector& root_in_simple_roots(std::size_t k) const { return root_simple_coords_.at(k); }

  std::optional<std::size_t> root_index(const IntVector& v) const {
    auto it = root_lookup_.find(v);
    if (it == root_lookup_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> coroot_index(const IntVector& v) const {
    auto it = coroot_lookup_.find(v);
    if (it == coroot_lookup_.end()) return std::nullopt;
    return it->second;
  }

  /// The canonical pairing X x X^v -> Z.
  Integer pairing(const IntVector& chi, const IntVector& x) const {
    if (chi.size() != rank_ || x.size() != rank_)
      throw DimensionError("pairing: expected vectors of length " + std::to_string(rank_));
    return dot(chi, x);
  }
  Rational pairing(const RatVector& chi, const IntVector& x) const {
    if (chi.size() != rank_ || x.size() != rank_)
      throw DimensionError("pairing: expected vectors of length " + std::to_string(rank_));
    Rational s = 0;
    for (std::size_t i = 0; i < rank_; ++i) s += chi[i] * x[i];
    return s;
  }

  /// s_alpha for root k: x -> x - <x, alpha^v> alpha.
  IntMatrix reflection(std::size_t k) const {
    const auto& a = roots_.at(k);
    const auto& av = coroots_.at(k);
    IntMatrix s = IntMatrix::identity(rank_);
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) s(i, j) -= a[i] * av[j];
    return s;
  }

  const std::vector<IntMatrix>& simple_reflections() const { return simple_reflections_; }

  // --- coordinate changes -----------------------------------------------------

  /// X coordinates of a vector given in Bourbaki epsilon coordinates.
  RatVector from_epsilon(const RatVector& eps) const {
    auto c = solve_in_row_span(epsilon_basis_, eps);
    if (!c) throw std::domain_error("vector " + format_vector(eps) + " is not in the span of X");
    return *c;
  }
  RatVector to_epsilon(const RatVector& x) const {
    if (x.size() != rank_) throw DimensionError("to_epsilon: length mismatch");
    RatVector out(epsilon_basis_.cols(), Rational(0));
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[i] * epsilon_basis_(i, j);
    return out;
  }
  std::size_t epsilon_dimension() const { return epsilon_basis_.cols(); }

  /// X coordinates of sum_i c_i alpha_i.
  RatVector from_simple_roots(const RatVector& coeffs) const {
    if (coeffs.size() != ss_rank_) throw DimensionError("expected " + std::to_string(ss_rank_) + " simple-root coefficients");
    RatVector out(rank_, Rational(0));
    for (std::size_t i = 0; i < ss_rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) out[j] += coeffs[i] * roots_[i][j];
    return out;
  }

  /// X coordinates of a vector in omega coordinates (torus coordinates last).
  RatVector from_fundamental_weights(const RatVector& omega) const {
    auto c = solve_in_row_span(to_rational(basis_), omega);
    if (!c) throw DimensionError("from_fundamental_weights: length mismatch");
    return *c;
  }
  RatVector to_fundamental_weights(const RatVector& x) const {
    RatVector out(rank_, Rational(0));
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) out[j] += x[i] * basis_(i, j);
    return out;
  }

  /// W-invariant inner product (Euclidean form of the epsilon realization).
  Rational inner_product(const RatVector& a, const RatVector& b) const { return dot(to_epsilon(a), to_epsilon(b)); }
  Rational inner_product(const IntVector& a, const IntVector& b) const {
    return inner_product(to_rational(a), to_rational(b));
  }

  /// Sum of the positive roots; regular dominant, so its W-orbit is free.
  const IntVector& two_rho() const { return two_rho_; }

  Integer weyl_group_order() const {
    Integer o = 1;
    for (const auto& c : components_) o *= detail::weyl_order(c);
    return o;
  }

  // --- automorphisms ---------------------------------------------------------

  /// The automorphism defined by m, or nullopt if m is not unimodular, does
  /// not permute R and S, or does not commute with alpha -> alpha^v.
  std::optional<BRDAutomorphism> as_automorphism(const IntMatrix& m) const {
    if (m.rows() != rank_ || m.cols() != rank_ || !is_unimodular(m)) return std::nullopt;
    auto dual = unimodular_inverse(m).transpose();
    BRDAutomorphism a;
    a.matrix = m;
    a.root_permutation.resize(roots_.size());
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      auto img = root_index(m * roots_[k]);
      if (!img) return std::nullopt;
      if (dual * coroots_[k] != coroots_[*img]) return std::nullopt;
      a.root_permutation[k] = *img;
    }
    a.simple_permutation.resize(ss_rank_);
    for (std::size_t i = 0; i < ss_rank_; ++i) {
      if (a.root_permutation[i] >= ss_rank_) return std::nullopt;
      a.simple_permutation[i] = a.root_permutation[i];
    }
    return a;
  }

  /// Matrix on X extending alpha_i -> alpha_{perm[i]} (identity on the
  /// central torus coordinates); nullopt if X is not stable.  Throws if perm
  /// does not preserve the Cartan matrix.
  std::optional<IntMatrix> diagram_matrix(const std::vector<std::size_t>& perm) const {
    if (perm.size() != ss_rank_) throw InvalidRootDatum("diagram permutation must have length " + std::to_string(ss_rank_));
    std::vector<bool> seen(ss_rank_, false);
    for (auto p : perm) {
      if (p >= ss_rank_ || seen[p]) throw InvalidRootDatum("diagram map is not a permutation of the simple roots");
      seen[p] = true;
    }
    for (std::size_t i = 0; i < ss_rank_; ++i)
      for (std::size_t j = 0; j < ss_rank_; ++j)
        if (cartan_(perm[i], perm[j]) != cartan_(i, j))
          throw InvalidRootDatum("permutation does not preserve the Cartan matrix");
    RatMatrix p(rank_, rank_);
    for (std::size_t i = 0; i < ss_rank_; ++i) p(perm[i], i) = 1;
    for (std::size_t i = ss_rank_; i < rank_; ++i) p(i, i) = 1;
    auto bt = to_rational(basis_).transpose();
    RatMatrix m = inverse(bt) * p * bt;
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j)
        if (!is_integral(m(i, j))) return std::nullopt;
    return to_integer(m);
  }

 private:
  void init_cartan_and_epsilon() {
    ss_rank_ = 0;
    std::size_t eps_dim = 0;
    for (const auto& c : components_) {
      ss_rank_ += c.rank;
      eps_dim += detail::epsilon_simple_roots(c).cols();
    }
    rank_ = ss_rank_ + torus_rank_;
    eps_dim += torus_rank_;

    // simple roots (rows) in the concatenated epsilon space
    RatMatrix simple_eps(ss_rank_, eps_dim);
    std::size_t row = 0, col = 0;
    for (const auto& c : components_) {
      auto s = detail::epsilon_simple_roots(c);
      for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) simple_eps(row + i, col + j) = s(i, j);
      row += s.rows();
      col += s.cols();
    }
    cartan_ = IntMatrix(ss_rank_, ss_rank_);
    for (std::size_t i = 0; i < ss_rank_; ++i) {
      auto ai = simple_eps.row(i);
      Rational norm = dot(ai, ai);
      for (std::size_t j = 0; j < ss_rank_; ++j) cartan_(i, j) = numerator(2 * dot(ai, simple_eps.row(j)) / norm);
    }
    // fundamental weights: alpha_j = sum_k a(k, j) omega_k  =>  Omega = (A^T)^{-1} S
    omega_eps_ = RatMatrix(rank_, eps_dim);
    if (ss_rank_ > 0) {
      auto w = inverse(to_rational(cartan_).transpose()) * simple_eps;
      for (std::size_t i = 0; i < ss_rank_; ++i)
        for (std::size_t j = 0; j < eps_dim; ++j) omega_eps_(i, j) = w(i, j);
    }
    for (std::size_t t = 0; t < torus_rank_; ++t) omega_eps_(ss_rank_ + t, col + t) = 1;
  }

  void init_lattice(const std::optional<RatMatrix>& custom) {
    IntMatrix simple_omega(ss_rank_, rank_);  // simple roots as rows in omega coordinates
    for (std::size_t j = 0; j < ss_rank_; ++j)
      for (std::size_t k = 0; k < ss_rank_; ++k) simple_omega(j, k) = cartan_(k, j);

    switch (isogeny_) {
      case Isogeny::SimplyConnected: basis_ = IntMatrix::identity(rank_); break;
      case Isogeny::Adjoint: {
        basis_ = IntMatrix(rank_, rank_);
        for (std::size_t i = 0; i < ss_rank_; ++i) basis_.set_row(i, simple_omega.row(i));
        for (std::size_t t = ss_rank_; t < rank_; ++t) basis_(t, t) = 1;
        break;
      }
      case Isogeny::Custom: {
        if (!custom) throw InvalidRootDatum("custom isogeny requires lattice generators");
        if (custom->cols() != rank_)
          throw InvalidRootDatum("custom lattice generators must have " + std::to_string(rank_) + " omega coordinates");
        IntMatrix gens(0, rank_);
        for (std::size_t i = 0; i < custom->rows(); ++i) {
          auto r = custom->row(i);
          if (!is_integral(r))
            throw InvalidRootDatum("custom lattice is not contained in the weight lattice: generator " + format_vector(r));
          gens.append_row(to_integer(r));
        }
        auto lat = Lattice::span(rank_, gens);
        if (lat.rank() != rank_) throw InvalidRootDatum("custom lattice does not have full rank");
        for (std::size_t i = 0; i < ss_rank_; ++i)
          if (!lat.contains(simple_omega.row(i)))
            throw InvalidRootDatum("custom lattice does not contain the root lattice (missing alpha_" +
                                   std::to_string(i + 1) + ")");
        basis_ = lat.basis();
        break;
      }
    }
    epsilon_basis_ = to_rational(basis_) * omega_eps_;
  }

  void init_roots() {
    auto basis_inv = inverse(to_rational(basis_));
    // simple pairs (alpha_j, alpha_j^v) in X / X^v coordinates
    std::vector<IntVector> simple_roots, simple_coroots;
    for (std::size_t j = 0; j < ss_rank_; ++j) {
      RatVector omega(rank_, Rational(0));
      for (std::size_t k = 0; k < ss_rank_; ++k) omega[k] = cartan_(k, j);
      RatVector x(rank_, Rational(0));  // x = omega * B^{-1}
      for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t k = 0; k < rank_; ++k) x[k] += omega[i] * basis_inv(i, k);
      simple_roots.push_back(to_integer(x));
      simple_coroots.push_back(basis_.col(j));
    }
    simple_reflections_.clear();
    for (std::size_t j = 0; j < ss_rank_; ++j) {
      IntMatrix s = IntMatrix::identity(rank_);
      for (std::size_t a = 0; a < rank_; ++a)
        for (std::size_t b = 0; b < rank_; ++b) s(a, b) -= simple_roots[j][a] * simple_coroots[j][b];
      simple_reflections_.push_back(std::move(s));
    }

    // closure of the simple pairs under simple reflections
    std::map<IntVector, IntVector> pairs;
    std::deque<IntVector> queue;
    for (std::size_t j = 0; j < ss_rank_; ++j) {
      pairs.emplace(simple_roots[j], simple_coroots[j]);
      queue.push_back(simple_roots[j]);
    }
    while (!queue.empty()) {
      IntVector a = queue.front();
      queue.pop_front();
      IntVector av = pairs.at(a);
      for (std::size_t j = 0; j < ss_rank_; ++j) {
        Integer c = dot(a, simple_coroots[j]);
        Integer cv = dot(simple_roots[j], av);
        IntVector b = a, bv = av;
        for (std::size_t k = 0; k < rank_; ++k) {
          b[k] -= c * simple_roots[j][k];
          bv[k] -= cv * simple_coroots[j][k];
        }
        if (pairs.emplace(b, bv).second) queue.push_back(b);
      }
    }

    // simple-root coordinates; X basis restricted to the root span
    IntMatrix simple_mat(0, rank_);
    for (const auto& s : simple_roots) simple_mat.append_row(s);
    struct Entry {
      IntVector root, coroot, coords;
      Integer height;
    };
    std::vector<Entry> positive;
    for (const auto& [a, av] : pairs) {
      auto c = to_integer(*solve_in_row_span(to_rational(simple_mat), to_rational(a)));
      Integer h = 0;
      for (const auto& x : c) h += x;
      if (h > 0) positive.push_back({a, av, c, h});
    }
    std::sort(positive.begin(), positive.end(), [](const Entry& x, const Entry& y) {
      if (x.height != y.height) return x.height < y.height;
      return x.coords > y.coords;
    });
    roots_.clear();
    coroots_.clear();
    root_simple_coords_.clear();
    for (const auto& e : positive) {
      roots_.push_back(e.root);
      coroots_.push_back(e.coroot);
      root_simple_coords_.push_back(e.coords);
    }
    for (const auto& e : positive) {
      roots_.push_back(negate(e.root));
      coroots_.push_back(negate(e.coroot));
      root_simple_coords_.push_back(negate(e.coords));
    }
    root_lookup_.clear();
    coroot_lookup_.clear();
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      root_lookup_[roots_[k]] = k;
      coroot_lookup_[coroots_[k]] = k;
    }
    two_rho_.assign(rank_, Integer(0));
    for (std::size_t k = 0; k < positive.size(); ++k)
      for (std::size_t i = 0; i < rank_; ++i) two_rho_[i] += roots_[k][i];
  }

  std::vector<CartanComponent> components_;
  std::size_t torus_rank_ = 0;
  std::size_t ss_rank_ = 0;
  std::size_t rank_ = 0;
  Isogeny isogeny_ = Isogeny::SimplyConnected;
  IntMatrix cartan_;
  RatMatrix omega_eps_;
  IntMatrix basis_;
  RatMatrix epsilon_basis_;
  std::vector<IntVector> roots_, coroots_, root_simple_coords_;
  std::map<IntVector, std::size_t> root_lookup_, coroot_lookup_;
  std::vector<IntMatrix> simple_reflections_;
  IntVector two_rho_;
};

inline Integer pairing(const BasedRootDatum& brd, const IntVector& chi, const IntVector& x) {
  return brd.pairing(chi, x);
}

inline bool is_brd_automorphism(const BasedRootDatum& brd, const IntMatrix& m) {
  return brd.as_automorphism(m).has_value();
}

/// Visits W in breadth-first order (shortest words first, generators in
/// index order); stops early when the visitor returns true.  Returns true
/// iff stopped early.  Throws CapExceeded if more than `cap` elements would
/// be produced.
template <class Visitor>
bool visit_weyl_group(const BasedRootDatum& brd, std::size_t cap, Visitor&& visit) {
  struct Node {
    IntMatrix matrix;
    std::vector<std::size_t> word;
  };
  std::set<IntVector> seen;
  std::deque<Node> queue;
  queue.push_back({IntMatrix::identity(brd.rank()), {}});
  seen.insert(brd.two_rho());
  const auto& gens = brd.simple_reflections();
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (visit(WeylElement{node.matrix, node.word})) return true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      IntMatrix next = gens[i] * node.matrix;
      if (!seen.insert(next * brd.two_rho()).second) continue;
      if (seen.size() > cap)
        throw CapExceeded("Weyl group has more than " + std::to_string(cap) + " elements; use orbit-level operations");
      std::vector<std::size_t> word;
      word.reserve(node.word.size() + 1);
      word.push_back(i);
      word.insert(word.end(), node.word.begin(), node.word.end());
      queue.push_back({std::move(next), std::move(word)});
    }
  }
  return false;
}

/// All of W in canonical BFS order; throws CapExceeded if |W| > cap.
inline std::vector<WeylElement> weyl_group(const BasedRootDatum& brd, std::size_t cap = kDefaultWeylCap) {
  if (brd.weyl_group_order() > cap)
    throw CapExceeded("|W| = " + brd.weyl_group_order().str() + " exceeds cap " + std::to_string(cap));
  std::vector<WeylElement> out;
  visit_weyl_group(brd, cap, [&](const WeylElement& w) {
    out.push_back(w);
    return false;
  });
  return out;
}

struct DiagramAutomorphisms {
  std::vector<BRDAutomorphism> automorphisms;
  /// Cartan-preserving permutations whose extension does not stabilize X.
  std::vector<std::vector<std::size_t>> rejected;
};

/// Permutations of S preserving the Cartan matrix, extended to X.
inline DiagramAutomorphisms dynkin_automorphisms(const BasedRootDatum& brd) {
  const std::size_t n = brd.semisimple_rank();
  const auto& a = brd.cartan_matrix();
  DiagramAutomorphisms out;
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      auto m = brd.diagram_matrix(perm);
      if (!m) {
        out.rejected.push_back(perm);
        return;
      }
      auto aut = brd.as_automorphism(*m);
      if (!aut) throw std::logic_error("diagram extension failed the automorphism check");
      out.automorphisms.push_back(std::move(*aut));
      return;
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (used[p]) continue;
      bool ok = a(p, p) == a(i, i);
      for (std::size_t j = 0; j < i && ok; ++j) ok = a(perm[j], p) == a(j, i) && a(p, perm[j]) == a(i, j);
      if (!ok) continue;
      used[p] = true;
      perm[i] = p;
      rec(i + 1);
      used[p] = false;
    }
  };
  rec(0);
  return out;
}

}  // namespace sphdescent
