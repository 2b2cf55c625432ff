#pragma once

// Exact rational polyhedral cones in Q^d.
//
// A cone is kept in both descriptions: generators (lineality basis plus
// extreme rays) and constraints (equations plus facet inequalities a.x >= 0).
// Both are canonical, so two cones are equal iff their members are equal:
// rays are primitive integer vectors projected onto the orthogonal complement
// of the lineality space, facet normals are projected onto the linear span of
// the cone, and the two subspace bases are reduced row echelon forms.

#include <algorithm>
#include <set>
#include <vector>

#include "sphdescent/normal_form.hpp"

namespace sphdescent {

namespace detail {

/// Canonical integer basis of a subspace: RREF rows scaled to primitive vectors.
inline std::vector<IntVector> canonical_subspace_basis(std::size_t d, const std::vector<IntVector>& gens) {
  RatMatrix m(0, d);
  for (const auto& g : gens) m.append_row(to_rational(g));
  std::vector<IntVector> out;
  if (m.rows() == 0) return out;
  auto [r, pivots] = rref(m);
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(primitive(r.row(i)));
  return out;
}

/// Orthogonal projection of v onto the complement of span(basis).
inline RatVector project_out(const RatVector& v, const std::vector<IntVector>& basis) {
  if (basis.empty()) return v;
  const std::size_t k = basis.size();
  RatMatrix gram(k, k);
  RatVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = Rational(dot(basis[i], basis[j]));
    Rational s = 0;
    for (std::size_t t = 0; t < v.size(); ++t) s += v[t] * basis[i][t];
    rhs[i] = s;
  }
  auto inv = inverse(gram);
  RatVector out = v;
  for (std::size_t i = 0; i < k; ++i) {
    Rational c = 0;
    for (std::size_t j = 0; j < k; ++j) c += inv(i, j) * rhs[j];
    for (std::size_t t = 0; t < v.size(); ++t) out[t] -= c * basis[i][t];
  }
  return out;
}

struct GeneratorPair {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};

/// Incremental double description (Motzkin) from the whole space: returns
/// lineality and extreme rays of {x : a.x >= 0 (a in ineqs), e.x = 0 (e in eqs)}.
inline GeneratorPair double_description(std::size_t d, const std::vector<IntVector>& ineqs,
                                        const std::vector<IntVector>& eqs) {
  GeneratorPair g;
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d, Integer(0));
    e[i] = 1;
    g.lineality.push_back(e);
  }
  std::vector<IntVector> constraints;
  for (const auto& e : eqs) {
    constraints.push_back(e);
    constraints.push_back(negate(e));
  }
  constraints.insert(constraints.end(), ineqs.begin(), ineqs.end());

  std::vector<IntVector> processed;
  for (const auto& a : constraints) {
    if (a.size() != d) throw DimensionError("constraint has length " + std::to_string(a.size()) + ", expected " + std::to_string(d));
    if (is_zero(a)) continue;
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < g.lineality.size() && !pivot; ++i)
      if (dot(a, g.lineality[i]) != 0) pivot = i;
    if (pivot) {
      IntVector l0 = g.lineality[*pivot];
      Integer al0 = dot(a, l0);
      if (al0 < 0) {
        l0 = negate(l0);
        al0 = -al0;
      }
      auto reduce = [&](IntVector v) {
        Integer av = dot(a, v);
        if (av == 0) return v;
        IntVector w(d);
        for (std::size_t t = 0; t < d; ++t) w[t] = al0 * v[t] - av * l0[t];
        return primitive(w);
      };
      std::vector<IntVector> lin;
      for (std::size_t i = 0; i < g.lineality.size(); ++i)
        if (i != *pivot) lin.push_back(reduce(g.lineality[i]));
      for (auto& r : g.rays) r = reduce(r);
      g.lineality = std::move(lin);
      g.rays.push_back(l0);
      processed.push_back(a);
      continue;
    }
    std::vector<IntVector> pos, zero, neg;
    for (const auto& r : g.rays) {
      Integer s = dot(a, r);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
    }
    std::vector<IntVector> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    const long long target = static_cast<long long>(d) - static_cast<long long>(g.lineality.size()) - 2;
    for (const auto& p : pos)
      for (const auto& n : neg) {
        RatMatrix tight(0, d);
        for (const auto& c : processed)
          if (dot(c, p) == 0 && dot(c, n) == 0) tight.append_row(to_rational(c));
        if (static_cast<long long>(rank(tight)) != target) continue;
        Integer ap = dot(a, p), an = dot(a, n);
        IntVector w(d);
        for (std::size_t t = 0; t < d; ++t) w[t] = ap * n[t] - an * p[t];
        next.push_back(primitive(w));
      }
    g.rays = std::move(next);
    processed.push_back(a);
  }
  return g;
}

}  // namespace detail

class RationalCone {
 public:
  RationalCone() = default;

  /// The cone {0} in Q^d.
  static RationalCone zero(std::size_t d) { return from_generators(d, std::vector<RatVector>{}); }
  static RationalCone whole_space(std::size_t d) { return from_inequalities(d, {}, {}); }

  /// Cone spanned by the generators (nonnegative combinations) plus the
  /// linear span of `lineality_generators`.
  static RationalCone from_generators(std::size_t d, const std::vector<RatVector>& generators,
                                      const std::vector<RatVector>& lineality_generators = {}) {
    std::vector<IntVector> gens, lins;
    for (const auto& g : generators) {
      if (g.size() != d) throw DimensionError("cone generator has length " + std::to_string(g.size()) + ", expected " + std::to_string(d));
      if (!sphdescent::is_zero(g)) gens.push_back(primitive(g));
    }
    for (const auto& l : lineality_generators) {
      if (l.size() != d) throw DimensionError("lineality generator has length " + std::to_string(l.size()) + ", expected " + std::to_string(d));
      if (!sphdescent::is_zero(l)) lins.push_back(primitive(l));
    }
    // constraints of the cone are the generators of its dual
    auto dual = detail::double_description(d, gens, lins);
    auto primal = detail::double_description(d, dual.rays, dual.lineality);
    RationalCone c;
    c.dim_ = d;
    c.set(primal, dual);
    return c;
  }

  static RationalCone from_generators(std::size_t d, const std::vector<IntVector>& generators) {
    std::vector<RatVector> g;
    for (const auto& v : generators) g.push_back(to_rational(v));
    return from_generators(d, g);
  }

  /// {x : a.x >= 0 for a in inequalities, e.x = 0 for e in equations}.
  static RationalCone from_inequalities(std::size_t d, const std::vector<RatVector>& inequalities,
                                        const std::vector<RatVector>& equations = {}) {
    std::vector<IntVector> in, eq;
    for (const auto& a : inequalities) {
      if (a.size() != d) throw DimensionError("inequality has length " + std::to_string(a.size()) + ", expected " + std::to_string(d));
      if (!sphdescent::is_zero(a)) in.push_back(primitive(a));
    }
    for (const auto& e : equations) {
      if (e.size() != d) throw DimensionError("equation has length " + std::to_string(e.size()) + ", expected " + std::to_string(d));
      if (!sphdescent::is_zero(e)) eq.push_back(primitive(e));
    }
    auto primal = detail::double_description(d, in, eq);
    auto dual = detail::double_description(d, primal.rays, primal.lineality);
    RationalCone c;
    c.dim_ = d;
    c.set(primal, dual);
    return c;
  }

  std::size_t ambient_dim() const { return dim_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& lineality() const { return lineality_; }
  const std::vector<IntVector>& inequalities() const { return inequalities_; }
  const std::vector<IntVector>& equations() const { return equations_; }

  std::size_t dimension() const { return dim_ - equations_.size(); }
  bool is_strictly_convex() const { return lineality_.empty(); }
  bool is_zero() const { return rays_.empty() && lineality_.empty(); }

  /// All generators: rays, then each lineality vector and its negative.
  std::vector<IntVector> all_generators() const {
    std::vector<IntVector> out = rays_;
    for (const auto& l : lineality_) {
      out.push_back(l);
      out.push_back(negate(l));
    }
    return out;
  }

  bool contains(const RatVector& x) const {
    if (x.size() != dim_) throw DimensionError("cone membership: length mismatch");
    for (const auto& e : equations_)
      if (dot_rat(e, x) != 0) return false;
    for (const auto& a : inequalities_)
      if (dot_rat(a, x) < 0) return false;
    return true;
  }
  bool contains(const IntVector& x) const { return contains(to_rational(x)); }

  bool contains(const RationalCone& other) const {
    if (other.dim_ != dim_) throw DimensionError("cone containment: ambient dimensions differ");
    for (const auto& g : other.all_generators())
      if (!contains(g)) return false;
    return true;
  }

  /// Membership in the relative interior (the relative interior of {0} is {0}).
  bool in_relative_interior(const RatVector& x) const {
    if (!contains(x)) return false;
    for (const auto& a : inequalities_)
      if (dot_rat(a, x) <= 0) return false;
    return true;
  }

  /// Image under x -> m x.
  RationalCone image(const RatMatrix& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) throw DimensionError("cone image: matrix shape");
    std::vector<RatVector> gens, lins;
    for (const auto& r : rays_) gens.push_back(m * to_rational(r));
    for (const auto& l : lineality_) lins.push_back(m * to_rational(l));
    return from_generators(dim_, gens, lins);
  }
  RationalCone image(const IntMatrix& m) const { return image(to_rational(m)); }

  /// All faces, largest first, each given by the rays it contains.
  std::vector<RationalCone> faces() const {
    std::vector<std::vector<bool>> facet_sets;
    for (const auto& a : inequalities_) {
      std::vector<bool> s(rays_.size());
      for (std::size_t i = 0; i < rays_.size(); ++i) s[i] = dot(a, rays_[i]) == 0;
      facet_sets.push_back(std::move(s));
    }
    std::set<std::vector<bool>> seen;
    std::vector<std::vector<bool>> order;
    std::vector<bool> all(rays_.size(), true);
    seen.insert(all);
    order.push_back(all);
    for (std::size_t k = 0; k < order.size(); ++k)
      for (const auto& f : facet_sets) {
        std::vector<bool> s(rays_.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = order[k][i] && f[i];
        if (seen.insert(s).second) order.push_back(s);
      }
    std::vector<RationalCone> out;
    for (const auto& s : order) {
      std::vector<RatVector> gens, lins;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) gens.push_back(to_rational(rays_[i]));
      for (const auto& l : lineality_) lins.push_back(to_rational(l));
      out.push_back(from_generators(dim_, gens, lins));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RationalCone& a, const RationalCone& b) { return a.dimension() > b.dimension(); });
    return out;
  }

  bool is_face_of(const RationalCone& other) const {
    for (const auto& f : other.faces())
      if (f == *this) return true;
    return false;
  }

  friend bool operator==(const RationalCone& a, const RationalCone& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
  }
  friend bool operator!=(const RationalCone& a, const RationalCone& b) { return !(a == b); }
  friend bool operator<(const RationalCone& a, const RationalCone& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    if (a.lineality_ != b.lineality_) return a.lineality_ < b.lineality_;
    return a.rays_ < b.rays_;
  }

 private:
  static Rational dot_rat(const IntVector& a, const RatVector& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
  }

  void set(const detail::GeneratorPair& primal, const detail::GeneratorPair& dual) {
    lineality_ = detail::canonical_subspace_basis(dim_, primal.lineality);
    equations_ = detail::canonical_subspace_basis(dim_, dual.lineality);
    std::set<IntVector> rays, ineqs;
    for (const auto& r : primal.rays) {
      auto p = detail::project_out(to_rational(r), lineality_);
      if (!sphdescent::is_zero(p)) rays.insert(primitive(p));
    }
    for (const auto& a : dual.rays) {
      auto p = detail::project_out(to_rational(a), equations_);
      if (!sphdescent::is_zero(p)) ineqs.insert(primitive(p));
    }
    rays_.assign(rays.begin(), rays.end());
    inequalities_.assign(ineqs.begin(), ineqs.end());
  }

  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> inequalities_;
  std::vector<IntVector> equations_;
};

struct FeasibilityResult {
  bool feasible = false;
  RatVector witness;
};

/// Exact test for a point x with e.x = 0, a.x >= 0 and b.x > 0 (strict),
/// via the homogenized cone {(x, t) : b.x - t >= 0, t >= 0, ...}.
inline FeasibilityResult find_point(std::size_t d, const std::vector<IntVector>& equations,
                                    const std::vector<IntVector>& weak, const std::vector<IntVector>& strict) {
  std::vector<IntVector> eqs, ineqs;
  auto lift = [&](const IntVector& v, long long t) {
    if (v.size() != d) throw DimensionError("feasibility: constraint length mismatch");
    IntVector w = v;
    w.push_back(t);
    return w;
  };
  for (const auto& e : equations) eqs.push_back(lift(e, 0));
  for (const auto& a : weak) ineqs.push_back(lift(a, 0));
  for (const auto& b : strict) ineqs.push_back(lift(b, -1));
  IntVector t(d + 1, Integer(0));
  t[d] = 1;
  ineqs.push_back(t);
  auto g = detail::double_description(d + 1, ineqs, eqs);
  for (const auto& r : g.rays)
    if (r[d] > 0) {
      RatVector x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = Rational(r[i]) / Rational(r[d]);
      return {true, x};
    }
  return {false, {}};
}

/// Does the relative interior of `a` meet `b`?
inline FeasibilityResult relative_interior_meets(const RationalCone& a, const RationalCone& b) {
  auto eqs = a.equations();
  eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
  return find_point(a.ambient_dim(), eqs, b.inequalities(), a.inequalities());
}

/// Do the relative interiors of a and b have a common point inside c?
inline FeasibilityResult relative_interiors_meet_in(const RationalCone& a, const RationalCone& b, const RationalCone& c) {
  auto eqs = a.equations();
  eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
  eqs.insert(eqs.end(), c.equations().begin(), c.equations().end());
  auto strict = a.inequalities();
  strict.insert(strict.end(), b.inequalities().begin(), b.inequalities().end());
  return find_point(a.ambient_dim(), eqs, c.inequalities(), strict);
}

}  // namespace sphdescent
