#pragma once

/// @file graded.hpp
/// Finite-dimensional models of graded pieces M^n of submodules of Sym(F).
///
/// Monomial modules are handled combinatorially. Other modules need a
/// colength witness c with m^c F^g inside the module; then every quotient
/// that matters survives truncation at x-degree c*n + 1.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/matrix.hpp"
#include "coefmod/monomial_module.hpp"
#include "coefmod/presentation.hpp"

namespace coefmod {

struct ColengthWitness {
  std::optional<Exp> c;  // nullopt: infinite colength
  std::string method;
  bool finite() const { return c.has_value(); }
};

/// Ordered monomial coordinates with reverse lookup.
class Coordinates {
 public:
  explicit Coordinates(std::vector<Monomial> list) : list_(std::move(list)) {
    for (std::size_t i = 0; i < list_.size(); ++i) index_.emplace(list_[i], i);
  }
  std::size_t size() const { return list_.size(); }
  const Monomial& operator[](std::size_t i) const { return list_[i]; }
  const std::vector<Monomial>& list() const { return list_; }
  std::optional<std::size_t> find(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<Monomial> list_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

/// The t-degree-n piece of a module modulo m^bound F^n.
template <ExactField F>
struct GradedPiece {
  RingDescriptor<F> ring;
  Exp tdeg;
  Exp bound;
  std::shared_ptr<const Coordinates> coords;
  Subspace<F> space;
  ColengthWitness soundness;

  std::size_t dim() const { return space.dim(); }
};

namespace detail {

template <ExactField F>
Vec<F> truncated_image(const Coordinates& coords, const Poly<F>& p, Exp bound) {
  const F& f = p.field();
  Vec<F> v(coords.size(), f.zero());
  for (const auto& [m, c] : p.terms()) {
    if (m.xdeg() >= bound) continue;
    auto idx = coords.find(m);
    if (!idx) throw Error(Errc::structural, "term " + m.to_string() + " outside the truncated coordinates");
    v[*idx] = f.add(v[*idx], c);
  }
  return v;
}

template <ExactField F>
Poly<F> lift(const RingDescriptor<F>& ring, const Coordinates& coords, const Vec<F>& v) {
  Poly<F> out(ring);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!ring.field.is_zero(v[i])) out.add_term(coords[i], v[i]);
  }
  return out;
}

inline std::shared_ptr<const Coordinates> truncated_coordinates(int d, int p, Exp n, Exp bound) {
  return std::make_shared<const Coordinates>(enumerate_basis(d, p, n, bound));
}

/// Spans x^alpha * g for every generator and every x-monomial that keeps
/// some term below the bound.
template <ExactField F>
Subspace<F> first_power_span(const ModulePresentation<F>& mod, const Coordinates& coords, Exp bound) {
  const auto& ring = mod.ring();
  Subspace<F> s(ring.field, coords.size());
  for (const auto& g : mod.gens()) {
    Exp low = g.min_xdeg();
    for (Exp k = 0; k + low < bound; ++k) {
      for (const auto& a : exponents_of_degree(ring.d, k)) {
        s.insert(truncated_image(coords, g.times_monomial(Monomial(a, ExpVec(static_cast<std::size_t>(ring.p), 0))),
                                 bound));
      }
    }
  }
  return s;
}

template <ExactField F>
Subspace<F> monomial_span(const MonomialModule& m, const Coordinates& coords, const F& field) {
  Subspace<F> s(field, coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!m.contains(coords[i])) continue;
    Vec<F> v(coords.size(), field.zero());
    v[i] = field.one();
    s.insert(v);
  }
  return s;
}

}  // namespace detail

/// Truncated pieces M^1, M^2, ... at one fixed x-degree bound, each power
/// spanned from the previous one.
template <ExactField F>
class PieceTower {
 public:
  PieceTower(ModulePresentation<F> mod, Exp bound, ColengthWitness soundness = {})
      : mod_(std::move(mod)), bound_(bound), soundness_(std::move(soundness)) {}

  Exp bound() const { return bound_; }

  const GradedPiece<F>& operator[](int n) {
    if (n < 1) throw Error(Errc::precondition, "piece power must be >= 1");
    const auto& ring = mod_.ring();
    while (static_cast<int>(pieces_.size()) < n) {
      int k = static_cast<int>(pieces_.size()) + 1;
      Exp tdeg = checked_mul(mod_.tdeg(), k);
      auto coords = detail::truncated_coordinates(ring.d, ring.p, tdeg, bound_);
      Subspace<F> space(ring.field, coords->size());
      if (mod_.monomial()) {
        space = detail::monomial_span(mod_.monomial_module().power(k), *coords, ring.field);
      } else if (k == 1) {
        space = detail::first_power_span(mod_, *coords, bound_);
      } else {
        const auto& prev = pieces_.back();
        for (const auto& b : prev.space.basis()) {
          auto lifted = detail::lift(ring, *prev.coords, b);
          for (const auto& g : mod_.gens()) space.insert(detail::truncated_image(*coords, lifted * g, bound_));
        }
      }
      pieces_.push_back(GradedPiece<F>{ring, tdeg, bound_, coords, std::move(space), soundness_});
    }
    return pieces_[static_cast<std::size_t>(n - 1)];
  }

 private:
  ModulePresentation<F> mod_;
  Exp bound_;
  ColengthWitness soundness_;
  std::vector<GradedPiece<F>> pieces_;
};

template <ExactField F>
GradedPiece<F> piece(const ModulePresentation<F>& mod, int n, Exp bound) {
  if (bound < 1) throw Error(Errc::precondition, "truncation bound must be >= 1");
  PieceTower<F> tower(mod, bound);
  return tower[n];
}

/// Least c with m^c F^g contained in the module.
template <ExactField F>
ColengthWitness colength_exponent(const ModulePresentation<F>& mod, Exp ceiling = 64) {
  const auto& ring = mod.ring();
  if (mod.monomial()) {
    const auto& m = mod.monomial_module();
    Exp c = 0;
    for (const auto& beta : exponents_of_degree(ring.p, mod.tdeg())) {
      MonomialIdeal comp = m.component(beta);
      if (!comp.is_m_primary()) return {std::nullopt, "monomial-staircase"};
      for (const auto& a : difference_monomials(MonomialIdeal::unit(ring.d), comp)) c = std::max(c, degree(a) + 1);
    }
    return {c, "monomial-staircase"};
  }
  for (Exp c = 0; c <= ceiling; ++c) {
    Exp bound = c + 1;
    auto coords = detail::truncated_coordinates(ring.d, ring.p, mod.tdeg(), bound);
    auto span = detail::first_power_span(mod, *coords, bound);
    bool all = true;
    for (std::size_t i = 0; i < coords->size() && all; ++i) {
      if ((*coords)[i].xdeg() != c) continue;
      Vec<F> v(coords->size(), ring.field.zero());
      v[i] = ring.field.one();
      all = span.contains(v);
    }
    if (all) return {c, "nakayama-truncation"};
  }
  throw Error(Errc::undecided_colength, "no colength exponent up to " + std::to_string(ceiling) + " for " +
                                            mod.to_string());
}

template <ExactField F>
Exp finite_colength(const ModulePresentation<F>& mod, const std::string& what) {
  auto w = colength_exponent(mod);
  if (!w.c) throw Error(Errc::infinite_length, what + " needs finite colength: " + mod.to_string());
  return *w.c;
}

/// small is contained in big, decided exactly.
template <ExactField F>
bool contains(const ModulePresentation<F>& big, const ModulePresentation<F>& small) {
  require_compatible(big, small);
  if (big.monomial() && small.monomial()) return big.monomial_module().contains(small.monomial_module());
  if (big.monomial()) {
    const auto& m = big.monomial_module();
    for (const auto& g : small.gens()) {
      for (const auto& [mono, c] : g.terms()) {
        if (!m.contains(mono)) return false;
      }
    }
    return true;
  }
  Exp bound = std::max<Exp>(finite_colength(big, "membership test"), 1);
  auto p = piece(big, 1, bound);
  for (const auto& g : small.gens()) {
    if (!p.space.contains(detail::truncated_image(*p.coords, g, bound))) return false;
  }
  return true;
}

template <ExactField F>
bool same_module(const ModulePresentation<F>& a, const ModulePresentation<F>& b) {
  if (a.monomial() && b.monomial()) return a.monomial_module() == b.monomial_module();
  return contains(a, b) && contains(b, a);
}

/// Exact length of big^n / small^n. `extra` enlarges every truncation bound
/// and staircase scan as a soundness probe.
template <ExactField F>
std::uint64_t length_of_quotient(const ModulePresentation<F>& big, const ModulePresentation<F>& small, int n,
                                 int extra = 0) {
  require_compatible(big, small);
  if (!contains(big, small)) throw Error(Errc::not_a_subpair, small.to_string() + " not inside " + big.to_string());
  if (big.monomial() && small.monomial()) {
    auto len = count_difference(big.monomial_module().power(n), small.monomial_module().power(n), extra);
    if (!len) throw Error(Errc::infinite_length, "quotient at n = " + std::to_string(n) + " has infinite length");
    return *len;
  }
  auto w = colength_exponent(small);
  if (!w.c) throw Error(Errc::infinite_length, "smaller module has infinite colength");
  Exp bound = checked_add(checked_mul(*w.c, n), 1 + extra);
  auto pb = piece(big, n, bound);
  auto ps = piece(small, n, bound);
  return pb.dim() - ps.dim();
}

/// Lengths of big^n / small^n for n = 1..n_max, sharing one truncation.
template <ExactField F>
std::vector<std::uint64_t> length_table(const ModulePresentation<F>& big, const ModulePresentation<F>& small,
                                        int n_max, int extra = 0) {
  require_compatible(big, small);
  if (!contains(big, small)) throw Error(Errc::not_a_subpair, small.to_string() + " not inside " + big.to_string());
  std::vector<std::uint64_t> out;
  if (big.monomial() && small.monomial()) {
    MonomialPowers pb(big.monomial_module());
    MonomialPowers ps(small.monomial_module());
    for (int n = 1; n <= n_max; ++n) {
      auto len = count_difference(pb[n], ps[n], extra);
      if (!len) throw Error(Errc::infinite_length, "quotient at n = " + std::to_string(n) + " has infinite length");
      out.push_back(*len);
    }
    return out;
  }
  auto w = colength_exponent(small);
  if (!w.c) throw Error(Errc::infinite_length, "smaller module has infinite colength");
  Exp bound = checked_add(checked_mul(*w.c, n_max), 1 + extra);
  PieceTower<F> tb(big, bound, w);
  PieceTower<F> ts(small, bound, w);
  for (int n = 1; n <= n_max; ++n) out.push_back(tb[n].dim() - ts[n].dim());
  return out;
}

namespace detail {

/// Combinations lambda with sum lambda_j rows_j = 0, via echelon form of
/// [rows | identity].
template <ExactField F>
std::vector<Vec<F>> left_kernel(const F& field, const std::vector<Vec<F>>& rows, std::size_t width) {
  const std::size_t j = rows.size();
  Subspace<F> s(field, width + j);
  for (std::size_t i = 0; i < j; ++i) {
    Vec<F> v(width + j, field.zero());
    std::copy(rows[i].begin(), rows[i].end(), v.begin());
    v[width + i] = field.one();
    s.insert(v);
  }
  std::vector<Vec<F>> out;
  for (const auto& b : s.basis()) {
    bool left_zero = std::all_of(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(width),
                                 [&](const auto& a) { return field.is_zero(a); });
    if (left_zero) out.emplace_back(b.begin() + static_cast<std::ptrdiff_t>(width), b.end());
  }
  return out;
}

template <ExactField F>
ModulePresentation<F> with_extra_gens(const ModulePresentation<F>& floor, std::vector<Poly<F>> extra_gens) {
  if (extra_gens.empty()) return floor;
  auto gens = floor.gens();
  gens.insert(gens.end(), extra_gens.begin(), extra_gens.end());
  return ModulePresentation<F>(floor.ring(), floor.tdeg(), std::move(gens));
}

}  // namespace detail

/// floor + {y in frame : y * e in target for every e in elems}, solved as a
/// kernel over a basis of frame/floor.
template <ExactField F>
ModulePresentation<F> colon_into_frame(const ModulePresentation<F>& target, const std::vector<Poly<F>>& elems,
                                       const ModulePresentation<F>& frame, const ModulePresentation<F>& floor,
                                       int extra = 0) {
  require_compatible(frame, floor);
  const auto& ring = frame.ring();
  const F& field = ring.field;
  for (const auto& e : elems) {
    if (!e.is_zero() && e.tdeg() != target.tdeg() - frame.tdeg()) {
      throw Error(Errc::precondition, "element t-degree does not match target and frame");
    }
  }
  if (!contains(frame, floor)) throw Error(Errc::not_a_subpair, "floor is not inside frame");

  if (target.monomial() && frame.monomial() && floor.monomial()) {
    const auto& tm = target.monomial_module();
    for (const auto& f : floor.monomial_module().generators()) {
      for (const auto& e : elems) {
        for (const auto& [m, c] : e.terms()) {
          if (!tm.contains(f * m)) throw Error(Errc::structural, "floor * element leaves the target");
        }
      }
    }
    auto ws = difference_monomials(frame.monomial_module(), floor.monomial_module(), extra);
    std::unordered_map<Monomial, std::size_t, MonomialHash> bad;
    std::vector<std::vector<std::pair<std::size_t, typename F::value_type>>> sparse(ws.size());
    for (std::size_t j = 0; j < ws.size(); ++j) {
      for (std::size_t ei = 0; ei < elems.size(); ++ei) {
        for (const auto& [m, c] : elems[ei].terms()) {
          Monomial u = ws[j] * m;
          if (tm.contains(u)) continue;
          // Tag the monomial with the element index in an extra t-slot.
          Monomial key(u.x, u.t);
          key.t.push_back(static_cast<Exp>(ei));
          auto it = bad.try_emplace(std::move(key), bad.size()).first;
          sparse[j].emplace_back(it->second, c);
        }
      }
    }
    std::vector<Vec<F>> rows(ws.size(), Vec<F>(bad.size(), field.zero()));
    for (std::size_t j = 0; j < ws.size(); ++j) {
      for (const auto& [idx, c] : sparse[j]) rows[j][idx] = field.add(rows[j][idx], c);
    }
    std::vector<Poly<F>> found;
    for (const auto& lambda : detail::left_kernel(field, rows, bad.size())) {
      Poly<F> y(ring);
      for (std::size_t j = 0; j < ws.size(); ++j) {
        if (!field.is_zero(lambda[j])) y.add_term(ws[j], lambda[j]);
      }
      found.push_back(std::move(y));
    }
    return detail::with_extra_gens(floor, std::move(found));
  }

  Exp floor_c = finite_colength(floor, "frame computation");
  Exp target_c = finite_colength(target, "frame computation");
  Exp fb = std::max<Exp>(floor_c, 1) + extra;
  Exp tb = std::max<Exp>(target_c, 1) + extra;
  auto pfloor = piece(floor, 1, fb);
  auto pframe = piece(frame, 1, fb);
  auto ptarget = piece(target, 1, tb);
  auto tcoords = detail::truncated_coordinates(ring.d, ring.p, target.tdeg(), tb);
  for (const auto& f : floor.gens()) {
    for (const auto& e : elems) {
      if (!ptarget.space.contains(detail::truncated_image(*tcoords, f * e, tb))) {
        throw Error(Errc::structural, "floor * element leaves the target");
      }
    }
  }
  std::vector<Poly<F>> ws;
  Subspace<F> acc = pfloor.space;
  for (const auto& b : pframe.space.basis()) {
    if (acc.insert(b)) ws.push_back(detail::lift(ring, *pframe.coords, b));
  }
  std::size_t width = tcoords->size() * elems.size();
  std::vector<Vec<F>> rows;
  for (const auto& w : ws) {
    Vec<F> row;
    row.reserve(width);
    for (const auto& e : elems) {
      auto r = ptarget.space.reduce(detail::truncated_image(*tcoords, w * e, tb));
      row.insert(row.end(), r.begin(), r.end());
    }
    rows.push_back(std::move(row));
  }
  std::vector<Poly<F>> found;
  for (const auto& lambda : detail::left_kernel(field, rows, width)) {
    Poly<F> y(ring);
    for (std::size_t j = 0; j < ws.size(); ++j) {
      if (!field.is_zero(lambda[j])) y = y + ws[j].scaled(lambda[j]);
    }
    found.push_back(std::move(y));
  }
  return detail::with_extra_gens(floor, std::move(found));
}

}  // namespace coefmod
