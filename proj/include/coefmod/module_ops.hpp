#pragma once

/// @file module_ops.hpp
/// Saturation, Ratliff-Rush closure, Fitting ideals, monomial integral
/// closure, reductions and analytic spread.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/graded.hpp"
#include "coefmod/hilbert_fit.hpp"
#include "coefmod/newton.hpp"
#include "coefmod/presentation.hpp"

namespace coefmod {

struct Options {
  int n_max = 8;          // length table size
  int window = 3;         // fit confirmation points
  int budget = 8;         // reduction draws per coefficient computation
  int n0_max = 2;         // largest power tried for generic reductions
  int n0_targeted = 4;    // largest power tried for targeted reductions
  int r_max = 8;          // reduction exponent bound
  int attempts = 8;       // random draws per minimal reduction
  int rr_window = 2;      // extra Ratliff-Rush confirmation steps
  int rr_max = 12;        // Ratliff-Rush chain bound
  int extra = 0;          // truncation soundness probe
  int probe_samples = 50; // maximality probe samples per link
};

template <ExactField F>
struct SaturationResult {
  ModulePresentation<F> module;
  int index = 0;
};

template <ExactField F>
SaturationResult<F> saturate(const ModulePresentation<F>& m) {
  if (m.monomial()) {
    auto [sat, k] = saturation(m.monomial_module());
    return {ModulePresentation<F>::from_monomial(m.ring(), sat), k};
  }
  Exp c = finite_colength(m, "saturation");
  return {ModulePresentation<F>::free(m.ring(), m.tdeg()), static_cast<int>(c)};
}

template <ExactField F>
struct RatliffRushResult {
  ModulePresentation<F> module;
  int index = 0;                              // last n where the union grew
  std::vector<ModulePresentation<F>> chain;  // (M^{n+1} : M^n), n = 1..
};

/// Union of (M^{n+1} :_F M^n), stopped after the union has been unchanged
/// for window + 1 consecutive steps.
template <ExactField F>
RatliffRushResult<F> ratliff_rush(const ModulePresentation<F>& m, int n_max = 12, int window = 2) {
  if (m.is_zero()) return {m, 0, {}};
  std::optional<ModulePresentation<F>> uni;
  int unchanged = 0;
  int index = 0;
  std::vector<ModulePresentation<F>> chain;
  if (m.monomial()) {
    MonomialPowers pw(m.monomial_module());
    for (int n = 1; n <= n_max; ++n) {
      auto c = ModulePresentation<F>::from_monomial(m.ring(), pw[n + 1].colon(pw[n]));
      chain.push_back(c);
      auto next = uni ? sum(*uni, c) : sum(m, c);
      if (uni && same_module(next, *uni)) {
        ++unchanged;
      } else {
        unchanged = 0;
        index = n;
      }
      uni = next;
      if (unchanged >= window + 1) return {*uni, index, chain};
    }
  } else {
    auto frame = ModulePresentation<F>::free(m.ring(), m.tdeg());
    auto prev_power = m;
    for (int n = 1; n <= n_max; ++n) {
      auto next_power = product(prev_power, m);
      auto c = colon_into_frame(next_power, prev_power.gens(), frame, m);
      chain.push_back(c);
      auto next = uni ? sum(*uni, c) : c;
      if (uni && same_module(next, *uni)) {
        ++unchanged;
      } else {
        unchanged = 0;
        index = n;
      }
      uni = next;
      prev_power = next_power;
      if (unchanged >= window + 1) return {*uni, index, chain};
    }
  }
  throw Error(Errc::unstable_union, "Ratliff-Rush union not stable within " + std::to_string(n_max) +
                                        " steps; last union " + uni->to_string());
}

namespace detail {

template <ExactField F>
Poly<F> determinant(std::vector<std::vector<Poly<F>>> a, const RingDescriptor<F>& ring) {
  const std::size_t n = a.size();
  if (n == 0) return Poly<F>::constant(ring, ring.field.one());
  if (n == 1) return a[0][0];
  Poly<F> out(ring);
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Poly<F>>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly<F>> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(a[r][k]);
      }
      minor.push_back(std::move(row));
    }
    auto term = a[0][c] * determinant(std::move(minor), ring);
    out = c % 2 == 0 ? out + term : out - term;
  }
  return out;
}

}  // namespace detail

/// The ideal of p x p minors of the generator matrix, as a t-degree-0
/// presentation.
template <ExactField F>
ModulePresentation<F> fitting_ideal(const ModulePresentation<F>& m) {
  if (m.tdeg() != 1) throw Error(Errc::precondition, "Fitting ideal needs a submodule of F (t-degree 1)");
  const auto& ring = m.ring();
  const std::size_t p = static_cast<std::size_t>(ring.p);
  const std::size_t g = m.gens().size();
  if (g < p) throw Error(Errc::rank_deficient, std::to_string(g) + " generators for rank " + std::to_string(p));
  // cols[j][i]: coefficient of t_i in generator j.
  std::vector<std::vector<Poly<F>>> cols(g, std::vector<Poly<F>>(p, Poly<F>(ring)));
  for (std::size_t j = 0; j < g; ++j) {
    for (const auto& [mono, c] : m.gens()[j].terms()) {
      std::size_t i = 0;
      while (mono.t[i] == 0) ++i;
      cols[j][i].add_term(Monomial(mono.x, ExpVec(p, 0)), c);
    }
  }
  std::vector<Poly<F>> minors;
  std::vector<std::size_t> pick(p);
  for (std::size_t i = 0; i < p; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::vector<Poly<F>>> a(p, std::vector<Poly<F>>(p, Poly<F>(ring)));
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = 0; c < p; ++c) a[r][c] = cols[pick[c]][r];
    }
    auto det = detail::determinant(std::move(a), ring);
    if (!det.is_zero()) minors.push_back(det);
    std::size_t i = p;
    while (i > 0 && pick[i - 1] == g - p + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < p; ++k) pick[k] = pick[k - 1] + 1;
  }
  if (minors.empty()) throw Error(Errc::rank_deficient, "all maximal minors vanish");
  return ModulePresentation<F>(ring, 0, std::move(minors));
}

template <ExactField F>
ModulePresentation<F> integral_closure_monomial(const ModulePresentation<F>& m) {
  if (!m.monomial()) throw Error(Errc::regime, "integral closure needs a monomial module");
  return ModulePresentation<F>::from_monomial(m.ring(), integral_closure(m.monomial_module()));
}

/// q(M) = integral closure intersected with the saturation.
template <ExactField F>
ModulePresentation<F> relative_integral_closure(const ModulePresentation<F>& m) {
  if (!m.monomial()) throw Error(Errc::regime, "relative integral closure needs a monomial module");
  auto closure = integral_closure(m.monomial_module());
  auto sat = saturation(m.monomial_module()).first;
  return ModulePresentation<F>::from_monomial(m.ring(), closure.intersect(sat));
}

template <ExactField F>
struct ReductionWitness {
  std::vector<Poly<F>> elems;
  int n0 = 1;
  int r = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

struct ReductionCheck {
  bool reduction = false;
  int r = -1;  // least r with N M^r = M^{r+1}, when a reduction
  int r_max = 0;
  std::optional<FittedPolynomial> rees_fit;  // l(M^n/N^n), when computable
};

namespace detail {

/// N M^r + m M^{r+1} = M^{r+1}; by Nakayama this is N M^r = M^{r+1} locally.
template <ExactField F>
bool fiber_check_monomial(const ModulePresentation<F>& n, const MonomialModule& mr, const MonomialModule& mr1) {
  if (n.monomial()) return n.monomial_module() * mr == mr1;
  const auto& ring = n.ring();
  Coordinates coords(mr1.generators());
  Subspace<F> s(ring.field, coords.size());
  for (const auto& g : n.gens()) {
    for (const auto& u : mr.generators()) {
      Vec<F> v(coords.size(), ring.field.zero());
      for (const auto& [mono, c] : g.terms()) {
        if (auto idx = coords.find(mono * u)) v[*idx] = ring.field.add(v[*idx], c);
      }
      s.insert(v);
      if (s.dim() == coords.size()) return true;
    }
  }
  return s.dim() == coords.size();
}

template <ExactField F>
bool fiber_check_general(const ModulePresentation<F>& n, const ModulePresentation<F>& m, Exp c, int r, int extra) {
  const auto& ring = n.ring();
  Exp bound = checked_add(checked_mul(c, r + 1), 1 + extra);
  PieceTower<F> tower(m, bound);
  const auto& top = tower[r + 1];
  Subspace<F> s(ring.field, top.coords->size());
  for (const auto& b : top.space.basis()) {
    auto lifted = lift(ring, *top.coords, b);
    for (int i = 0; i < ring.d; ++i) {
      ExpVec xi(static_cast<std::size_t>(ring.d), 0);
      xi[static_cast<std::size_t>(i)] = 1;
      s.insert(truncated_image(*top.coords,
                               lifted.times_monomial(Monomial(xi, ExpVec(static_cast<std::size_t>(ring.p), 0))),
                               bound));
    }
  }
  std::vector<Poly<F>> lower;
  if (r == 0) {
    lower.push_back(Poly<F>::constant(ring, ring.field.one()));
  } else {
    const auto& below = tower[r];
    for (const auto& b : below.space.basis()) lower.push_back(lift(ring, *below.coords, b));
  }
  for (const auto& g : n.gens()) {
    for (const auto& u : lower) s.insert(truncated_image(*top.coords, g * u, bound));
  }
  return top.space.is_subspace_of(s);
}

}  // namespace detail

/// Least r <= r_max with N M^r = M^{r+1}; the next exponent is re-verified.
template <ExactField F>
ReductionCheck is_reduction(const ModulePresentation<F>& n, const ModulePresentation<F>& m, int r_max, int extra = 0) {
  require_compatible(n, m);
  if (!contains(m, n)) throw Error(Errc::structural, n.to_string() + " is not inside " + m.to_string());
  ReductionCheck out;
  out.r_max = r_max;
  if (m.monomial()) {
    MonomialPowers pw(m.monomial_module());
    for (int r = 0; r <= r_max; ++r) {
      if (detail::fiber_check_monomial(n, pw[r], pw[r + 1])) {
        if (!detail::fiber_check_monomial(n, pw[r + 1], pw[r + 2])) {
          throw Error(Errc::structural, "reduction identity failed to propagate");
        }
        out.reduction = true;
        out.r = r;
        return out;
      }
    }
  } else {
    Exp c = finite_colength(m, "reduction test");
    for (int r = 0; r <= r_max; ++r) {
      if (detail::fiber_check_general(n, m, c, r, extra)) {
        if (!detail::fiber_check_general(n, m, c, r + 1, extra)) {
          throw Error(Errc::structural, "reduction identity failed to propagate");
        }
        out.reduction = true;
        out.r = r;
        return out;
      }
    }
  }
  if (n.monomial() && m.monomial()) {
    try {
      auto table = length_table(m, n, 8, extra);
      out.rees_fit = fit(NumericalFunction::from_table(LengthKind::rees_amao, table), 3);
    } catch (const Error&) {
    }
  }
  return out;
}

/// mu(M^n) = dim M^n / m M^n for n = 1..n_max.
template <ExactField F>
std::vector<std::uint64_t> fiber_table(const ModulePresentation<F>& m, int n_max, int extra = 0) {
  std::vector<std::uint64_t> out;
  if (m.monomial()) {
    MonomialPowers pw(m.monomial_module());
    for (int n = 1; n <= n_max; ++n) out.push_back(pw[n].generator_count());
    return out;
  }
  const auto& ring = m.ring();
  Exp c = finite_colength(m, "fiber table");
  Exp bound = checked_add(checked_mul(c, n_max), 1 + extra);
  PieceTower<F> tower(m, bound);
  for (int n = 1; n <= n_max; ++n) {
    const auto& pc = tower[n];
    Subspace<F> mm(ring.field, pc.coords->size());
    for (const auto& b : pc.space.basis()) {
      auto lifted = detail::lift(ring, *pc.coords, b);
      for (int i = 0; i < ring.d; ++i) {
        ExpVec xi(static_cast<std::size_t>(ring.d), 0);
        xi[static_cast<std::size_t>(i)] = 1;
        mm.insert(detail::truncated_image(
            *pc.coords, lifted.times_monomial(Monomial(xi, ExpVec(static_cast<std::size_t>(ring.p), 0))), bound));
      }
    }
    out.push_back(pc.dim() - mm.dim());
  }
  return out;
}

struct SpreadReport {
  int s = 0;
  std::vector<std::uint64_t> table;
  FittedPolynomial fit;
};

/// s = 1 + degree of n -> mu(M^n); the table is lengthened by 4 up to twice
/// when its tail is not yet confirmed.
template <ExactField F>
SpreadReport analytic_spread(const ModulePresentation<F>& m, int n_max = 8, int window = 3, int extra = 0) {
  if (m.is_zero()) throw Error(Errc::precondition, "analytic spread of the zero module");
  SpreadReport out;
  for (int attempt = 0;; ++attempt, n_max += 4) {
    out.table = fiber_table(m, n_max, extra);
    try {
      out.fit = coefmod::fit(NumericalFunction::from_table(LengthKind::fiber, out.table), window);
      break;
    } catch (const Error& e) {
      if (attempt >= 2) throw Error(Errc::undecided_spread, e.what());
    }
  }
  out.s = out.fit.degree + 1;
  return out;
}

/// Generators spanning M^{n0} / m M^{n0}.
template <ExactField F>
std::vector<Poly<F>> power_generators(const ModulePresentation<F>& m, int n0) {
  return power(m, n0).gens();
}

/// Random k-linear combinations of the generators of M^{n0}, retried until
/// they form a reduction of M^{n0}.
template <ExactField F>
ReductionWitness<F> minimal_reduction(const ModulePresentation<F>& m, int n0, int count, Rng& rng,
                                      const Options& opt = {}, std::optional<int> spread = {}) {
  if (count < 1) throw Error(Errc::precondition, "reduction needs at least one element");
  if (spread && count < *spread) {
    throw Error(Errc::precondition, std::to_string(count) + " elements cannot reduce a module of analytic spread " +
                                        std::to_string(*spread));
  }
  const auto& ring = m.ring();
  auto mn0 = power(m, n0);
  const auto& gens = mn0.gens();
  std::vector<std::string> warnings;
  if constexpr (std::is_same_v<F, PrimeField>) {
    if (ring.field.modulus() < 10000) warnings.push_back("residue field has fewer than 10^4 elements");
  }
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    std::uint64_t seed = rng();
    Rng local(seed);
    std::vector<Poly<F>> elems;
    for (int i = 0; i < count; ++i) {
      Poly<F> e(ring);
      for (const auto& g : gens) e = e + g.scaled(ring.field.random(local));
      elems.push_back(std::move(e));
    }
    ModulePresentation<F> n(ring, mn0.tdeg(), elems);
    auto chk = is_reduction(n, mn0, opt.r_max, opt.extra);
    if (chk.reduction) return {std::move(elems), n0, chk.r, seed, warnings};
  }
  throw Error(Errc::genericity_failure, "no reduction of M^" + std::to_string(n0) + " with " + std::to_string(count) +
                                            " elements in " + std::to_string(opt.attempts) +
                                            " draws; try a larger field or n0");
}

}  // namespace coefmod
