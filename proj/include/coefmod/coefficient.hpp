#pragma once

/// @file coefficient.hpp
/// Coefficient modules M_k and associated-graded coefficient modules M_[k],
/// computed as colons by minimal reductions inside a finite-colength frame,
/// joined over random draws, and certified by fitted degree conditions.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/graded.hpp"
#include "coefmod/hilbert_fit.hpp"
#include "coefmod/module_ops.hpp"

namespace coefmod {

template <ExactField F>
struct CoefficientCertificate {
  int k = 0;
  int s = 0;
  bool graded = false;  // M_[k] rather than M_k
  int n0 = 0;
  std::optional<ReductionWitness<F>> reduction;
  ModulePresentation<F> result;
  DegreeCertificate degree;
  std::vector<std::string> checks_passed;
  bool join_stable = false;
  int draws = 0;
};

/// A monomial module is fixed by the torus, so every monomial in the
/// support of an element lies in it as well.
template <ExactField F>
ModulePresentation<F> monomial_support(const ModulePresentation<F>& m) {
  std::vector<Monomial> ms;
  for (const auto& g : m.gens()) {
    for (const auto& [mono, c] : g.terms()) ms.push_back(mono);
  }
  return ModulePresentation<F>::from_monomial(
      m.ring(), MonomialModule::from_generators(m.ring().d, m.ring().p, m.tdeg(), ms));
}

/// Fits a table, lengthening it when the tail is not yet confirmed.
inline DegreeCertificate adaptive_degree_test(const std::function<std::vector<std::uint64_t>(int)>& table_fn,
                                              LengthKind kind, int threshold, bool inclusive, const Options& opt) {
  int n_max = opt.n_max;
  for (int attempt = 0;; ++attempt) {
    auto table = table_fn(n_max);
    try {
      return degree_test(NumericalFunction::from_table(kind, table), threshold, inclusive, opt.window);
    } catch (const Error& e) {
      if (e.code() != Errc::unstable_fit || attempt >= 2) throw;
    }
    n_max += 4;
  }
}

/// The colon problem behind one chain: M_k (graded = false) or M_[k].
template <ExactField F>
struct ChainProblem {
  ModulePresentation<F> base;
  ModulePresentation<F> frame;
  ModulePresentation<F> floor;
  std::optional<ModulePresentation<F>> ideal;  // I(M) for the graded chain
  bool graded = false;
  int s = 0;

  ModulePresentation<F> target(int n0) const {
    auto pw = power(base, n0 + 1);
    return graded ? product(*ideal, pw) : pw;
  }

  std::vector<std::uint64_t> table(const ModulePresentation<F>& j, int n_max, int extra) const {
    if (!graded) return length_table(j, base, n_max, extra);
    std::vector<std::uint64_t> out;
    auto lower = ModulePresentation<F>::free(base.ring(), 0);
    for (int n = 1; n <= n_max; ++n) {
      auto upper = product(j, lower);
      auto below = product(*ideal, product(lower, base));
      out.push_back(length_of_quotient(upper, below, 1, extra));
      lower = product(lower, base);
    }
    return out;
  }

  DegreeCertificate degree(const ModulePresentation<F>& j, int k, const Options& opt) const {
    auto fn = [&](int n_max) { return table(j, n_max, opt.extra); };
    if (graded) return adaptive_degree_test(fn, LengthKind::graded, s - (k + 1), true, opt);
    return adaptive_degree_test(fn, LengthKind::rees_amao, s - k, false, opt);
  }
};

template <ExactField F>
ChainProblem<F> coefficient_problem(const ModulePresentation<F>& m, const Options& opt) {
  auto sat = saturate(m).module;
  int s = analytic_spread(m, opt.n_max, opt.window, opt.extra).s;
  return ChainProblem<F>{m, sat, m, std::nullopt, false, s};
}

/// The graded chain of M inside F^g; `ideal` defaults to I(M).
template <ExactField F>
ChainProblem<F> graded_problem(const ModulePresentation<F>& m, const Options& opt,
                               std::optional<ModulePresentation<F>> ideal = {}) {
  if (!colength_exponent(m).finite()) throw Error(Errc::infinite_length, "graded chain needs finite colength");
  auto i = ideal ? *ideal : fitting_ideal(m);
  int s = analytic_spread(m, opt.n_max, opt.window, opt.extra).s;
  return ChainProblem<F>{m, m, product(i, m), i, true, s};
}

namespace detail {

/// For each monomial y of the frame outside the current join whose adjunction
/// keeps the degree condition, draws minimal reductions of M^{n0} whose first
/// k elements combine generators g with g y in the target, so that y lies in
/// the colon; the colon is joined when the degree condition survives.
template <ExactField F>
void targeted_join(const ChainProblem<F>& prob, CoefficientCertificate<F>& c, Rng& rng, const Options& opt) {
  const auto& ring = prob.base.ring();
  std::vector<ModulePresentation<F>> powers;
  std::vector<ModulePresentation<F>> targets;
  for (int n0 = 1; n0 <= opt.n0_targeted; ++n0) {
    powers.push_back(power(prob.base, n0));
    targets.push_back(prob.target(n0));
  }
  auto pool = difference_monomials(prob.frame.monomial_module(), c.result.monomial_module());
  for (const auto& y : pool) {
    if (c.result.monomial_module().contains(y)) continue;
    auto with_y = sum(c.result, ModulePresentation<F>::from_monomial(
                                    ring, MonomialModule::from_generators(ring.d, ring.p, prob.base.tdeg(), {y})));
    try {
      if (!prob.degree(with_y, c.k, opt).holds) continue;
    } catch (const Error& e) {
      if (e.code() != Errc::unstable_fit) throw;
      continue;
    }
    for (int n0 = 1; n0 <= opt.n0_targeted; ++n0) {
      const auto& mn0 = powers[static_cast<std::size_t>(n0 - 1)];
      const auto& target = targets[static_cast<std::size_t>(n0 - 1)].monomial_module();
      std::vector<Poly<F>> annihilating;
      for (const auto& g : mn0.monomial_module().generators()) {
        if (target.contains(g * y)) annihilating.push_back(Poly<F>::monomial(ring, g));
      }
      if (annihilating.empty()) continue;
      bool joined = false;
      for (int attempt = 0; attempt < 2 && !joined; ++attempt) {
        std::uint64_t seed = rng();
        Rng local(seed);
        std::vector<Poly<F>> elems;
        for (int i = 0; i < prob.s; ++i) {
          const auto& from = i < c.k ? annihilating : mn0.gens();
          Poly<F> e(ring);
          for (const auto& g : from) e = e + g.scaled(ring.field.random(local));
          elems.push_back(std::move(e));
        }
        ModulePresentation<F> red(ring, mn0.tdeg(), elems);
        auto chk = is_reduction(red, mn0, opt.r_max, opt.extra);
        if (!chk.reduction) continue;
        std::vector<Poly<F>> first(elems.begin(), elems.begin() + c.k);
        auto cand = monomial_support(colon_into_frame(targets[static_cast<std::size_t>(n0 - 1)], first, prob.frame,
                                                      prob.floor, opt.extra));
        auto grown = sum(c.result, cand);
        ++c.draws;
        auto deg = prob.degree(grown, c.k, opt);
        if (!deg.holds) continue;
        c.result = grown;
        c.degree = deg;
        c.n0 = n0;
        c.reduction = ReductionWitness<F>{std::move(elems), n0, chk.r, seed, {}};
        joined = true;
      }
      if (joined) break;
    }
  }
}

}  // namespace detail

/// Joins colon candidates over random minimal reductions for each requested
/// k, enlarging a join only when the enlarged module still passes its degree
/// condition. One reduction per draw serves every k.
template <ExactField F>
std::vector<CoefficientCertificate<F>> run_chain(const ChainProblem<F>& prob, const std::vector<int>& ks, Rng& rng,
                                                 const Options& opt) {
  for (int k : ks) {
    if (k < 1 || k > prob.s) {
      throw Error(Errc::precondition, "k = " + std::to_string(k) + " outside 1.." + std::to_string(prob.s));
    }
  }
  const bool mono = prob.base.monomial() && prob.frame.monomial() && prob.floor.monomial();
  std::vector<CoefficientCertificate<F>> certs;
  for (int k : ks) {
    CoefficientCertificate<F> c{k, prob.s, prob.graded, 0, std::nullopt, prob.floor, {}, {}, false, 0};
    certs.push_back(std::move(c));
  }
  bool collapsed = same_module(prob.frame, prob.floor);
  if (!collapsed) {
    bool last_round_stable = false;
    for (int n0 = 1; n0 <= opt.n0_max; ++n0) {
      auto target = prob.target(n0);
      int quiet = 0;
      last_round_stable = false;
      for (int draw = 0; draw < opt.budget; ++draw) {
        auto wit = minimal_reduction(prob.base, n0, prob.s, rng, opt);
        bool grew = false;
        for (auto& c : certs) {
          ++c.draws;
          std::vector<Poly<F>> elems(wit.elems.begin(), wit.elems.begin() + c.k);
          auto cand = colon_into_frame(target, elems, prob.frame, prob.floor, opt.extra);
          if (mono) cand = monomial_support(cand);
          auto joined = sum(c.result, cand);
          if (same_module(joined, c.result)) continue;
          auto deg = prob.degree(joined, c.k, opt);
          if (!deg.holds) continue;
          c.result = joined;
          c.degree = deg;
          c.n0 = n0;
          c.reduction = wit;
          grew = true;
        }
        if (!certs.front().reduction) {
          for (auto& c : certs) {
            c.n0 = n0;
            c.reduction = wit;
          }
        }
        quiet = grew ? 0 : quiet + 1;
        if (quiet >= 2) {
          last_round_stable = true;
          break;
        }
      }
    }
    for (auto& c : certs) c.join_stable = last_round_stable;
    if (mono) {
      for (auto& c : certs) detail::targeted_join(prob, c, rng, opt);
    }
  } else {
    for (auto& c : certs) c.join_stable = true;
  }
  for (auto& c : certs) {
    c.degree = prob.degree(c.result, c.k, opt);
    if (!c.degree.holds) throw Error(Errc::structural, "certified module fails its degree condition");
    c.checks_passed.push_back(prob.graded ? "degree <= s-(k+1)" : "degree < s-k");
    if (!contains(c.result, prob.floor)) throw Error(Errc::structural, "result does not contain the floor");
    if (!contains(prob.frame, c.result)) throw Error(Errc::structural, "result leaves the frame");
    c.checks_passed.push_back(prob.graded ? "I(M)M inside result inside M" : "M inside result inside M^sat");
    if (!prob.graded && prob.base.monomial()) {
      if (!contains(relative_integral_closure(prob.base), c.result)) {
        throw Error(Errc::structural, "result leaves q(M)");
      }
      c.checks_passed.push_back("result inside q(M)");
    }
  }
  return certs;
}

template <ExactField F>
CoefficientCertificate<F> coefficient_module(const ModulePresentation<F>& m, int k, Rng& rng, const Options& opt = {}) {
  return run_chain(coefficient_problem(m, opt), {k}, rng, opt).front();
}

template <ExactField F>
CoefficientCertificate<F> assoc_graded_coefficient_module(const ModulePresentation<F>& m, int k, Rng& rng,
                                                          const Options& opt = {},
                                                          std::optional<ModulePresentation<F>> ideal = {}) {
  return run_chain(graded_problem(m, opt, ideal), {k}, rng, opt).front();
}

template <ExactField F>
struct ChainReport {
  int s = 0;
  bool graded = false;
  std::vector<CoefficientCertificate<F>> links;  // k = s, s-1, ..., 1
  std::optional<ModulePresentation<F>> top;      // q(M), or M for the graded chain
  ModulePresentation<F> bottom;                  // M, or I(M)M
  bool nested = false;
};

template <ExactField F>
bool verify_nesting(const ChainReport<F>& r) {
  const ModulePresentation<F>* prev = &r.bottom;
  for (const auto& c : r.links) {
    if (!contains(c.result, *prev)) return false;
    prev = &c.result;
  }
  return !r.top || contains(*r.top, *prev);
}

template <ExactField F>
ChainReport<F> coefficient_chain(const ModulePresentation<F>& m, Rng& rng, const Options& opt = {}) {
  auto prob = coefficient_problem(m, opt);
  std::vector<int> ks;
  for (int k = prob.s; k >= 1; --k) ks.push_back(k);
  ChainReport<F> out{prob.s, false, run_chain(prob, ks, rng, opt), std::nullopt, m, false};
  if (m.monomial()) out.top = relative_integral_closure(m);
  out.nested = verify_nesting(out);
  if (!out.nested) throw Error(Errc::structural, "coefficient chain is not nested");
  return out;
}

template <ExactField F>
ChainReport<F> assoc_graded_chain(const ModulePresentation<F>& m, Rng& rng, const Options& opt = {},
                                  std::optional<ModulePresentation<F>> ideal = {}) {
  auto prob = graded_problem(m, opt, ideal);
  std::vector<int> ks;
  for (int k = prob.s; k >= 1; --k) ks.push_back(k);
  ChainReport<F> out{prob.s, true, run_chain(prob, ks, rng, opt), m, prob.floor, false};
  out.nested = verify_nesting(out);
  if (!out.nested) throw Error(Errc::structural, "graded chain is not nested");
  return out;
}

struct ProbeReport {
  std::size_t complement_size = 0;
  std::size_t tested = 0;
  bool exhaustive = false;
  std::vector<std::string> counterexamples;  // samples that kept the degree condition
  std::vector<std::string> undecided;        // samples whose fit did not stabilize
  bool vacuous() const { return complement_size == 0; }
  bool clean() const { return counterexamples.empty() && undecided.empty(); }
};

/// Adjoins monomials of q(M) outside the certified M_k one at a time and
/// checks that each breaks the degree condition. When the complement is
/// smaller than the sample budget every monomial of it is tested.
template <ExactField F>
ProbeReport maximality_probe(const ModulePresentation<F>& m, const CoefficientCertificate<F>& cert, int samples,
                             Rng& rng, const Options& opt = {}) {
  if (!m.monomial() || !cert.result.monomial()) throw Error(Errc::regime, "maximality probe needs monomial modules");
  auto q = relative_integral_closure(m);
  auto pool = difference_monomials(q.monomial_module(), cert.result.monomial_module());
  ProbeReport out;
  out.complement_size = pool.size();
  std::vector<Monomial> chosen;
  if (static_cast<int>(pool.size()) <= samples) {
    chosen = pool;
    out.exhaustive = true;
  } else {
    std::shuffle(pool.begin(), pool.end(), rng);
    chosen.assign(pool.begin(), pool.begin() + samples);
  }
  for (const auto& y : chosen) {
    ++out.tested;
    auto l = sum(cert.result, ModulePresentation<F>::from_monomial(
                                  m.ring(), MonomialModule::from_generators(m.ring().d, m.ring().p, m.tdeg(), {y})));
    try {
      auto deg = adaptive_degree_test([&](int n_max) { return length_table(l, m, n_max, opt.extra); },
                                      LengthKind::rees_amao, cert.s - cert.k, false, opt);
      if (deg.holds) out.counterexamples.push_back(y.to_string());
    } catch (const Error& e) {
      if (e.code() != Errc::unstable_fit) throw;
      out.undecided.push_back(y.to_string());
    }
  }
  return out;
}

template <ExactField F>
struct Prop52Report {
  bool pass = false;
  ModulePresentation<F> coefficient;
  ModulePresentation<F> ratliff_rush_sat;
};

/// M_s equals the Ratliff-Rush closure intersected with the saturation.
template <ExactField F>
Prop52Report<F> check_prop_5_2(const ModulePresentation<F>& m, Rng& rng, const Options& opt = {}) {
  auto prob = coefficient_problem(m, opt);
  auto cert = run_chain(prob, {prob.s}, rng, opt).front();
  auto rr = ratliff_rush(m, opt.rr_max, opt.rr_window).module;
  ModulePresentation<F> rhs = rr;
  if (m.monomial() && rr.monomial()) {
    rhs = ModulePresentation<F>::from_monomial(
        m.ring(), rr.monomial_module().intersect(prob.frame.monomial_module()));
  } else if (!prob.frame.monomial() || !same_module(prob.frame, ModulePresentation<F>::free(m.ring(), m.tdeg()))) {
    throw Error(Errc::regime, "Ratliff-Rush intersection needs a monomial or finite-colength module");
  }
  return {same_module(cert.result, rhs), cert.result, rhs};
}

struct PreservationReport {
  bool hypothesis_met = false;
  bool pass = false;
  int k = 0;
  std::vector<mpq_class> e_module;
  std::vector<mpq_class> e_coefficient;
};

template <ExactField F>
std::vector<mpq_class> buchsbaum_rim_coefficients(const ModulePresentation<F>& m, const Options& opt) {
  int top = m.ring().d + m.ring().p - 1;
  auto free = ModulePresentation<F>::free(m.ring(), m.tdeg());
  int n_max = opt.n_max;
  for (int attempt = 0;; ++attempt) {
    auto table = length_table(free, m, n_max, opt.extra);
    try {
      return fit(NumericalFunction::from_table(LengthKind::buchsbaum_rim, table), opt.window, top).binomial_coeffs;
    } catch (const Error& e) {
      if (e.code() != Errc::unstable_fit || attempt >= 2) throw;
    }
    n_max += 4;
  }
}

/// e_i(M) = e_i(M_k) for i <= k. k = 0 compares against q(M).
template <ExactField F>
PreservationReport check_coefficient_preservation(const ModulePresentation<F>& m, int k, Rng& rng,
                                                  const Options& opt = {}) {
  PreservationReport out;
  out.k = k;
  const int top = m.ring().d + m.ring().p - 1;
  if (m.tdeg() != 1 || !colength_exponent(m).finite()) return out;
  auto prob = coefficient_problem(m, opt);
  if (prob.s != top) return out;
  out.hypothesis_met = true;
  ModulePresentation<F> mk = k == 0 ? relative_integral_closure(m) : run_chain(prob, {k}, rng, opt).front().result;
  out.e_module = buchsbaum_rim_coefficients(m, opt);
  out.e_coefficient = buchsbaum_rim_coefficients(mk, opt);
  out.pass = true;
  for (int i = 0; i <= std::min(k, top); ++i) {
    out.pass = out.pass && out.e_module[static_cast<std::size_t>(i)] == out.e_coefficient[static_cast<std::size_t>(i)];
  }
  return out;
}

struct PowerConditionReport {
  bool hypothesis_met = false;
  int k = 0;
  std::vector<int> holds;  // n with (M^n)_[k] = I(M) M^n
  std::vector<int> fails;
  bool all_hold() const { return hypothesis_met && fails.empty(); }
};

/// Evaluates (M^n)_[k] = I(M) M^n for n = 1..n_max, with M^n a submodule of
/// F^n and I(M) in the target.
template <ExactField F>
PowerConditionReport check_thm_5_8_condition(const ModulePresentation<F>& m, int k, int n_max, Rng& rng,
                                             const Options& opt = {}) {
  PowerConditionReport out;
  out.k = k;
  const int top = m.ring().d + m.ring().p - 1;
  if (!colength_exponent(m).finite()) return out;
  auto ideal = fitting_ideal(m);
  if (analytic_spread(m, opt.n_max, opt.window, opt.extra).s != top) return out;
  out.hypothesis_met = true;
  for (int n = 1; n <= n_max; ++n) {
    auto mn = power(m, n);
    auto cert = assoc_graded_coefficient_module(mn, k, rng, opt, std::optional<ModulePresentation<F>>(ideal));
    (same_module(cert.result, product(ideal, mn)) ? out.holds : out.fails).push_back(n);
  }
  return out;
}

struct IdealPredicateReport {
  int k = 0;
  bool graded_predicate = false;  // I^{n+1} = (I^n)_[k] for all n <= n_max
  bool coefficient_predicate = false;  // I^n = (I^n)_k for all n <= n_max
  std::vector<int> graded_fails;
  std::vector<int> coefficient_fails;
  bool agree() const { return graded_predicate == coefficient_predicate; }
};

/// For an ideal (p = 1) evaluates both power predicates.
template <ExactField F>
IdealPredicateReport check_ideal_power_predicates(const ModulePresentation<F>& ideal, int k, int n_max, Rng& rng,
                                                  const Options& opt = {}) {
  if (ideal.ring().p != 1 || ideal.tdeg() != 1) throw Error(Errc::precondition, "ideal predicates need p = 1");
  IdealPredicateReport out;
  out.k = k;
  auto fitt = fitting_ideal(ideal);
  for (int n = 1; n <= n_max; ++n) {
    auto in = power(ideal, n);
    auto g = assoc_graded_coefficient_module(in, k, rng, opt, std::optional<ModulePresentation<F>>(fitt));
    if (!same_module(g.result, product(fitt, in))) out.graded_fails.push_back(n);
    auto c = coefficient_module(in, k, rng, opt);
    if (!same_module(c.result, in)) out.coefficient_fails.push_back(n);
  }
  out.graded_predicate = out.graded_fails.empty();
  out.coefficient_predicate = out.coefficient_fails.empty();
  return out;
}

}  // namespace coefmod
