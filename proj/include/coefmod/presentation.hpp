#pragma once

/// @file presentation.hpp
/// Submodules of Sym_g(F) given by t-homogeneous generators of one t-degree.
/// Ideals of R are the t-degree-0 case.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/monomial_module.hpp"
#include "coefmod/poly.hpp"

namespace coefmod {

template <ExactField F>
class ModulePresentation {
 public:
  ModulePresentation(RingDescriptor<F> ring, Exp tdeg, std::vector<Poly<F>> gens)
      : ring_(std::move(ring)), tdeg_(tdeg) {
    if (tdeg < 0) throw Error(Errc::precondition, "negative t-degree");
    bool all_monomial = true;
    for (auto& g : gens) {
      require_same_ring(ring_, g.ring());
      if (g.is_zero()) continue;
      if (g.tdeg() != tdeg) {
        throw Error(Errc::precondition, "generator " + g.to_string() + " is not t-homogeneous of degree " +
                                            std::to_string(tdeg));
      }
      all_monomial = all_monomial && g.is_monomial();
      gens_.push_back(std::move(g));
    }
    if (all_monomial) {
      std::vector<Monomial> ms;
      for (const auto& g : gens_) ms.push_back(g.terms().begin()->first);
      set_monomial(MonomialModule::from_generators(ring_.d, ring_.p, tdeg_, ms));
    }
  }

  static ModulePresentation from_monomial(const RingDescriptor<F>& ring, const MonomialModule& m) {
    if (m.d() != ring.d || m.p() != ring.p) throw Error(Errc::ring_mismatch, "monomial module shape");
    ModulePresentation out(ring, m.tdeg(), {});
    out.set_monomial(m);
    return out;
  }

  static ModulePresentation free(const RingDescriptor<F>& ring, Exp tdeg) {
    return from_monomial(ring, MonomialModule::free(ring.d, ring.p, tdeg));
  }

  static ModulePresentation zero(const RingDescriptor<F>& ring, Exp tdeg) {
    return from_monomial(ring, MonomialModule(ring.d, ring.p, tdeg));
  }

  const RingDescriptor<F>& ring() const { return ring_; }
  Exp tdeg() const { return tdeg_; }
  const std::vector<Poly<F>>& gens() const { return gens_; }
  bool monomial() const { return mono_.has_value(); }
  bool is_zero() const { return gens_.empty(); }

  const MonomialModule& monomial_module() const {
    if (!mono_) throw Error(Errc::regime, "operation needs a monomial module");
    return *mono_;
  }

  Exp max_gen_xdeg() const {
    Exp best = 0;
    for (const auto& g : gens_) best = std::max(best, g.max_xdeg());
    return best;
  }

  /// Normalized generators, sorted and deduplicated, for reports.
  std::vector<std::string> generator_strings() const {
    std::set<std::string> seen;
    std::vector<Poly<F>> normal;
    for (const auto& g : gens_) normal.push_back(g.normalized());
    std::sort(normal.begin(), normal.end(), [](const Poly<F>& a, const Poly<F>& b) {
      return std::lexicographical_compare(a.terms().rbegin(), a.terms().rend(), b.terms().rbegin(), b.terms().rend(),
                                          [](const auto& u, const auto& v) { return MonomialLess{}(u.first, v.first); });
    });
    std::vector<std::string> out;
    for (const auto& g : normal) {
      auto s = g.to_string();
      if (seen.insert(s).second) out.push_back(s);
    }
    return out;
  }

  std::string to_string() const {
    auto gs = generator_strings();
    if (gs.empty()) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < gs.size(); ++i) out += (i ? ", " : "") + gs[i];
    return out + ")";
  }

 private:
  void set_monomial(MonomialModule m) {
    gens_.clear();
    for (const auto& g : m.generators()) gens_.push_back(Poly<F>::monomial(ring_, g));
    mono_ = std::move(m);
  }

  RingDescriptor<F> ring_;
  Exp tdeg_;
  std::vector<Poly<F>> gens_;
  std::optional<MonomialModule> mono_;
};

template <ExactField F>
void require_compatible(const ModulePresentation<F>& a, const ModulePresentation<F>& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.tdeg() != b.tdeg()) {
    throw Error(Errc::precondition,
                "t-degrees differ: " + std::to_string(a.tdeg()) + " vs " + std::to_string(b.tdeg()));
  }
}

template <ExactField F>
ModulePresentation<F> sum(const ModulePresentation<F>& a, const ModulePresentation<F>& b) {
  require_compatible(a, b);
  if (a.monomial() && b.monomial()) {
    return ModulePresentation<F>::from_monomial(a.ring(), a.monomial_module() + b.monomial_module());
  }
  auto gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  return ModulePresentation<F>(a.ring(), a.tdeg(), std::move(gens));
}

template <ExactField F>
ModulePresentation<F> product(const ModulePresentation<F>& a, const ModulePresentation<F>& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.monomial() && b.monomial()) {
    return ModulePresentation<F>::from_monomial(a.ring(), a.monomial_module() * b.monomial_module());
  }
  std::vector<Poly<F>> gens;
  std::set<std::string> seen;
  for (const auto& u : a.gens()) {
    for (const auto& v : b.gens()) {
      auto w = (u * v).normalized();
      if (!w.is_zero() && seen.insert(w.to_string()).second) gens.push_back(std::move(w));
    }
  }
  return ModulePresentation<F>(a.ring(), checked_add(a.tdeg(), b.tdeg()), std::move(gens));
}

template <ExactField F>
ModulePresentation<F> power(const ModulePresentation<F>& m, int n) {
  if (m.monomial()) return ModulePresentation<F>::from_monomial(m.ring(), m.monomial_module().power(n));
  auto out = ModulePresentation<F>::free(m.ring(), 0);
  for (int i = 0; i < n; ++i) out = product(out, m);
  return out;
}

/// Elements given directly as a list, viewed as the module they generate.
template <ExactField F>
ModulePresentation<F> generated_by(const RingDescriptor<F>& ring, Exp tdeg, std::vector<Poly<F>> elems) {
  return ModulePresentation<F>(ring, tdeg, std::move(elems));
}

}  // namespace coefmod
