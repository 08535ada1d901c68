#pragma once

/// @file monomial_module.hpp
/// Monomial submodules of Sym_g(F) = F^g: one monomial ideal of R per
/// t-monomial t^beta with |beta| = g.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/monomial.hpp"
#include "coefmod/monomial_ideal.hpp"

namespace coefmod {

class MonomialModule {
 public:
  using Components = std::map<ExpVec, MonomialIdeal>;

  MonomialModule(int d, int p, Exp tdeg) : d_(d), p_(p), g_(tdeg) {
    if (d < 1 || p < 1 || tdeg < 0) throw Error(Errc::precondition, "monomial module needs d, p >= 1, tdeg >= 0");
  }

  static MonomialModule free(int d, int p, Exp tdeg) {
    MonomialModule out(d, p, tdeg);
    for (const auto& beta : exponents_of_degree(p, tdeg)) out.comps_.emplace(beta, MonomialIdeal::unit(d));
    return out;
  }

  /// m^k F^g.
  static MonomialModule maximal_power(int d, int p, Exp tdeg, Exp k) {
    MonomialModule out(d, p, tdeg);
    for (const auto& beta : exponents_of_degree(p, tdeg)) out.comps_.emplace(beta, MonomialIdeal::maximal_power(d, k));
    return out;
  }

  static MonomialModule from_generators(int d, int p, Exp tdeg, const std::vector<Monomial>& gens) {
    MonomialModule out(d, p, tdeg);
    std::map<ExpVec, std::vector<ExpVec>> buckets;
    for (const auto& m : gens) {
      if (m.x.size() != static_cast<std::size_t>(d) || m.t.size() != static_cast<std::size_t>(p)) {
        throw Error(Errc::ring_mismatch, "generator arity");
      }
      if (m.tdeg() != tdeg) throw Error(Errc::precondition, "generators must share t-degree");
      buckets[m.t].push_back(m.x);
    }
    for (auto& [beta, xs] : buckets) out.comps_.emplace(beta, MonomialIdeal(d, std::move(xs)));
    return out;
  }

  /// An ideal of R viewed inside F = R (p = 1, t-degree 1).
  static MonomialModule from_ideal(const MonomialIdeal& ideal) {
    MonomialModule out(ideal.nvars(), 1, 1);
    out.set_component({1}, ideal);
    return out;
  }

  int d() const { return d_; }
  int p() const { return p_; }
  Exp tdeg() const { return g_; }
  const Components& components() const { return comps_; }

  MonomialIdeal component(const ExpVec& beta) const {
    auto it = comps_.find(beta);
    return it == comps_.end() ? MonomialIdeal(d_) : it->second;
  }

  void set_component(const ExpVec& beta, MonomialIdeal ideal) {
    if (beta.size() != static_cast<std::size_t>(p_) || degree(beta) != g_) {
      throw Error(Errc::precondition, "component index has wrong t-degree");
    }
    if (ideal.is_zero()) {
      comps_.erase(beta);
    } else {
      comps_[beta] = std::move(ideal);
    }
  }

  bool is_zero() const { return comps_.empty(); }

  /// Minimal monomial generators in canonical order.
  std::vector<Monomial> generators() const {
    std::vector<Monomial> out;
    for (const auto& [beta, ideal] : comps_) {
      for (const auto& a : ideal.gens()) out.emplace_back(a, beta);
    }
    std::sort(out.begin(), out.end(), MonomialLess{});
    return out;
  }

  std::size_t generator_count() const {
    std::size_t n = 0;
    for (const auto& [beta, ideal] : comps_) n += ideal.gens().size();
    return n;
  }

  bool contains(const Monomial& m) const {
    if (m.tdeg() != g_) return false;
    auto it = comps_.find(m.t);
    return it != comps_.end() && it->second.contains(m.x);
  }

  bool contains(const MonomialModule& o) const {
    check_shape(o);
    for (const auto& [beta, ideal] : o.comps_) {
      auto it = comps_.find(beta);
      if (it == comps_.end() || !it->second.contains(ideal)) return false;
    }
    return true;
  }

  friend bool operator==(const MonomialModule& a, const MonomialModule& b) {
    return a.d_ == b.d_ && a.p_ == b.p_ && a.g_ == b.g_ && a.comps_ == b.comps_;
  }

  friend MonomialModule operator+(const MonomialModule& a, const MonomialModule& b) {
    a.check_shape(b);
    MonomialModule out = a;
    for (const auto& [beta, ideal] : b.comps_) {
      auto it = out.comps_.find(beta);
      if (it == out.comps_.end()) {
        out.comps_.emplace(beta, ideal);
      } else {
        it->second = it->second + ideal;
      }
    }
    return out;
  }

  MonomialModule intersect(const MonomialModule& o) const {
    check_shape(o);
    MonomialModule out(d_, p_, g_);
    for (const auto& [beta, ideal] : comps_) {
      auto it = o.comps_.find(beta);
      if (it != o.comps_.end()) out.set_component(beta, ideal.intersect(it->second));
    }
    return out;
  }

  /// Product inside Sym(F); t-degrees add.
  friend MonomialModule operator*(const MonomialModule& a, const MonomialModule& b) {
    if (a.d_ != b.d_ || a.p_ != b.p_) throw Error(Errc::ring_mismatch, "module product across rings");
    MonomialModule out(a.d_, a.p_, checked_add(a.g_, b.g_));
    for (const auto& [beta, i] : a.comps_) {
      for (const auto& [gamma, j] : b.comps_) {
        ExpVec key = add_exps(beta, gamma);
        MonomialIdeal prod = i * j;
        auto it = out.comps_.find(key);
        if (it == out.comps_.end()) {
          out.comps_.emplace(std::move(key), std::move(prod));
        } else {
          it->second = it->second + prod;
        }
      }
    }
    return out;
  }

  /// Ideal times module.
  MonomialModule scaled(const MonomialIdeal& ideal) const {
    MonomialModule out(d_, p_, g_);
    for (const auto& [beta, i] : comps_) out.set_component(beta, i * ideal);
    return out;
  }

  MonomialModule power(int n) const {
    MonomialModule out = free(d_, p_, 0);
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
  }

  /// {u in Sym_{g - h}(F) : u * by is contained in this}.
  MonomialModule colon(const MonomialModule& by) const {
    if (by.d_ != d_ || by.p_ != p_) throw Error(Errc::ring_mismatch, "colon across rings");
    if (by.g_ > g_) throw Error(Errc::precondition, "colon divisor has larger t-degree");
    Exp h = g_ - by.g_;
    if (by.is_zero()) return free(d_, p_, h);
    MonomialModule out(d_, p_, h);
    for (const auto& beta : exponents_of_degree(p_, h)) {
      std::optional<MonomialIdeal> acc;
      for (const auto& [gamma, j] : by.comps_) {
        MonomialIdeal part = component(add_exps(beta, gamma)).colon(j);
        acc = acc ? acc->intersect(part) : part;
        if (acc->is_zero()) break;
      }
      out.set_component(beta, *acc);
    }
    return out;
  }

  /// (this :_F I) for an ideal I of R.
  MonomialModule colon(const MonomialIdeal& ideal) const {
    MonomialModule out(d_, p_, g_);
    for (const auto& [beta, i] : comps_) out.set_component(beta, i.colon(ideal));
    return out;
  }

  std::string to_string() const {
    auto gens = generators();
    if (gens.empty()) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i) out += ", ";
      out += gens[i].to_string();
    }
    return out + ")";
  }

 private:
  void check_shape(const MonomialModule& o) const {
    if (d_ != o.d_ || p_ != o.p_ || g_ != o.g_) throw Error(Errc::ring_mismatch, "monomial modules of different shape");
  }

  int d_;
  int p_;
  Exp g_;
  Components comps_;
};

/// Number of monomials of `big` outside `small`; nullopt when infinite.
inline std::optional<std::uint64_t> count_difference(const MonomialModule& big, const MonomialModule& small,
                                                     int extra = 0) {
  std::uint64_t total = 0;
  for (const auto& [beta, ideal] : big.components()) {
    auto n = count_difference(ideal, small.component(beta), extra);
    if (!n) return std::nullopt;
    total += *n;
  }
  return total;
}

/// Monomials of `big` outside `small` in canonical order; throws
/// infinite_length when there are infinitely many.
inline std::vector<Monomial> difference_monomials(const MonomialModule& big, const MonomialModule& small,
                                                  int extra = 0) {
  std::vector<Monomial> out;
  for (const auto& [beta, ideal] : big.components()) {
    for (auto& a : difference_monomials(ideal, small.component(beta), extra)) out.emplace_back(std::move(a), beta);
  }
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

/// Saturation with respect to m, with the stabilization index of the chain
/// (M : m^k).
inline std::pair<MonomialModule, int> saturation(const MonomialModule& m) {
  MonomialModule out(m.d(), m.p(), m.tdeg());
  int index = 0;
  for (const auto& [beta, ideal] : m.components()) {
    auto [sat, k] = saturation(ideal);
    out.set_component(beta, sat);
    index = std::max(index, k);
  }
  return {out, index};
}

/// Lazily computed powers M^1, M^2, ... of a fixed monomial module.
class MonomialPowers {
 public:
  explicit MonomialPowers(MonomialModule base) : powers_{MonomialModule::free(base.d(), base.p(), 0)} {
    powers_.push_back(std::move(base));
  }
  const MonomialModule& base() const { return powers_[1]; }
  const MonomialModule& operator[](int n) {
    if (n < 0) throw Error(Errc::precondition, "negative power");
    while (static_cast<int>(powers_.size()) <= n) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[static_cast<std::size_t>(n)];
  }

 private:
  std::vector<MonomialModule> powers_;
};

}  // namespace coefmod
