#pragma once

/// @file monomial_ideal.hpp
/// Monomial ideals of k[x_1..x_n] held by their minimal generators, and the
/// staircase counting that turns lengths of monomial quotients into lattice
/// point counts.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/monomial.hpp"

namespace coefmod {

/// Sorts and removes every generator divisible by another one.
inline std::vector<ExpVec> minimalize(std::vector<ExpVec> gens) {
  std::sort(gens.begin(), gens.end(), deglex_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<ExpVec> kept;
  kept.reserve(gens.size());
  for (auto& g : gens) {
    bool redundant = std::any_of(kept.begin(), kept.end(), [&](const ExpVec& h) { return divides(h, g); });
    if (!redundant) kept.push_back(std::move(g));
  }
  return kept;
}

class MonomialIdeal {
 public:
  explicit MonomialIdeal(int nvars = 0) : n_(nvars) {}
  MonomialIdeal(int nvars, std::vector<ExpVec> gens) : n_(nvars) {
    for (const auto& g : gens) {
      if (g.size() != static_cast<std::size_t>(nvars)) throw Error(Errc::dimension_mismatch, "generator arity");
      for (Exp e : g) {
        if (e < 0) throw Error(Errc::precondition, "negative exponent");
      }
    }
    gens_ = minimalize(std::move(gens));
  }

  static MonomialIdeal unit(int nvars) { return MonomialIdeal(nvars, {ExpVec(static_cast<std::size_t>(nvars), 0)}); }
  /// m^k = (x_1..x_n)^k.
  static MonomialIdeal maximal_power(int nvars, Exp k) { return MonomialIdeal(nvars, exponents_of_degree(nvars, k)); }

  int nvars() const { return n_; }
  const std::vector<ExpVec>& gens() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && degree(gens_.front()) == 0; }

  bool contains(const ExpVec& a) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const ExpVec& g) { return divides(g, a); });
  }
  bool contains(const MonomialIdeal& o) const {
    return std::all_of(o.gens_.begin(), o.gens_.end(), [&](const ExpVec& g) { return contains(g); });
  }

  /// Every variable has a pure power among the generators.
  bool is_m_primary() const {
    if (is_unit()) return true;
    for (int i = 0; i < n_; ++i) {
      bool found = std::any_of(gens_.begin(), gens_.end(), [&](const ExpVec& g) {
        for (int j = 0; j < n_; ++j) {
          if (j != i && g[static_cast<std::size_t>(j)] != 0) return false;
        }
        return true;
      });
      if (!found) return false;
    }
    return true;
  }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) { return a.n_ == b.n_ && a.gens_ == b.gens_; }

  friend MonomialIdeal operator+(const MonomialIdeal& a, const MonomialIdeal& b) {
    std::vector<ExpVec> g = a.gens_;
    g.insert(g.end(), b.gens_.begin(), b.gens_.end());
    return MonomialIdeal(a.n_, std::move(g));
  }

  friend MonomialIdeal operator*(const MonomialIdeal& a, const MonomialIdeal& b) {
    std::vector<ExpVec> g;
    g.reserve(a.gens_.size() * b.gens_.size());
    for (const auto& u : a.gens_) {
      for (const auto& v : b.gens_) g.push_back(add_exps(u, v));
    }
    return MonomialIdeal(a.n_, std::move(g));
  }

  MonomialIdeal intersect(const MonomialIdeal& o) const {
    std::vector<ExpVec> g;
    for (const auto& u : gens_) {
      for (const auto& v : o.gens_) {
        ExpVec l(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) l[i] = std::max(u[i], v[i]);
        g.push_back(std::move(l));
      }
    }
    return MonomialIdeal(n_, std::move(g));
  }

  /// (I : x^c).
  MonomialIdeal colon(const ExpVec& c) const {
    std::vector<ExpVec> g;
    g.reserve(gens_.size());
    for (const auto& u : gens_) {
      ExpVec v(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) v[i] = std::max<Exp>(u[i] - c[i], 0);
      g.push_back(std::move(v));
    }
    return MonomialIdeal(n_, std::move(g));
  }

  /// (I : J); the unit ideal when J = 0.
  MonomialIdeal colon(const MonomialIdeal& j) const {
    if (j.is_zero()) return unit(n_);
    MonomialIdeal out = colon(j.gens_.front());
    for (std::size_t k = 1; k < j.gens_.size(); ++k) out = out.intersect(colon(j.gens_[k]));
    return out;
  }

  MonomialIdeal power(int e) const {
    MonomialIdeal out = unit(n_);
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  std::string to_string() const {
    if (gens_.empty()) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) out += ", ";
      out += Monomial(gens_[i], {}).to_string();
    }
    return out + ")";
  }

 private:
  int n_;
  std::vector<ExpVec> gens_;
};

namespace detail {

inline std::vector<ExpVec> slice_last(const std::vector<ExpVec>& gens, Exp c) {
  std::vector<ExpVec> out;
  for (const auto& g : gens) {
    if (g.back() <= c) out.emplace_back(g.begin(), g.end() - 1);
  }
  return minimalize(std::move(out));
}

inline bool has_unit(const std::vector<ExpVec>& gens) {
  return std::any_of(gens.begin(), gens.end(), [](const ExpVec& g) { return degree(g) == 0; });
}

/// Monomials in (a) but not in (b), by slicing on the last variable. Slices
/// with last exponent at least the largest one present are all equal, so a
/// nonzero count there means the difference is infinite. `extra` enumerates
/// that many further (identical) slices as a soundness probe.
inline std::optional<std::uint64_t> diff_rec(const std::vector<ExpVec>& a, const std::vector<ExpVec>& b,
                                             std::size_t n, int extra, std::vector<ExpVec>* collect,
                                             ExpVec& suffix) {
  if (a.empty() || has_unit(b)) return 0;
  if (n == 0) {
    if (collect) collect->push_back(suffix);
    return 1;
  }
  if (n == 1) {
    Exp lo = a.front()[0];
    for (const auto& g : a) lo = std::min(lo, g[0]);
    if (b.empty()) return std::nullopt;
    Exp hi = b.front()[0];
    for (const auto& g : b) hi = std::min(hi, g[0]);
    if (hi <= lo) return 0;
    if (collect) {
      for (Exp e = lo; e < hi; ++e) {
        ExpVec pt{e};
        pt.insert(pt.end(), suffix.begin(), suffix.end());
        collect->push_back(std::move(pt));
      }
    }
    return static_cast<std::uint64_t>(hi - lo);
  }
  Exp top = 0;
  for (const auto& g : a) top = std::max(top, g.back());
  for (const auto& g : b) top = std::max(top, g.back());
  std::uint64_t total = 0;
  for (Exp c = 0; c < top + extra; ++c) {
    auto sa = slice_last(a, c);
    auto sb = slice_last(b, c);
    std::vector<ExpVec> part;
    ExpVec sub_suffix;
    if (collect) {
      sub_suffix.push_back(c);
      sub_suffix.insert(sub_suffix.end(), suffix.begin(), suffix.end());
    }
    auto r = diff_rec(sa, sb, n - 1, extra, collect ? &part : nullptr, sub_suffix);
    if (!r) return std::nullopt;
    total += *r;
    if (collect) collect->insert(collect->end(), part.begin(), part.end());
  }
  ExpVec tail_suffix;
  auto tail = diff_rec(slice_last(a, top + extra), slice_last(b, top + extra), n - 1, extra, nullptr, tail_suffix);
  if (!tail || *tail != 0) return std::nullopt;
  return total;
}

}  // namespace detail

/// Number of monomials of `big` outside `small`, or nullopt when infinite.
/// Equals the length of big/small when small is contained in big.
inline std::optional<std::uint64_t> count_difference(const MonomialIdeal& big, const MonomialIdeal& small,
                                                     int extra = 0) {
  ExpVec suffix;
  return detail::diff_rec(big.gens(), small.gens(), static_cast<std::size_t>(big.nvars()), extra, nullptr, suffix);
}

/// The monomials of `big` outside `small`; throws infinite_length when the
/// set is infinite.
inline std::vector<ExpVec> difference_monomials(const MonomialIdeal& big, const MonomialIdeal& small, int extra = 0) {
  std::vector<ExpVec> out;
  ExpVec suffix;
  auto n = detail::diff_rec(big.gens(), small.gens(), static_cast<std::size_t>(big.nvars()), extra, &out, suffix);
  if (!n) throw Error(Errc::infinite_length, "difference " + big.to_string() + " \\ " + small.to_string());
  std::sort(out.begin(), out.end(), deglex_less);
  return out;
}

/// (I : m^infinity), and the least k with (I : m^k) = (I : m^(k+1)).
inline std::pair<MonomialIdeal, int> saturation(const MonomialIdeal& ideal) {
  MonomialIdeal m = MonomialIdeal::maximal_power(ideal.nvars(), 1);
  MonomialIdeal cur = ideal;
  int k = 0;
  for (;;) {
    MonomialIdeal next = cur.colon(m);
    if (next == cur) return {cur, k};
    cur = std::move(next);
    ++k;
  }
}

}  // namespace coefmod
