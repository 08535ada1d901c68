#pragma once

/// @file monomial.hpp
/// Bigraded monomials x^a t^b of S = k[x_1..x_d][t_1..t_p] and the ring
/// descriptor shared by every polynomial and module.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/field.hpp"

namespace coefmod {

using Exp = std::int32_t;
using ExpVec = std::vector<Exp>;

inline Exp checked_add(Exp a, Exp b) {
  Exp r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::exponent_overflow, "exponent sum overflows");
  return r;
}

inline Exp checked_mul(Exp a, Exp b) {
  Exp r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::exponent_overflow, "exponent product overflows");
  return r;
}

inline Exp degree(const ExpVec& e) {
  Exp s = 0;
  for (Exp v : e) s = checked_add(s, v);
  return s;
}

inline ExpVec add_exps(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

/// a divides b componentwise.
inline bool divides(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

/// Ordering used for canonical lists of exponent vectors: total degree,
/// then lexicographic with the first variable largest first.
inline bool deglex_less(const ExpVec& a, const ExpVec& b) {
  Exp da = degree(a);
  Exp db = degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

template <ExactField F>
struct RingDescriptor {
  F field;
  int d = 1;
  int p = 1;

  RingDescriptor(F f, int xvars, int rank) : field(std::move(f)), d(xvars), p(rank) {
    if (d < 1 || p < 1) throw Error(Errc::precondition, "ring needs d >= 1 and p >= 1");
  }

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    return a.field == b.field && a.d == b.d && a.p == b.p;
  }
};

template <ExactField F>
void require_same_ring(const RingDescriptor<F>& a, const RingDescriptor<F>& b) {
  if (!(a == b)) {
    throw Error(Errc::ring_mismatch, a.field.name() + "[d=" + std::to_string(a.d) + ",p=" + std::to_string(a.p) +
                                         "] vs " + b.field.name() + "[d=" + std::to_string(b.d) +
                                         ",p=" + std::to_string(b.p) + "]");
  }
}

struct Monomial {
  ExpVec x;
  ExpVec t;

  Monomial() = default;
  Monomial(ExpVec xe, ExpVec te) : x(std::move(xe)), t(std::move(te)) {}
  static Monomial one(int d, int p) { return Monomial(ExpVec(d, 0), ExpVec(p, 0)); }

  Exp xdeg() const { return degree(x); }
  Exp tdeg() const { return degree(t); }

  Monomial operator*(const Monomial& o) const { return Monomial(add_exps(x, o.x), add_exps(t, o.t)); }

  bool divides(const Monomial& o) const { return coefmod::divides(x, o.x) && coefmod::divides(t, o.t); }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.x == b.x && a.t == b.t; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::string to_string() const {
    std::string out;
    auto emit = [&](char var, const ExpVec& e) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += var + std::to_string(i + 1);
        if (e[i] > 1) out += '^' + std::to_string(e[i]);
      }
    };
    emit('x', x);
    emit('t', t);
    return out.empty() ? "1" : out;
  }
};

/// Canonical monomial order: t-degree, then t-exponents (t_1 largest first),
/// then x-degree, then x-exponents (x_1 largest first).
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    Exp ta = a.tdeg();
    Exp tb = b.tdeg();
    if (ta != tb) return ta < tb;
    if (a.t != b.t) {
      for (std::size_t i = 0; i < a.t.size(); ++i) {
        if (a.t[i] != b.t[i]) return a.t[i] > b.t[i];
      }
    }
    return deglex_less(a.x, b.x);
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 1469598103934665603ULL;
    auto mix = [&](Exp v) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ULL;
    };
    for (Exp v : m.x) mix(v);
    mix(-1);
    for (Exp v : m.t) mix(v);
    return h;
  }
};

struct ExpVecHash {
  std::size_t operator()(const ExpVec& e) const {
    std::size_t h = 1469598103934665603ULL;
    for (Exp v : e) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

/// All exponent vectors of length `vars` and total degree `deg`, in
/// deglex_less order.
inline std::vector<ExpVec> exponents_of_degree(int vars, Exp deg) {
  std::vector<ExpVec> out;
  ExpVec cur(static_cast<std::size_t>(vars), 0);
  std::function<void(int, Exp)> rec = [&](int i, Exp left) {
    if (i == vars - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (Exp v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(i)] = v;
      rec(i + 1, left - v);
    }
  };
  if (vars == 0) {
    if (deg == 0) out.emplace_back();
    return out;
  }
  rec(0, deg);
  return out;
}

/// Monomials of t-degree n and x-degree < bound, in canonical order.
inline std::vector<Monomial> enumerate_basis(int d, int p, Exp n, Exp bound) {
  std::vector<Monomial> out;
  for (const auto& te : exponents_of_degree(p, n)) {
    for (Exp xd = 0; xd < bound; ++xd) {
      for (const auto& xe : exponents_of_degree(d, xd)) out.emplace_back(xe, te);
    }
  }
  return out;
}

template <ExactField F>
std::vector<Monomial> enumerate_basis(const RingDescriptor<F>& ring, Exp n, Exp bound) {
  return enumerate_basis(ring.d, ring.p, n, bound);
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace coefmod
