#pragma once

/// @file newton.hpp
/// Integral closure of monomial modules through the Newton polyhedron of
/// M*Sym(F) in the joint (x, t) exponent space.

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "coefmod/lp.hpp"
#include "coefmod/monomial_module.hpp"

namespace coefmod {

/// Whether q lies in conv(points) + R_{>=0}^n.
inline bool in_newton_polyhedron(const std::vector<ExpVec>& points, const ExpVec& q) {
  if (points.empty()) return false;
  const std::size_t n = q.size();
  const std::size_t k = points.size();
  // Variables: lambda_1..lambda_k, slack_1..slack_n.
  RationalMatrix a(n + 1, std::vector<mpq_class>(k + n, 0));
  std::vector<mpq_class> b(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = points[j][i];
    a[i][k + i] = 1;
    b[i] = q[i];
  }
  for (std::size_t j = 0; j < k; ++j) a[n][j] = 1;
  b[n] = 1;
  return lp_feasible(std::move(a), std::move(b));
}

inline ExpVec joint_exponent(const Monomial& m) {
  ExpVec v = m.x;
  v.insert(v.end(), m.t.begin(), m.t.end());
  return v;
}

/// The t-degree-g part of the integral closure of M*Sym(F), where g is the
/// t-degree of M.
inline MonomialModule integral_closure(const MonomialModule& m) {
  MonomialModule out(m.d(), m.p(), m.tdeg());
  if (m.is_zero()) return out;
  std::vector<ExpVec> points;
  ExpVec box(static_cast<std::size_t>(m.d()), 0);
  for (const auto& g : m.generators()) {
    points.push_back(joint_exponent(g));
    for (std::size_t i = 0; i < box.size(); ++i) box[i] = std::max(box[i], g.x[i]);
  }
  std::vector<Monomial> found;
  for (const auto& beta : exponents_of_degree(m.p(), m.tdeg())) {
    ExpVec a(box.size(), 0);
    for (;;) {
      Monomial cand(a, beta);
      if (m.contains(cand) || in_newton_polyhedron(points, joint_exponent(cand))) found.push_back(cand);
      std::size_t i = 0;
      while (i < a.size() && a[i] == box[i]) a[i++] = 0;
      if (i == a.size()) break;
      ++a[i];
    }
  }
  return MonomialModule::from_generators(m.d(), m.p(), m.tdeg(), found);
}

/// One-sided oracle: u is integral over M when u^r lies in (M*Sym(F))^r for
/// some r <= r_max. Returns the first such r, or 0.
inline int closure_power_witness(const MonomialModule& m, const Monomial& u, int r_max) {
  MonomialPowers powers(m);
  Monomial ur = Monomial::one(m.d(), m.p());
  for (int r = 1; r <= r_max; ++r) {
    ur = ur * u;
    const MonomialModule& mr = powers[r];
    if (ur.tdeg() == mr.tdeg() && mr.contains(ur)) return r;
  }
  return 0;
}

}  // namespace coefmod
