#pragma once

/// @file hilbert_fit.hpp
/// Length tables n -> l(n) and their exact eventual polynomials, reported in
/// the raw monomial basis and in the signed binomial basis
///
///   P(n) = sum_{j=0..T} (-1)^j e_j C(n + T - j - 1, T - j).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/field.hpp"
#include "coefmod/matrix.hpp"

namespace coefmod {

enum class LengthKind { buchsbaum_rim, rees_amao, fiber, graded };

inline const char* length_kind_name(LengthKind k) {
  switch (k) {
    case LengthKind::buchsbaum_rim: return "buchsbaum-rim";
    case LengthKind::rees_amao: return "rees-amao";
    case LengthKind::fiber: return "fiber";
    case LengthKind::graded: return "graded";
  }
  return "?";
}

struct NumericalFunction {
  LengthKind kind = LengthKind::rees_amao;
  std::vector<std::pair<int, std::uint64_t>> values;

  static NumericalFunction from_table(LengthKind kind, const std::vector<std::uint64_t>& table, int first = 1) {
    NumericalFunction f{kind, {}};
    for (std::size_t i = 0; i < table.size(); ++i) f.values.emplace_back(first + static_cast<int>(i), table[i]);
    return f;
  }
};

/// C(x, k) for rational x, as a polynomial value.
inline mpq_class binomial_q(const mpq_class& x, int k) {
  if (k < 0) return 0;
  mpq_class r = 1;
  for (int i = 0; i < k; ++i) {
    r *= x - i;
    r /= i + 1;
  }
  return r;
}

struct FittedPolynomial {
  int degree = -1;  // -1: the zero polynomial
  int top_dimension = 0;
  std::vector<mpq_class> binomial_coeffs;  // e_0..e_T
  std::vector<mpq_class> monomial_coeffs;  // c_0..c_degree, P(n) = sum c_i n^i
  int stabilization_index = 1;
  int confirmed = 0;

  mpq_class evaluate(const mpq_class& n) const {
    mpq_class r = 0;
    for (std::size_t i = monomial_coeffs.size(); i-- > 0;) r = r * n + monomial_coeffs[i];
    return r;
  }

  mpq_class evaluate_binomial(const mpq_class& n) const {
    mpq_class r = 0;
    const int t = top_dimension;
    for (int j = 0; j <= t && j < static_cast<int>(binomial_coeffs.size()); ++j) {
      mpq_class term = binomial_coeffs[static_cast<std::size_t>(j)] * binomial_q(n + t - j - 1, t - j);
      r += (j % 2 == 0) ? term : mpq_class(-term);
    }
    return r;
  }

  bool is_zero() const { return degree < 0; }
};

namespace detail {

/// Forward differences of v; the least k with all k-th differences zero,
/// minus one, is the degree of the interpolating polynomial.
inline int tail_degree(const std::vector<mpz_class>& v) {
  std::vector<mpz_class> cur = v;
  for (int k = 0; k <= static_cast<int>(v.size()); ++k) {
    bool zero = std::all_of(cur.begin(), cur.end(), [](const mpz_class& a) { return a == 0; });
    if (zero) return k - 1;
    if (cur.size() <= 1) return static_cast<int>(v.size());
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) cur[i] = cur[i + 1] - cur[i];
    cur.pop_back();
  }
  return static_cast<int>(v.size());
}

/// Solves A x = b exactly for square invertible A.
inline std::vector<mpq_class> solve_square(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b) {
  RationalField q;
  std::size_t n = b.size();
  std::vector<Vec<RationalField>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<RationalField> r = a[i];
    r.push_back(b[i]);
    rows.push_back(std::move(r));
  }
  auto res = rref(Matrix<RationalField>::from_rows(q, rows, n + 1));
  if (res.pivots.size() != n || (n > 0 && res.pivots.back() != n - 1)) {
    throw Error(Errc::precondition, "singular interpolation system");
  }
  std::vector<mpq_class> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = res.reduced(i, n);
  return x;
}

}  // namespace detail

/// Fits the eventual polynomial of f: the earliest start index from which the
/// tail is reproduced by a polynomial with at least `window` points beyond
/// those needed to interpolate it. With no top dimension the binomial basis
/// uses T = max(degree, 0).
inline FittedPolynomial fit(const NumericalFunction& f, int window = 3, std::optional<int> top_dimension = {}) {
  const auto& vals = f.values;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i].first != vals[i - 1].first + 1) throw Error(Errc::precondition, "table arguments must be consecutive");
  }
  std::optional<std::size_t> start;
  int deg = -1;
  for (std::size_t s = 0; s < vals.size(); ++s) {
    std::vector<mpz_class> tail;
    for (std::size_t i = s; i < vals.size(); ++i) tail.emplace_back(std::to_string(vals[i].second));
    int d = detail::tail_degree(tail);
    if (static_cast<int>(tail.size()) - (d + 1) >= window) {
      start = s;
      deg = d;
      break;
    }
  }
  if (!start) {
    std::string table;
    for (const auto& [n, v] : vals) table += " " + std::to_string(n) + ":" + std::to_string(v);
    throw Error(Errc::unstable_fit, "no polynomial tail confirmed by " + std::to_string(window) + " points in" + table);
  }
  FittedPolynomial out;
  out.degree = deg;
  out.stabilization_index = vals[*start].first;
  out.confirmed = static_cast<int>(vals.size() - *start) - (deg + 1);
  if (deg >= 0) {
    std::vector<std::vector<mpq_class>> a;
    std::vector<mpq_class> b;
    for (int i = 0; i <= deg; ++i) {
      const auto& [n, v] = vals[*start + static_cast<std::size_t>(i)];
      std::vector<mpq_class> row;
      mpq_class pw = 1;
      for (int k = 0; k <= deg; ++k) {
        row.push_back(pw);
        pw *= n;
      }
      a.push_back(row);
      b.emplace_back(mpz_class(std::to_string(v)));
    }
    out.monomial_coeffs = detail::solve_square(a, b);
  }
  int t = top_dimension.value_or(std::max(deg, 0));
  if (deg > t) {
    throw Error(Errc::precondition, "fitted degree " + std::to_string(deg) + " exceeds basis dimension " +
                                        std::to_string(t));
  }
  out.top_dimension = t;
  std::vector<std::vector<mpq_class>> a;
  std::vector<mpq_class> b;
  for (int i = 0; i <= t; ++i) {
    mpq_class n = out.stabilization_index + i;
    std::vector<mpq_class> row;
    for (int j = 0; j <= t; ++j) {
      mpq_class bj = binomial_q(n + t - j - 1, t - j);
      row.push_back(j % 2 == 0 ? bj : mpq_class(-bj));
    }
    a.push_back(row);
    b.push_back(out.evaluate(n));
  }
  out.binomial_coeffs = detail::solve_square(a, b);
  return out;
}

struct DegreeCertificate {
  bool holds = false;
  int threshold = 0;
  bool inclusive = false;
  FittedPolynomial fit;
};

/// Fitted degree < threshold, or <= threshold when inclusive.
inline DegreeCertificate degree_test(const NumericalFunction& f, int threshold, bool inclusive = false,
                                     int window = 3) {
  DegreeCertificate c;
  c.fit = fit(f, window);
  c.threshold = threshold;
  c.inclusive = inclusive;
  c.holds = inclusive ? c.fit.degree <= threshold : c.fit.degree < threshold;
  return c;
}

}  // namespace coefmod
