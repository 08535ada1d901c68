#pragma once

/// @file matrix.hpp
/// Dense exact matrices, reduced row-echelon form, kernels, and subspaces
/// kept in fully reduced echelon form.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/field.hpp"

namespace coefmod {

template <ExactField F>
using Vec = std::vector<typename F::value_type>;

template <ExactField F>
void require_same_field(const F& a, const F& b) {
  if (!(a == b)) throw Error(Errc::field_mismatch, a.name() + " vs " + b.name());
}

template <ExactField F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix from_rows(F field, const std::vector<Vec<F>>& rows, std::size_t cols) {
    Matrix m(std::move(field), rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) {
        throw Error(Errc::dimension_mismatch, "row " + std::to_string(r) + " has length " +
                                                  std::to_string(rows[r].size()) + ", expected " +
                                                  std::to_string(cols));
      }
      std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec<F> row(std::size_t r) const {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
    return Vec<F>(first, first + static_cast<std::ptrdiff_t>(cols_));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

template <ExactField F>
struct RrefResult {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;
};

template <ExactField F>
RrefResult<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t pr = lead;
    while (pr < m.rows() && f.is_zero(m(pr, c))) ++pr;
    if (pr == m.rows()) continue;
    if (pr != lead) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pr, k), m(lead, k));
    }
    auto scale = f.inv(m(lead, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(lead, k) = f.mul(m(lead, k), scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || f.is_zero(m(r, c))) continue;
      auto factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(lead, k)));
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).pivots.size();
}

/// Basis of the right null space {v : m v = 0}, one vector per free column.
template <ExactField F>
std::vector<Vec<F>> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<F>> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(reduced(r, free));
    out.push_back(std::move(v));
  }
  return out;
}

/// A subspace of k^n held as fully reduced echelon rows. Reduction of a
/// vector is a single pass because every row is zero in the other rows'
/// pivot columns.
template <ExactField F>
class Subspace {
 public:
  using value_type = typename F::value_type;

  Subspace(F field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

  static Subspace span(F field, std::size_t ambient, const std::vector<Vec<F>>& vectors) {
    Subspace s(std::move(field), ambient);
    for (const auto& v : vectors) s.insert(v);
    return s;
  }

  const F& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  /// Residual of v after elimination against the basis.
  Vec<F> reduce(Vec<F> v) const {
    check_length(v);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::size_t pc = pivots_[i];
      if (field_.is_zero(v[pc])) continue;
      auto factor = v[pc];
      const auto& row = rows_[i];
      for (std::size_t k = pc; k < ambient_; ++k) {
        if (!field_.is_zero(row[k])) v[k] = field_.sub(v[k], field_.mul(factor, row[k]));
      }
    }
    return v;
  }

  bool contains(const Vec<F>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [&](const value_type& a) { return field_.is_zero(a); });
  }

  /// Adds v to the subspace; returns true iff the dimension grew.
  bool insert(const Vec<F>& v) {
    auto r = reduce(v);
    std::size_t pc = 0;
    while (pc < ambient_ && field_.is_zero(r[pc])) ++pc;
    if (pc == ambient_) return false;
    auto scale = field_.inv(r[pc]);
    for (std::size_t k = pc; k < ambient_; ++k) {
      if (!field_.is_zero(r[k])) r[k] = field_.mul(r[k], scale);
    }
    for (auto& row : rows_) {
      if (field_.is_zero(row[pc])) continue;
      auto factor = row[pc];
      for (std::size_t k = pc; k < ambient_; ++k) {
        if (!field_.is_zero(r[k])) row[k] = field_.sub(row[k], field_.mul(factor, r[k]));
      }
    }
    pivots_.push_back(pc);
    rows_.push_back(std::move(r));
    return true;
  }

  /// Canonical RREF basis, rows ordered by pivot column.
  std::vector<Vec<F>> basis() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
    std::vector<Vec<F>> out;
    out.reserve(rows_.size());
    for (auto i : order) out.push_back(rows_[i]);
    return out;
  }

  std::vector<std::size_t> pivots() const {
    auto p = pivots_;
    std::sort(p.begin(), p.end());
    return p;
  }

  bool is_subspace_of(const Subspace& other) const {
    require_compatible(other);
    return std::all_of(rows_.begin(), rows_.end(), [&](const Vec<F>& r) { return other.contains(r); });
  }

  Subspace sum(const Subspace& other) const {
    require_compatible(other);
    Subspace out = *this;
    for (const auto& r : other.rows_) out.insert(r);
    return out;
  }

  /// Zassenhaus: rows [a | a] and [b | 0]; echelon rows with zero left half
  /// span the intersection in their right half.
  Subspace intersect(const Subspace& other) const {
    require_compatible(other);
    Subspace big(field_, 2 * ambient_);
    for (const auto& a : rows_) {
      Vec<F> v(2 * ambient_, field_.zero());
      std::copy(a.begin(), a.end(), v.begin());
      std::copy(a.begin(), a.end(), v.begin() + static_cast<std::ptrdiff_t>(ambient_));
      big.insert(v);
    }
    for (const auto& b : other.rows_) {
      Vec<F> v(2 * ambient_, field_.zero());
      std::copy(b.begin(), b.end(), v.begin());
      big.insert(v);
    }
    Subspace out(field_, ambient_);
    for (std::size_t i = 0; i < big.rows_.size(); ++i) {
      if (big.pivots_[i] < ambient_) continue;
      out.insert(Vec<F>(big.rows_[i].begin() + static_cast<std::ptrdiff_t>(ambient_), big.rows_[i].end()));
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.dim() == b.dim() && a.is_subspace_of(b);
  }

 private:
  void check_length(const Vec<F>& v) const {
    if (v.size() != ambient_) {
      throw Error(Errc::dimension_mismatch,
                  "vector of length " + std::to_string(v.size()) + " in ambient " + std::to_string(ambient_));
    }
  }
  void require_compatible(const Subspace& other) const {
    require_same_field(field_, other.field_);
    if (ambient_ != other.ambient_) {
      throw Error(Errc::dimension_mismatch,
                  "ambient " + std::to_string(ambient_) + " vs " + std::to_string(other.ambient_));
    }
  }

  F field_;
  std::size_t ambient_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace coefmod
