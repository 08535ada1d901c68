#pragma once

/// @file field.hpp
/// Exact scalar fields: prime fields F_q (q < 2^62) and the rationals.
/// Elements are plain values; all arithmetic goes through the field object so
/// that F_q elements stay canonical representatives in [0, q).

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <random>
#include <string>

#include "coefmod/error.hpp"

namespace coefmod {

using Rng = std::mt19937_64;

template <class F>
concept ExactField = std::equality_comparable<F> && requires(const F& f, typename F::value_type a,
                                                             const mpz_class& z, Rng& rng) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.from_mpz(z) } -> std::same_as<typename F::value_type>;
  { f.from_int(std::int64_t{}) } -> std::same_as<typename F::value_type>;
  { f.random(rng) } -> std::same_as<typename F::value_type>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { f.name() } -> std::same_as<std::string>;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t q) : q_(q) {
    if (q >= (1ULL << 62U) || !is_prime_u64(q)) {
      throw Error(Errc::non_prime_modulus, std::to_string(q) + " is not a prime below 2^62");
    }
  }

  std::uint64_t modulus() const { return q_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + q_ - b; }
  value_type mul(value_type a, value_type b) const { return detail::mulmod(a, b, q_); }
  value_type neg(value_type a) const { return a == 0 ? 0 : q_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw Error(Errc::precondition, "division by zero in " + name());
    return detail::powmod(a, q_ - 2, q_);
  }
  bool is_zero(value_type a) const { return a == 0; }

  value_type from_int(std::int64_t v) const {
    auto m = static_cast<std::int64_t>(q_);
    std::int64_t r = v % m;
    return static_cast<value_type>(r < 0 ? r + m : r);
  }
  value_type from_mpz(const mpz_class& z) const {
    mpz_class r;
    mpz_class m(std::to_string(q_));
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
    return std::stoull(r.get_str());
  }
  value_type random(Rng& rng) const { return rng() % q_; }

  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "Fp:" + std::to_string(q_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.q_ == b.q_; }

 private:
  std::uint64_t q_;
};

/// Q with always-reduced GMP fractions. Random elements are drawn from
/// {-bound, ..., bound}.
class RationalField {
 public:
  using value_type = mpq_class;

  explicit RationalField(std::int64_t random_bound = 100) : bound_(random_bound) {}

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw Error(Errc::precondition, "division by zero in Q");
    return value_type(1) / a;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }

  value_type from_int(std::int64_t v) const { return value_type(mpz_class(std::to_string(v))); }
  value_type from_mpz(const mpz_class& z) const { return value_type(z); }
  value_type random(Rng& rng) const {
    auto width = static_cast<std::uint64_t>(2 * bound_ + 1);
    return from_int(static_cast<std::int64_t>(rng() % width) - bound_);
  }

  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "Q"; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }

 private:
  std::int64_t bound_;
};

static_assert(ExactField<PrimeField>);
static_assert(ExactField<RationalField>);

}  // namespace coefmod
