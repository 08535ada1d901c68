#pragma once

/// @file poly.hpp
/// Sparse polynomials in S = R[t_1..t_p], R = k[x_1..x_d], and the text
/// grammar used by spec files and reports:
///
///   poly   := term (('+'|'-') term)*
///   term   := coeff ('*' factor)* | factor ('*' factor)*
///   factor := var ('^' uint)?
///   var    := 'x'uint | 't'uint
///   coeff  := int ('/' uint)?
///
/// Whitespace is insignificant, a leading sign is accepted, and variables are
/// 1-indexed. The optional '/' denominator lets rational coefficients
/// round-trip.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/field.hpp"
#include "coefmod/monomial.hpp"

namespace coefmod {

template <ExactField F>
class Poly {
 public:
  using value_type = typename F::value_type;
  using Terms = std::map<Monomial, value_type, MonomialLess>;

  explicit Poly(RingDescriptor<F> ring) : ring_(std::move(ring)) {}

  static Poly constant(const RingDescriptor<F>& ring, const value_type& c) {
    return term(ring, Monomial::one(ring.d, ring.p), c);
  }
  static Poly term(const RingDescriptor<F>& ring, Monomial m, const value_type& c) {
    Poly out(ring);
    out.add_term(std::move(m), c);
    return out;
  }
  static Poly monomial(const RingDescriptor<F>& ring, Monomial m) { return term(ring, std::move(m), ring.field.one()); }

  const RingDescriptor<F>& ring() const { return ring_; }
  const F& field() const { return ring_.field; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }

  void add_term(Monomial m, const value_type& c) {
    if (m.x.size() != static_cast<std::size_t>(ring_.d) || m.t.size() != static_cast<std::size_t>(ring_.p)) {
      throw Error(Errc::ring_mismatch, "monomial arity does not match ring");
    }
    const F& f = ring_.field;
    if (f.is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), c);
      return;
    }
    it->second = f.add(it->second, c);
    if (f.is_zero(it->second)) terms_.erase(it);
  }

  /// t-degree shared by all terms, or nullopt when not t-homogeneous. The
  /// zero polynomial is homogeneous of every degree and reports nullopt.
  std::optional<Exp> tdeg() const {
    if (terms_.empty()) return std::nullopt;
    Exp t = terms_.begin()->first.tdeg();
    for (const auto& [m, c] : terms_) {
      if (m.tdeg() != t) return std::nullopt;
    }
    return t;
  }

  Exp min_xdeg() const {
    Exp best = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Exp v = m.xdeg();
      if (first || v < best) best = v;
      first = false;
    }
    return best;
  }

  Exp max_xdeg() const {
    Exp best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, m.xdeg());
    return best;
  }

  Poly operator+(const Poly& o) const {
    require_same_ring(ring_, o.ring_);
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
  }

  Poly operator-(const Poly& o) const {
    require_same_ring(ring_, o.ring_);
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, ring_.field.neg(c));
    return out;
  }

  Poly operator*(const Poly& o) const {
    require_same_ring(ring_, o.ring_);
    const F& f = ring_.field;
    Poly out(ring_);
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, f.mul(ca, cb));
    }
    return out;
  }

  Poly scaled(const value_type& s) const {
    Poly out(ring_);
    for (const auto& [m, c] : terms_) out.add_term(m, ring_.field.mul(c, s));
    return out;
  }

  Poly times_monomial(const Monomial& u) const {
    Poly out(ring_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m * u, c);
    return out;
  }

  Poly pow(int e) const {
    Poly out = constant(ring_, ring_.field.one());
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  /// Scales so the leading (largest) term has coefficient 1 over F_q, or so
  /// the coefficients are coprime integers with positive leading term over Q.
  Poly normalized() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.ring_ == b.ring_ && a.terms_ == b.terms_; }

  /// Terms from largest to smallest in the canonical order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    const F& f = ring_.field;
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string coeff = f.to_string(it->second);
      bool negative = !coeff.empty() && coeff[0] == '-';
      if (negative) coeff.erase(0, 1);
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      bool unit_mono = it->first.xdeg() == 0 && it->first.tdeg() == 0;
      if (unit_mono) {
        out += coeff;
      } else if (coeff == "1") {
        out += it->first.to_string();
      } else {
        out += coeff + "*" + it->first.to_string();
      }
    }
    return out;
  }

 private:
  RingDescriptor<F> ring_;
  Terms terms_;
};

namespace detail {

template <ExactField F>
Poly<F> normalize_poly(const Poly<F>& p) {
  if (p.is_zero()) return p;
  const F& f = p.field();
  if constexpr (std::is_same_v<F, RationalField>) {
    mpz_class den_lcm = 1;
    for (const auto& [m, c] : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_class num_gcd = 0;
    for (const auto& [m, c] : p.terms()) {
      mpz_class v = c.get_num() * (den_lcm / c.get_den());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_mpz_t());
    }
    mpq_class s(den_lcm, num_gcd);
    s.canonicalize();
    if (sgn(p.terms().rbegin()->second) < 0) s = -s;
    return p.scaled(s);
  } else {
    return p.scaled(f.inv(p.terms().rbegin()->second));
  }
}

}  // namespace detail

template <ExactField F>
Poly<F> Poly<F>::normalized() const {
  return detail::normalize_poly(*this);
}

namespace detail {

template <ExactField F>
class PolyParser {
 public:
  PolyParser(std::string_view text, const RingDescriptor<F>& ring, std::size_t line, std::size_t col_offset)
      : text_(text), ring_(ring), line_(line), col_offset_(col_offset) {}

  Poly<F> parse() {
    Poly<F> out(ring_);
    skip_ws();
    if (at_end()) fail(Errc::parse_error, "empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    parse_term(out, negative);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') fail(Errc::parse_error, std::string("unexpected '") + c + "'");
      ++pos_;
      parse_term(out, c == '-');
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(Errc code, const std::string& what) const {
    throw ParseError(code, what, line_, col_offset_ + pos_ + 1);
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail(Errc::parse_error, "expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Exp parse_uint_exp() {
    std::string s = digits();
    if (s.size() > 9 || std::stoll(s) > 1'000'000'000LL) fail(Errc::exponent_overflow, "exponent " + s + " too large");
    return static_cast<Exp>(std::stoll(s));
  }

  void parse_term(Poly<F>& out, bool negative) {
    const F& f = ring_.field;
    skip_ws();
    if (at_end()) fail(Errc::parse_error, "expected term");
    typename F::value_type coeff = f.one();
    Monomial mono = Monomial::one(ring_.d, ring_.p);
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      mpz_class num(digits());
      coeff = f.from_mpz(num);
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        mpz_class den(digits());
        if (den == 0) fail(Errc::parse_error, "zero denominator");
        auto dv = f.from_mpz(den);
        if (f.is_zero(dv)) fail(Errc::parse_error, "denominator vanishes in " + f.name());
        coeff = f.mul(coeff, f.inv(dv));
      }
      need_factor = false;
    }
    for (;;) {
      if (need_factor) {
        parse_factor(mono);
      }
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      need_factor = true;
    }
    if (negative) coeff = f.neg(coeff);
    out.add_term(std::move(mono), coeff);
  }

  void parse_factor(Monomial& mono) {
    skip_ws();
    if (at_end()) fail(Errc::parse_error, "expected variable");
    char v = peek();
    if (v != 'x' && v != 't') fail(Errc::parse_error, std::string("expected variable, found '") + v + "'");
    std::size_t var_pos = pos_;
    ++pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail(Errc::parse_error, "variable needs an index");
    std::string idx_s = digits();
    long long idx = idx_s.size() > 9 ? -1 : std::stoll(idx_s);
    long long bound = v == 'x' ? ring_.d : ring_.p;
    if (idx < 1 || idx > bound) {
      throw ParseError(Errc::unknown_variable, std::string(1, v) + idx_s, line_, col_offset_ + var_pos + 1);
    }
    Exp e = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      e = parse_uint_exp();
    }
    auto& slot = v == 'x' ? mono.x[static_cast<std::size_t>(idx - 1)] : mono.t[static_cast<std::size_t>(idx - 1)];
    slot = checked_add(slot, e);
  }

  std::string_view text_;
  const RingDescriptor<F>& ring_;
  std::size_t line_;
  std::size_t col_offset_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text`; `line` and `col_offset` only affect error positions.
template <ExactField F>
Poly<F> parse_poly(std::string_view text, const RingDescriptor<F>& ring, std::size_t line = 1,
                   std::size_t col_offset = 0) {
  return detail::PolyParser<F>(text, ring, line, col_offset).parse();
}

}  // namespace coefmod
