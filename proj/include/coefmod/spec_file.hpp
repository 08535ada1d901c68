#pragma once

/// @file spec_file.hpp
/// Module specification files:
///
///   # comment
///   field = Fp:10007        (or Q)
///   xvars = 2
///   rank  = 2
///   label = mF              (optional)
///   gens  = [ (x1, 0) ; (x2, 0) ; (0, x1) ; (0, x2) ]
///
/// Each generator is a vector of `rank` polynomials in x1..x_d; parentheses
/// may be omitted when rank = 1. The generator list may span several lines.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coefmod/error.hpp"
#include "coefmod/field.hpp"
#include "coefmod/poly.hpp"
#include "coefmod/presentation.hpp"

namespace coefmod {

struct SpecEntry {
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;  // column of the first character of `text`
};

struct RawSpec {
  std::string field;
  int xvars = 0;
  int rank = 0;
  std::string label;
  std::vector<std::vector<SpecEntry>> gens;
};

namespace detail {

struct Located {
  char c;
  std::size_t line;
  std::size_t column;
};

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline int parse_count(const std::string& value, const std::string& key, std::size_t line, std::size_t col) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    throw ParseError(Errc::parse_error, key + " must be a positive integer", line, col);
  }
  int v = 0;
  try {
    v = std::stoi(value);
  } catch (const std::exception&) {
    throw ParseError(Errc::parse_error, key + " is out of range", line, col);
  }
  if (v < 1) throw ParseError(Errc::parse_error, key + " must be a positive integer", line, col);
  return v;
}

/// Splits a located character run on `sep` at parenthesis depth zero.
inline std::vector<std::vector<Located>> split_top(const std::vector<Located>& run, char sep) {
  std::vector<std::vector<Located>> parts(1);
  int depth = 0;
  for (const auto& l : run) {
    if (l.c == '(') ++depth;
    if (l.c == ')') --depth;
    if (l.c == sep && depth == 0) {
      parts.emplace_back();
      continue;
    }
    parts.back().push_back(l);
  }
  return parts;
}

inline std::vector<Located> strip(const std::vector<Located>& run) {
  std::size_t b = 0, e = run.size();
  while (b < e && std::isspace(static_cast<unsigned char>(run[b].c))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(run[e - 1].c))) --e;
  return {run.begin() + static_cast<std::ptrdiff_t>(b), run.begin() + static_cast<std::ptrdiff_t>(e)};
}

inline SpecEntry to_entry(const std::vector<Located>& run, std::size_t line, std::size_t col) {
  auto s = strip(run);
  if (s.empty()) throw ParseError(Errc::parse_error, "empty generator entry", line, col);
  SpecEntry e{"", s.front().line, s.front().column};
  for (const auto& l : s) {
    if (l.line != e.line) throw ParseError(Errc::parse_error, "a polynomial may not span lines", l.line, l.column);
    e.text.push_back(l.c);
  }
  return e;
}

}  // namespace detail

inline RawSpec parse_spec_text(const std::string& text) {
  RawSpec out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool in_gens = false, have_field = false, have_gens = false;
  std::size_t gens_line = 0, gens_col = 0;
  std::vector<detail::Located> run;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t start = 0;
    if (!in_gens) {
      if (detail::trim(line).empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ParseError(Errc::parse_error, "expected `key = value`", lineno, line.find_first_not_of(" \t") + 1);
      }
      auto key = detail::trim(line.substr(0, eq));
      auto value_col = line.find_first_not_of(" \t", eq + 1);
      auto value = detail::trim(line.substr(eq + 1));
      std::size_t vcol = value_col == std::string::npos ? eq + 2 : value_col + 1;
      if (key == "field") {
        out.field = value;
        have_field = true;
        if (value != "Q" && value.rfind("Fp:", 0) != 0) {
          throw ParseError(Errc::parse_error, "field must be Q or Fp:<prime>", lineno, vcol);
        }
      } else if (key == "xvars") {
        out.xvars = detail::parse_count(value, key, lineno, vcol);
      } else if (key == "rank") {
        out.rank = detail::parse_count(value, key, lineno, vcol);
      } else if (key == "label") {
        out.label = value;
      } else if (key == "gens") {
        if (value.empty() || value[0] != '[') throw ParseError(Errc::parse_error, "gens must start with `[`", lineno, vcol);
        in_gens = true;
        have_gens = true;
        gens_line = lineno;
        gens_col = vcol;
        start = value_col + 1;
      } else {
        throw ParseError(Errc::parse_error, "unknown key `" + key + "`", lineno, line.find_first_not_of(" \t") + 1);
      }
      if (!in_gens) continue;
    }
    for (std::size_t i = start; i < line.size(); ++i) {
      if (line[i] == ']') {
        in_gens = false;
        if (!detail::trim(line.substr(i + 1)).empty()) {
          throw ParseError(Errc::parse_error, "unexpected text after `]`", lineno, i + 2);
        }
        break;
      }
      run.push_back({line[i], lineno, i + 1});
    }
    if (in_gens) run.push_back({' ', lineno, line.size() + 1});
  }
  if (in_gens) throw ParseError(Errc::parse_error, "unterminated generator list", gens_line, gens_col);
  if (!have_field) throw ParseError(Errc::parse_error, "missing `field`", lineno + 1, 1);
  if (out.xvars == 0) throw ParseError(Errc::parse_error, "missing `xvars`", lineno + 1, 1);
  if (out.rank == 0) throw ParseError(Errc::parse_error, "missing `rank`", lineno + 1, 1);
  if (!have_gens) throw ParseError(Errc::parse_error, "missing `gens`", lineno + 1, 1);
  if (detail::strip(run).empty()) return out;
  for (const auto& item : detail::split_top(run, ';')) {
    auto s = detail::strip(item);
    if (s.empty()) throw ParseError(Errc::parse_error, "empty generator", gens_line, gens_col);
    std::vector<SpecEntry> vec;
    if (s.front().c == '(') {
      if (s.back().c != ')') throw ParseError(Errc::parse_error, "expected `)`", s.back().line, s.back().column + 1);
      std::vector<detail::Located> inner(s.begin() + 1, s.end() - 1);
      for (const auto& part : detail::split_top(inner, ',')) {
        vec.push_back(detail::to_entry(part, s.front().line, s.front().column + 1));
      }
    } else {
      vec.push_back(detail::to_entry(s, s.front().line, s.front().column));
    }
    if (static_cast<int>(vec.size()) != out.rank) {
      throw ParseError(Errc::arity_mismatch,
                       "generator has " + std::to_string(vec.size()) + " entries, rank is " + std::to_string(out.rank),
                       s.front().line, s.front().column);
    }
    out.gens.push_back(std::move(vec));
  }
  return out;
}

inline RawSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

/// Generators as elements of F = sum R t_j.
template <ExactField F>
ModulePresentation<F> build_module(const RawSpec& raw, const F& field) {
  RingDescriptor<F> ring(field, raw.xvars, raw.rank);
  std::vector<Poly<F>> gens;
  for (const auto& vec : raw.gens) {
    Poly<F> g(ring);
    for (std::size_t j = 0; j < vec.size(); ++j) {
      const auto& e = vec[j];
      auto p = parse_poly(e.text, ring, e.line, e.column - 1);
      if (!p.is_zero() && p.tdeg() != 0) {
        throw ParseError(Errc::parse_error, "vector entries are polynomials in x only", e.line, e.column);
      }
      ExpVec t(static_cast<std::size_t>(raw.rank), 0);
      t[j] = 1;
      g = g + p.times_monomial(Monomial(ExpVec(static_cast<std::size_t>(raw.xvars), 0), t));
    }
    gens.push_back(std::move(g));
  }
  return ModulePresentation<F>(ring, 1, std::move(gens));
}

/// Calls fn(module) with the module over the declared field.
template <class Fn>
decltype(auto) with_spec(const RawSpec& raw, Fn&& fn) {
  if (raw.field == "Q") return fn(build_module(raw, RationalField()));
  std::uint64_t q = 0;
  try {
    std::size_t used = 0;
    q = std::stoull(raw.field.substr(3), &used);
    if (used != raw.field.size() - 3) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "bad modulus in field `" + raw.field + "`");
  }
  return fn(build_module(raw, PrimeField(q)));
}

}  // namespace coefmod
