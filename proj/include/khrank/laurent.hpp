#pragma once

// Exact Laurent polynomials in two variables x, y with arbitrary-precision
// integer coefficients, square matrices over them, and the unit-normalization
// used to compare polynomials that are only defined up to +-x^a y^b.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "khrank/error.hpp"

namespace khrank {

using Integer = boost::multiprecision::cpp_int;

enum class Var { x, y };

/// Exponent pair. The defaulted ordering is lexicographic by (x, y).
struct Monomial {
  std::int32_t x = 0;
  std::int32_t y = 0;
  auto operator<=>(const Monomial&) const = default;
};

namespace detail {

inline std::int32_t checked_exponent(std::int64_t e) {
  if (e < std::numeric_limits<std::int32_t>::min() || e > std::numeric_limits<std::int32_t>::max())
    throw Error("exponent " + std::to_string(e) + " outside the signed 32-bit range");
  return static_cast<std::int32_t>(e);
}

inline Monomial shifted(Monomial m, std::int64_t dx, std::int64_t dy) {
  return {checked_exponent(std::int64_t{m.x} + dx), checked_exponent(std::int64_t{m.y} + dy)};
}

}  // namespace detail

class Laurent2 {
 public:
  using Terms = std::map<Monomial, Integer>;

  Laurent2() = default;
  Laurent2(int c) : Laurent2(Integer(c)) {}
  Laurent2(const Integer& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
  }

  static Laurent2 monomial(const Integer& c, std::int64_t ex, std::int64_t ey) {
    Laurent2 p;
    if (c != 0) p.terms_.emplace(Monomial{detail::checked_exponent(ex), detail::checked_exponent(ey)}, c);
    return p;
  }

  static Laurent2 variable(Var v) { return v == Var::x ? monomial(1, 1, 0) : monomial(1, 0, 1); }

  static Laurent2 from_terms(Terms terms) {
    std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
    Laurent2 p;
    p.terms_ = std::move(terms);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// True for a single term c*x^a*y^b (any nonzero c).
  bool is_monomial() const { return terms_.size() == 1; }

  /// True for +-x^a*y^b.
  bool is_unit() const { return is_monomial() && abs(terms_.begin()->second) == 1; }

  Integer coeff(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  // Exponent ranges; undefined on zero (callers check).
  std::int32_t min_exponent(Var v) const { return extreme(v, true); }
  std::int32_t max_exponent(Var v) const { return extreme(v, false); }

  /// Lexicographically largest term, used as the division leading term.
  const std::pair<const Monomial, Integer>& leading_term() const { return *terms_.rbegin(); }

  Laurent2 operator-() const {
    Laurent2 r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Laurent2& operator+=(const Laurent2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Laurent2& operator-=(const Laurent2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Laurent2& operator*=(const Laurent2& o) { return *this = *this * o; }

  friend Laurent2 operator+(Laurent2 a, const Laurent2& b) { return a += b; }
  friend Laurent2 operator-(Laurent2 a, const Laurent2& b) { return a -= b; }
  friend Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
    Laurent2 r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(detail::shifted(ma, mb.x, mb.y), ca * cb);
    return r;
  }
  friend bool operator==(const Laurent2&, const Laurent2&) = default;

  /// Multiply by the unit sign*x^dx*y^dy.
  Laurent2 times_unit(int sign, std::int64_t dx, std::int64_t dy) const {
    Laurent2 r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(detail::shifted(m, dx, dy), sign < 0 ? Integer(-c) : c);
    return r;
  }

  void add_term(Monomial m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  std::int32_t extreme(Var v, bool want_min) const {
    std::int32_t best = want_min ? std::numeric_limits<std::int32_t>::max() : std::numeric_limits<std::int32_t>::min();
    for (const auto& [m, c] : terms_) {
      std::int32_t e = v == Var::x ? m.x : m.y;
      best = want_min ? std::min(best, e) : std::max(best, e);
    }
    return best;
  }

  Terms terms_;
};

inline Laurent2 poly_add(const Laurent2& p, const Laurent2& q) { return p + q; }
inline Laurent2 poly_mul(const Laurent2& p, const Laurent2& q) { return p * q; }

/// Sets `which` to 1; the result only involves the other variable.
inline Laurent2 substitute_unit(const Laurent2& p, Var which) {
  Laurent2 r;
  for (const auto& [m, c] : p.terms()) r.add_term(which == Var::x ? Monomial{0, m.y} : Monomial{m.x, 0}, c);
  return r;
}

/// p(y, x).
inline Laurent2 swap_variables(const Laurent2& p) {
  Laurent2 r;
  for (const auto& [m, c] : p.terms()) r.add_term({m.y, m.x}, c);
  return r;
}

/// p(x^-1, y^-1).
inline Laurent2 invert_variables(const Laurent2& p) {
  Laurent2 r;
  for (const auto& [m, c] : p.terms())
    r.add_term({detail::checked_exponent(-std::int64_t{m.x}), detail::checked_exponent(-std::int64_t{m.y})}, c);
  return r;
}

/// Coefficient of x^k as a polynomial in y alone.
inline Laurent2 x_coefficient(const Laurent2& p, std::int32_t k) {
  Laurent2 r;
  for (const auto& [m, c] : p.terms())
    if (m.x == k) r.add_term({0, m.y}, c);
  return r;
}

/// Evaluates at x = y = 1.
inline Integer coefficient_sum(const Laurent2& p) {
  Integer s = 0;
  for (const auto& [m, c] : p.terms()) s += c;
  return s;
}

inline Integer abs_coeff_sum(const Laurent2& p) {
  Integer s = 0;
  for (const auto& [m, c] : p.terms()) s += abs(c);
  return s;
}

/// Canonical representative of the class of p under multiplication by
/// +-x^a y^b: minimal exponents shifted to 0, then the coefficient of the
/// lexicographically smallest monomial made positive.
inline Laurent2 normalize_unit(const Laurent2& p) {
  if (p.is_zero()) throw Error("zero polynomial has no unit normalization");
  Laurent2 shifted = p.times_unit(1, -std::int64_t{p.min_exponent(Var::x)}, -std::int64_t{p.min_exponent(Var::y)});
  int sign = shifted.terms().begin()->second < 0 ? -1 : 1;
  return sign < 0 ? -shifted : shifted;
}

inline bool doteq_equal(const Laurent2& p, const Laurent2& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return normalize_unit(p) == normalize_unit(q);
}

/// Exact quotient a / b in Z[x^+-1, y^+-1]. Throws if b does not divide a.
inline Laurent2 exact_divide(const Laurent2& a, const Laurent2& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  if (a.is_zero()) return {};
  // The quotient's support lies in this box; leaving it means b does not divide a.
  const std::int64_t lo_x = std::int64_t{a.min_exponent(Var::x)} - b.min_exponent(Var::x);
  const std::int64_t hi_x = std::int64_t{a.max_exponent(Var::x)} - b.max_exponent(Var::x);
  const std::int64_t lo_y = std::int64_t{a.min_exponent(Var::y)} - b.min_exponent(Var::y);
  const std::int64_t hi_y = std::int64_t{a.max_exponent(Var::y)} - b.max_exponent(Var::y);
  const auto& [lead_b, lead_c] = b.leading_term();
  Laurent2 quotient;
  Laurent2 rem = a;
  while (!rem.is_zero()) {
    const auto& [lead_r, lead_rc] = rem.leading_term();
    const std::int64_t qx = std::int64_t{lead_r.x} - lead_b.x;
    const std::int64_t qy = std::int64_t{lead_r.y} - lead_b.y;
    if (qx < lo_x || qx > hi_x || qy < lo_y || qy > hi_y || lead_rc % lead_c != 0)
      throw Error("inexact polynomial division");
    Laurent2 step = Laurent2::monomial(lead_rc / lead_c, qx, qy);
    rem -= step * b;
    quotient += step;
  }
  return quotient;
}

// ---------------------------------------------------------------------------
// Text form: terms joined by +/-, each `c*x^a*y^b` with unit coefficients and
// exponents of 1 omitted. Terms are ordered by (e_y, e_x) ascending.

struct VarNames {
  std::string x = "x";
  std::string y = "y";
};

inline std::string to_string(const Laurent2& p, const VarNames& names = {}) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, Integer>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return std::pair(a.first.y, a.first.x) < std::pair(b.first.y, b.first.x);
  });
  std::string out;
  for (const auto& [m, c] : terms) {
    bool negative = c < 0;
    Integer mag = abs(c);
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? '-' : '+';
    }
    std::vector<std::string> factors;
    if (mag != 1 || (m.x == 0 && m.y == 0)) factors.push_back(mag.str());
    auto power = [&](const std::string& name, std::int32_t e) {
      if (e == 0) return;
      factors.push_back(e == 1 ? name : name + "^" + std::to_string(e));
    };
    power(names.x, m.x);
    power(names.y, m.y);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += '*';
      out += factors[i];
    }
  }
  return out;
}

/// Parses the grammar emitted by to_string. `t` is read as an alias of y.
/// Whitespace is ignored.
inline Laurent2 parse_laurent(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty polynomial");
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("polynomial '" + std::string(text) + "': " + why + " at offset " + std::to_string(pos));
  };
  auto read_int = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  };
  Laurent2 result;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw fail("expected + or -");
    }
    first = false;
    Integer coeff = 1;
    std::int64_t ex = 0, ey = 0;
    bool any_factor = false;
    while (true) {
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        coeff *= Integer(read_int());
      } else if (pos < s.size() && (s[pos] == 'x' || s[pos] == 'y' || s[pos] == 't')) {
        char v = s[pos++];
        std::int64_t e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          bool neg = false;
          if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
          std::string digits = read_int();
          if (digits.empty()) throw fail("missing exponent");
          e = std::stoll(digits);
          if (neg) e = -e;
        }
        (v == 'x' ? ex : ey) += e;
      } else {
        throw fail("expected a coefficient or variable");
      }
      any_factor = true;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any_factor) throw fail("empty term");
    result += Laurent2::monomial(sign * coeff, ex, ey);
  }
  return result;
}

// ---------------------------------------------------------------------------

class PolyMatrix {
 public:
  explicit PolyMatrix(std::size_t n) : n_(n), entries_(n * n) {
    if (n == 0) throw Error("polynomial matrix must have size >= 1");
  }

  static PolyMatrix identity(std::size_t n) {
    PolyMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }

  Laurent2& operator()(std::size_t i, std::size_t j) { return entries_.at(i * n_ + j); }
  const Laurent2& operator()(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.n_ != b.n_) throw Error("polynomial matrix size mismatch");
    PolyMatrix r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const Laurent2& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < a.n_; ++j)
          if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.n_ != b.n_) throw Error("polynomial matrix size mismatch");
    PolyMatrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
    return r;
  }
  friend PolyMatrix operator*(const Laurent2& s, const PolyMatrix& a) {
    PolyMatrix r = a;
    for (auto& e : r.entries_) e = s * e;
    return r;
  }
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Laurent2> entries_;
};

namespace detail {

inline Laurent2 cofactor_det(const PolyMatrix& m, std::vector<std::size_t>& rows, std::size_t col) {
  if (rows.size() == 1) return m(rows[0], col);
  Laurent2 det;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Laurent2& pivot = m(rows[k], col);
    if (pivot.is_zero()) continue;
    std::size_t row = rows[k];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(k));
    Laurent2 minor = cofactor_det(m, rows, col + 1);
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(k), row);
    if (k % 2) det -= pivot * minor;
    else det += pivot * minor;
  }
  return det;
}

}  // namespace detail

/// Laplace expansion along the first column, recursively.
inline Laurent2 determinant_cofactor(const PolyMatrix& m) {
  std::vector<std::size_t> rows(m.size());
  std::iota(rows.begin(), rows.end(), 0);
  return detail::cofactor_det(m, rows, 0);
}

/// Fraction-free (Bareiss) elimination; every division is exact in the ring.
inline Laurent2 determinant_bareiss(PolyMatrix m) {
  const std::size_t n = m.size();
  int sign = 1;
  Laurent2 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return {};
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = exact_divide(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = Laurent2{};
    }
    prev = m(k, k);
  }
  return sign < 0 ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

inline Laurent2 determinant(const PolyMatrix& m) {
  return m.size() <= 4 ? determinant_cofactor(m) : determinant_bareiss(m);
}

inline std::string to_string(const PolyMatrix& m, const VarNames& names = {}) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ", ";
      out += to_string(m(i, j), names);
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace khrank
