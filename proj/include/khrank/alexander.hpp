#pragma once

// Two-variable Alexander polynomials of axis links U + closure(beta) via
// Morton's determinant formula. x is the axis variable, y the closure
// variable (the Burau t).

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "khrank/braid.hpp"
#include "khrank/error.hpp"
#include "khrank/laurent.hpp"

namespace khrank {

inline Laurent2 morton_axis_polynomial(const BraidWord& w) {
  if (w.strands() < 2) throw Error("axis polynomial needs at least 2 strands, got " + std::to_string(w.strands()));
  const int comps = closure_component_count(w);
  if (comps != 1)
    throw Error("closure of braid '" + to_string(w) + "' has " + std::to_string(comps) +
                " components; the axis polynomial needs a connected closure");
  const PolyMatrix rho = burau(w);
  const PolyMatrix char_matrix = Laurent2::variable(Var::x) * PolyMatrix::identity(rho.size()) - rho;
  return normalize_unit(determinant(char_matrix));
}

/// 1 + x + ... + x^(l-1)
inline Laurent2 geometric_sum(int l) {
  Laurent2 s;
  for (int k = 0; k < l; ++k) s = s + Laurent2::monomial(1, k, 0);
  return s;
}

/// p(x, 1) =. 1 + x + ... + x^(l-1), i.e. Torres' condition with an unknotted axis.
inline bool torres_check(const Laurent2& p, int l) {
  if (l < 1) throw Error("torres_check needs l >= 1");
  if (p.is_zero()) return false;
  return doteq_equal(substitute_unit(p, Var::y), geometric_sum(l));
}

/// p =. y^a + f_1(y) x + ... + f_{l-2}(y) x^(l-2) + x^(l-1)
struct AxisForm {
  int l = 0;
  int a = 0;
  std::vector<Laurent2> f;

  Laurent2 reconstruct() const {
    Laurent2 p = Laurent2::monomial(1, 0, a) + Laurent2::monomial(1, l - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) p = p + f[i] * Laurent2::monomial(1, static_cast<std::int64_t>(i) + 1, 0);
    return p;
  }

  /// Whether every f_i(1) equals 1.
  bool f_at_one_is_one() const {
    for (const auto& fi : f)
      if (coefficient_sum(fi) != 1) return false;
    return true;
  }
};

inline AxisForm axis_form_decompose(const Laurent2& p, int l) {
  if (l < 2) throw Error("axis form needs l >= 2");
  if (p.is_zero()) throw Error("axis form of the zero polynomial");
  Laurent2 q = normalize_unit(p);
  const int degree = q.max_exponent(Var::x);
  if (degree != l - 1)
    throw Error("x-degree " + std::to_string(degree) + " does not match l-1 = " + std::to_string(l - 1));
  const Laurent2 top = x_coefficient(q, l - 1);
  if (!top.is_unit()) throw Error("x^" + std::to_string(l - 1) + " coefficient " + to_string(top) + " is not a unit monomial");
  const auto& [top_m, top_c] = *top.terms().begin();
  q = q.times_unit(top_c < 0 ? -1 : 1, 0, -std::int64_t{top_m.y});
  const Laurent2 bottom = x_coefficient(q, 0);
  if (!bottom.is_unit()) throw Error("x^0 coefficient " + to_string(bottom) + " is not a unit monomial");
  const auto& [bottom_m, bottom_c] = *bottom.terms().begin();
  if (bottom_c < 0) throw Error("x^0 term " + to_string(bottom) + " has negative sign once x^(l-1) is normalized to 1");
  AxisForm form;
  form.l = l;
  form.a = bottom_m.y;
  for (int i = 1; i <= l - 2; ++i) form.f.push_back(x_coefficient(q, i));
  return form;
}

/// Sum of |coefficients| of (x-1)(y-1) p.
inline Integer lower_bound_stat(const Laurent2& p) {
  const Laurent2 xm1 = Laurent2::variable(Var::x) - Laurent2(1);
  const Laurent2 ym1 = Laurent2::variable(Var::y) - Laurent2(1);
  return abs_coeff_sum(poly_mul(poly_mul(xm1, ym1), p));
}

inline const std::string kFlagHypothesisViolated = "lemma hypothesis necessarily violated (link not exchangeably braided)";
inline const std::string kFlagSharpness = "sharpness contradiction";

struct AlexanderReport {
  BraidWord braid;
  Laurent2 delta;
  bool torres = false;
  std::optional<AxisForm> axis_form;
  std::string axis_form_error;
  Integer stat;
  std::vector<std::string> flags;
};

inline AlexanderReport lemma_bound_report(const BraidWord& w) {
  AlexanderReport r{w, morton_axis_polynomial(w), false, std::nullopt, {}, 0, {}};
  const int l = w.strands();
  r.torres = torres_check(r.delta, l);
  try {
    r.axis_form = axis_form_decompose(r.delta, l);
  } catch (const Error& e) {
    r.axis_form_error = e.what();
    r.flags.push_back(std::string("axis form: ") + e.what());
  }
  if (r.axis_form && !r.axis_form->f_at_one_is_one()) r.flags.push_back("f_i(1) != 1");
  if (!r.torres) r.flags.push_back("Torres condition fails");
  r.stat = lower_bound_stat(r.delta);
  if (l >= 3 && r.stat < 12) r.flags.push_back(kFlagHypothesisViolated);
  if (r.stat == 12 && l != 3) r.flags.push_back(kFlagSharpness);
  return r;
}

inline nlohmann::json to_json(const AlexanderReport& r) {
  nlohmann::json j;
  j["braid"] = to_string(r.braid);
  j["strands"] = r.braid.strands();
  j["delta"] = to_string(r.delta);
  j["torres"] = r.torres;
  if (r.axis_form) {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& fi : r.axis_form->f) f.push_back(to_string(fi));
    j["axis_form"] = {{"a", r.axis_form->a}, {"f", f}};
  } else {
    j["axis_form"] = nullptr;
  }
  j["stat"] = static_cast<long long>(r.stat);
  j["flags"] = r.flags;
  return j;
}

}  // namespace khrank
