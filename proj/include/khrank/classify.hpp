#pragma once

// Rank-based predicates from the small-rank classification, and a verifier
// that checks them over a finite link table. Every identification here is
// conditional on the classification theorems; the verifier confirms their
// predictions entry by entry and says nothing about isotopy.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "khrank/alexander.hpp"
#include "khrank/dataset.hpp"
#include "khrank/error.hpp"
#include "khrank/gf2.hpp"
#include "khrank/khovanov.hpp"
#include "khrank/link_diagram.hpp"
#include "khrank/parallel.hpp"

namespace khrank {

inline constexpr const char* kAboveThreshold = "above-threshold";
inline constexpr const char* kInconsistent = "inconsistent";

/// Rank at or below which the classification names every link with n components.
inline std::size_t rank_threshold(int n) { return n <= 2 ? 8 : n == 3 ? 12 : 16; }

/// Sorted |lk| over all component pairs.
inline std::vector<int> pairwise_abs_linking(const LinkDiagram& d) {
  std::vector<int> out;
  for (int a = 0; a < d.component_count(); ++a)
    for (int b = a + 1; b < d.component_count(); ++b) out.push_back(std::abs(linking_number(d, a, b)));
  std::sort(out.begin(), out.end());
  return out;
}

/// The class a link with these invariants must belong to, or "above-threshold".
/// Classes sharing a (n, total) pair are told apart by pairwise |lk|.
inline std::string rank_class(int n, std::size_t total, const std::vector<int>& abs_lk) {
  if (total > rank_threshold(n)) return kAboveThreshold;
  const int nonzero = static_cast<int>(std::count_if(abs_lk.begin(), abs_lk.end(), [](int v) { return v != 0; }));
  const bool unit_links = std::all_of(abs_lk.begin(), abs_lk.end(), [](int v) { return v <= 1; });
  if (n == 1) {
    if (total == 2) return "unlink-1";
    if (total == 6) return "trefoil";
  } else if (n == 2) {
    if (total == 4 && nonzero == 0) return "unlink-2";
    if (total == 4 && abs_lk == std::vector<int>{1}) return "Hopf";
    if (total == 8 && abs_lk == std::vector<int>{2}) return "L4a1-class";
  } else if (n == 3) {
    if (total == 8 && unit_links && nonzero == 0) return "unlink-3";
    if (total == 8 && unit_links && nonzero == 1) return "Hopf+unknot";
    if (total == 8 && unit_links && nonzero == 2) return "Hopf#Hopf";
    if (total == 12 && unit_links && nonzero == 3) return "L6n1-class";
  } else if (total == (std::size_t{1} << n)) {
    return nonzero == 0 ? "unlink-" + std::to_string(n) : "unknot-forest";
  }
  return kInconsistent;
}

struct BatsonSeedMargin {
  std::vector<int> part_a;
  std::vector<int> part_b;
  std::size_t total = 0;
  std::size_t total_a = 0;
  std::size_t total_b = 0;
  long long margin() const { return static_cast<long long>(total) - static_cast<long long>(total_a * total_b); }
};

/// total(D) >= total(A) total(B) over every split of the components into nonempty A, B.
inline std::vector<BatsonSeedMargin> batson_seed_check(const LinkDiagram& d, int max_crossings = kDefaultMaxCrossings,
                                                       std::optional<std::size_t> known_total = {}) {
  const int n = d.component_count();
  if (n < 2) throw Error("Batson-Seed check needs at least 2 components, got " + std::to_string(n));
  if (n > 20) throw ResourceError("too many components for a bipartition sweep");
  const std::size_t total = known_total ? *known_total : total_rank(d, max_crossings);
  std::vector<BatsonSeedMargin> out;
  // Component n-1 always lies in B, so each unordered split is visited once.
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << (n - 1)); ++mask) {
    BatsonSeedMargin m;
    std::set<int> a, b;
    for (int c = 0; c < n; ++c) ((mask >> c) & 1U ? a : b).insert(c);
    m.part_a.assign(a.begin(), a.end());
    m.part_b.assign(b.begin(), b.end());
    m.total = total;
    m.total_a = total_rank(restrict_to(d, a), max_crossings);
    m.total_b = total_rank(restrict_to(d, b), max_crossings);
    out.push_back(std::move(m));
  }
  return out;
}

struct ClassificationReport {
  std::string name;
  int components = 0;
  std::size_t total = 0;
  std::size_t reduced = 0;
  bool parity_ok = false;
  bool lower_bound_ok = false;
  std::optional<bool> batson_seed_ok;  // absent for knots
  std::string match;
  std::vector<std::string> flags;
};

inline ClassificationReport classify_by_rank(const LinkDiagram& d, const std::string& name = {},
                                             int max_crossings = kDefaultMaxCrossings, unsigned jobs = 1) {
  ClassificationReport r;
  r.name = name;
  r.components = d.component_count();
  KhOptions o;
  o.max_crossings = max_crossings;
  o.jobs = jobs;
  r.total = kh_ranks(d, o).total;
  if (r.components > 0) {
    o.reduced = true;
    r.reduced = kh_ranks(d, o).total;
  }
  const int n = r.components;
  r.parity_ok = n == 1 ? r.total % 4 == 2 : r.total % 4 == 0;
  r.lower_bound_ok = n < 63 && r.total >= (std::size_t{1} << n);
  if (!r.parity_ok) r.flags.push_back("total violates the parity constraint");
  if (!r.lower_bound_ok) r.flags.push_back("total below 2^n");
  if (n >= 2) {
    const auto margins = batson_seed_check(d, max_crossings, r.total);
    r.batson_seed_ok = std::all_of(margins.begin(), margins.end(), [](const auto& m) { return m.margin() >= 0; });
    if (!*r.batson_seed_ok) r.flags.push_back("negative Batson-Seed margin");
  }
  r.match = n == 0 ? std::string(kInconsistent) : rank_class(n, r.total, pairwise_abs_linking(d));
  if (r.match == kInconsistent) r.flags.push_back("rank and linking numbers match no class of the classification");
  if (r.match != kAboveThreshold && r.match != kInconsistent)
    r.flags.push_back("necessary identification from rank; not an isotopy proof");
  return r;
}

inline nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json j;
  if (!r.name.empty()) j["name"] = r.name;
  j["components"] = r.components;
  j["total"] = r.total;
  j["reduced_total"] = r.reduced;
  j["parity"] = r.parity_ok;
  j["lower_bound"] = r.lower_bound_ok;
  j["batson_seed"] = r.batson_seed_ok ? nlohmann::json(*r.batson_seed_ok) : nlohmann::json(nullptr);
  j["class"] = r.match;
  j["flags"] = r.flags;
  return j;
}

/// For a connected-closure braid w: the coefficient sum statistic of the axis
/// link's Alexander polynomial against 2 rank Khr over Z/2, which bounds the
/// rational reduced rank from above.
struct AlexanderRankBound {
  Integer stat;
  std::size_t reduced_total = 0;
  bool holds() const { return stat <= Integer(2 * reduced_total); }
};

inline AlexanderRankBound alexander_rank_bound(const BraidWord& w, int max_crossings = kDefaultMaxCrossings) {
  AlexanderRankBound b;
  b.stat = lower_bound_stat(morton_axis_polynomial(w));
  b.reduced_total = reduced_total_rank(axis_link_diagram(w), std::nullopt, max_crossings);
  return b;
}

// ---------------------------------------------------------------------------
// Table verification

/// Everything computed for one table entry.
struct EntryResult {
  std::string name;
  int components = 0;
  std::size_t crossings = 0;
  std::size_t total = 0;
  std::size_t reduced = 0;
  std::optional<std::size_t> expected_total;
  std::string match;
  double seconds = 0;
  std::string error;  // nonempty if the entry could not be computed

  bool dd_zero = true;
  bool euler_ok = true;
  bool halving_ok = true;
  std::vector<int> halving_bad_arcs;
  bool j_parity_ok = true;
  bool parity_ok = true;
  bool lower_bound_ok = true;
  bool mirror_symmetric = true;
  bool union_ok = true;
  std::optional<bool> batson_seed_ok;
  long long batson_seed_min_margin = 0;
  bool mirror_class_ok = true;
};

namespace detail {

inline bool euler_ok(const KhovanovComplex& cx, const BigradedRanks& h) {
  std::map<int, long long> chain, homology;
  for (const auto& [i, j] : cx.bidegrees()) chain[j] += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(cx.dim(i, j));
  for (const auto& [bd, r] : h.entries) homology[bd.second] += (bd.first % 2 == 0 ? 1 : -1) * static_cast<long long>(r);
  auto nonzero = [](std::map<int, long long>& m) { std::erase_if(m, [](const auto& kv) { return kv.second == 0; }); };
  nonzero(chain);
  nonzero(homology);
  return chain == homology;
}

inline bool dd_zero(const KhovanovComplex& cx) {
  for (const auto& [i, j] : cx.bidegrees()) {
    if (cx.dim(i + 1, j) == 0 || cx.dim(i + 2, j) == 0) continue;
    if (!gf2::mul(cx.differential(i + 1, j), cx.differential(i, j)).is_zero()) return false;
  }
  return true;
}

inline EntryResult evaluate_entry(const DatasetEntry& e, int max_crossings) {
  EntryResult r;
  r.name = e.name;
  r.expected_total = e.expected_total;
  const auto start = std::chrono::steady_clock::now();
  try {
    const LinkDiagram d = e.diagram();
    r.components = d.component_count();
    r.crossings = d.crossing_count();
    const KhovanovComplex cx(d, {false, std::nullopt, max_crossings});
    const BigradedRanks h = homology_ranks(cx);
    r.total = h.total;
    r.dd_zero = dd_zero(cx);
    r.euler_ok = euler_ok(cx, h);
    std::set<int> parities;
    for (const auto& [bd, rank] : h.entries) parities.insert(((bd.second % 2) + 2) % 2);
    r.j_parity_ok = parities.size() <= 1;

    if (r.components > 0) {
      const int arcs = d.arc_count();
      std::vector<std::optional<int>> basepoints;
      if (arcs == 0) basepoints.push_back(std::nullopt);
      for (int a = 1; a <= arcs; ++a) basepoints.push_back(a);
      for (const auto& bp : basepoints) {
        const std::size_t red = homology_ranks(KhovanovComplex(d, {true, bp, max_crossings})).total;
        if (bp == basepoints.front()) r.reduced = red;
        if (2 * red != r.total) {
          r.halving_ok = false;
          r.halving_bad_arcs.push_back(bp.value_or(0));
        }
      }
    }

    const int n = r.components;
    r.parity_ok = n == 1 ? r.total % 4 == 2 : r.total % 4 == 0;
    r.lower_bound_ok = r.total >= (std::size_t{1} << std::min(n, 62));

    const LinkDiagram m = mirror(d);
    const BigradedRanks hm = homology_ranks(KhovanovComplex(m, {false, std::nullopt, max_crossings}));
    for (const auto& [bd, rank] : h.entries)
      if (hm.at(-bd.first, -bd.second) != rank) r.mirror_symmetric = false;
    if (hm.entries.size() != h.entries.size()) r.mirror_symmetric = false;

    const LinkDiagram with_unknot = disjoint_union(d, LinkDiagram({}, 1));
    r.union_ok = total_rank(with_unknot, max_crossings) == 2 * r.total;

    const std::vector<int> lk = n > 0 ? pairwise_abs_linking(d) : std::vector<int>{};
    r.match = n > 0 ? rank_class(n, r.total, lk) : std::string(kInconsistent);
    const std::string mirror_match = n > 0 ? rank_class(n, hm.total, pairwise_abs_linking(m)) : r.match;
    r.mirror_class_ok = mirror_match == r.match && hm.total == r.total && m.component_count() == n;

    if (n >= 2) {
      const auto margins = batson_seed_check(d, max_crossings, r.total);
      r.batson_seed_min_margin = margins.front().margin();
      for (const auto& mg : margins) r.batson_seed_min_margin = std::min(r.batson_seed_min_margin, mg.margin());
      r.batson_seed_ok = r.batson_seed_min_margin >= 0;
    }
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace detail

enum class CheckStatus { pass, fail, vacuous };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::vacuous: return "vacuous";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
  std::vector<std::string> counterexamples;
};

struct TableReport {
  std::vector<EntryResult> entries;  // sorted by name
  std::vector<CheckResult> checks;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::pass; });
  }
};

struct VerifyOptions {
  int max_crossings = kDefaultMaxCrossings;
  unsigned jobs = 1;
  /// Names allowed to have total <= 8 (the short corollary list).
  std::set<std::string> small_rank_names = {"unknot",     "unlink-2",    "unlink-3",  "3_1",        "3_1-mirror",
                                            "L2a1",       "L2a1-mirror", "Hopf#Hopf", "Hopf+unknot", "L4a1",
                                            "L4a1-mirror"};
};

namespace detail {

template <class Pred>
CheckResult entry_check(const std::string& name, const std::vector<EntryResult>& entries, Pred&& applies_and_ok) {
  CheckResult c{name, CheckStatus::vacuous, {}, {}};
  int applicable = 0;
  for (const auto& e : entries) {
    if (!e.error.empty()) continue;
    const auto verdict = applies_and_ok(e);  // optional<bool>: absent = not applicable
    if (!verdict) continue;
    ++applicable;
    if (!*verdict) c.counterexamples.push_back(e.name);
  }
  c.detail = std::to_string(applicable) + " entries checked";
  if (applicable > 0) c.status = c.counterexamples.empty() ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

inline CheckResult uniqueness_check(const std::string& name, const std::vector<EntryResult>& entries, int n,
                                    std::size_t total, const std::set<std::string>& expected_names) {
  std::set<std::string> found, wanted;
  for (const auto& e : entries) {
    if (expected_names.count(e.name)) wanted.insert(e.name);
    if (e.error.empty() && e.components == n && e.total == total) found.insert(e.name);
  }
  CheckResult c{name, CheckStatus::pass, {}, {}};
  std::ostringstream detail;
  detail << "entries with n=" << n << ", total=" << total << ": {";
  bool first = true;
  for (const auto& s : found) {
    detail << (first ? "" : ", ") << s;
    first = false;
  }
  detail << "}";
  c.detail = detail.str();
  if (found.empty()) {
    c.status = CheckStatus::vacuous;
    c.detail += "; class is empty";
    return c;
  }
  for (const auto& s : found)
    if (!wanted.count(s)) c.counterexamples.push_back(s);
  for (const auto& s : wanted)
    if (!found.count(s)) c.counterexamples.push_back(s);
  if (!c.counterexamples.empty()) c.status = CheckStatus::fail;
  return c;
}

}  // namespace detail

inline TableReport verify_table(const Dataset& data, const VerifyOptions& opts = {}) {
  Dataset sorted = data;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  TableReport rep;
  rep.entries.resize(sorted.size());
  parallel_for(sorted.size(), opts.jobs,
               [&](std::size_t k) { rep.entries[k] = detail::evaluate_entry(sorted[k], opts.max_crossings); });
  const auto& es = rep.entries;
  using detail::entry_check;
  using V = std::optional<bool>;

  CheckResult computed{"all entries computed", CheckStatus::pass, std::to_string(es.size()) + " entries", {}};
  for (const auto& e : es)
    if (!e.error.empty()) computed.counterexamples.push_back(e.name + " (" + e.error + ")");
  if (!computed.counterexamples.empty()) computed.status = CheckStatus::fail;
  if (es.empty()) computed.status = CheckStatus::vacuous;
  rep.checks.push_back(computed);

  rep.checks.push_back(entry_check("(1) d*d = 0", es, [](const EntryResult& e) { return V(e.dd_zero); }));
  rep.checks.push_back(entry_check("(1) Euler characteristic per quantum degree", es,
                                   [](const EntryResult& e) { return V(e.euler_ok); }));
  rep.checks.push_back(entry_check("(1) total = 2 * reduced at every basepoint", es,
                                   [](const EntryResult& e) { return e.components > 0 ? V(e.halving_ok) : V(); }));
  rep.checks.push_back(entry_check("(1) quantum degrees share one parity", es,
                                   [](const EntryResult& e) { return V(e.j_parity_ok); }));
  rep.checks.push_back(entry_check("(1) total = 2 mod 4 for knots, 0 mod 4 for links", es,
                                   [](const EntryResult& e) { return e.components > 0 ? V(e.parity_ok) : V(); }));
  rep.checks.push_back(entry_check("(1) total >= 2^n", es, [](const EntryResult& e) { return V(e.lower_bound_ok); }));
  rep.checks.push_back(entry_check("(1) mirror symmetry (i, j) <-> (-i, -j)", es,
                                   [](const EntryResult& e) { return V(e.mirror_symmetric); }));
  rep.checks.push_back(entry_check("(1) union with an unknot doubles the total", es,
                                   [](const EntryResult& e) { return V(e.union_ok); }));
  rep.checks.push_back(entry_check("(1) Batson-Seed margins nonnegative", es,
                                   [](const EntryResult& e) { return e.batson_seed_ok; }));
  rep.checks.push_back(entry_check("(1) classification invariant under mirror", es,
                                   [](const EntryResult& e) { return V(e.mirror_class_ok); }));
  rep.checks.push_back(entry_check("(1) class consistent with the classification", es, [](const EntryResult& e) {
    return e.components > 0 ? V(e.match != kInconsistent) : V();
  }));

  rep.checks.push_back(detail::uniqueness_check("(2) n=2, total 8 is exactly the L4a1 pair", es, 2, 8,
                                                {"L4a1", "L4a1-mirror"}));
  rep.checks.push_back(detail::uniqueness_check("(3) n=3, total 12 is exactly the L6n1 pair", es, 3, 12,
                                                {"L6n1", "L6n1-mirror"}));
  rep.checks.push_back(entry_check("(4) every total <= 8 is on the corollary list", es, [&](const EntryResult& e) {
    return e.total <= 8 ? V(opts.small_rank_names.count(e.name) > 0) : V();
  }));
  rep.checks.push_back(entry_check("(5) expected totals match", es, [](const EntryResult& e) {
    return e.expected_total ? V(*e.expected_total == e.total) : V();
  }));
  return rep;
}

inline nlohmann::json to_json(const TableReport& rep) {
  nlohmann::json j;
  j["status"] = rep.all_pass() ? "pass" : "fail";
  j["checks"] = nlohmann::json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back(
        {{"check", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}, {"counterexamples", c.counterexamples}});
  j["entries"] = nlohmann::json::array();
  for (const auto& e : rep.entries) {
    nlohmann::json row{{"name", e.name},   {"components", e.components}, {"crossings", e.crossings},
                       {"total", e.total}, {"reduced_total", e.reduced}, {"class", e.match}};
    row["expected_total"] = e.expected_total ? nlohmann::json(*e.expected_total) : nlohmann::json(nullptr);
    if (!e.error.empty()) row["error"] = e.error;
    j["entries"].push_back(row);
  }
  return j;
}

inline void print_table_report(std::ostream& out, const TableReport& rep) {
  out << std::left << std::setw(14) << "entry" << std::right << std::setw(4) << "n" << std::setw(6) << "cr"
      << std::setw(8) << "total" << std::setw(9) << "reduced" << std::setw(10) << "expected" << "  class\n";
  for (const auto& e : rep.entries) {
    out << std::left << std::setw(14) << e.name << std::right << std::setw(4) << e.components << std::setw(6)
        << e.crossings << std::setw(8) << e.total << std::setw(9) << e.reduced << std::setw(10)
        << (e.expected_total ? std::to_string(*e.expected_total) : "-") << "  " << (e.error.empty() ? e.match : "error: " + e.error)
        << '\n';
  }
  out << '\n';
  for (const auto& c : rep.checks) {
    out << std::left << std::setw(8) << to_string(c.status) << c.name << "  [" << c.detail << "]";
    if (!c.counterexamples.empty()) {
      out << "  counterexamples:";
      for (const auto& s : c.counterexamples) out << ' ' << s;
    }
    out << '\n';
  }
  out << (rep.all_pass() ? "all checks pass\n" : "some checks did not pass\n");
}

}  // namespace khrank
