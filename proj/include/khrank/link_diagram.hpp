#pragma once

// Oriented link diagrams in PD form.
//
// Convention: X(a,b,c,d) lists the four arcs at a crossing counterclockwise,
// starting from the incoming under-strand a; the under-strand runs a -> c and
// the over-strand joins b and d. The over-strand's direction is not part of
// the quadruple; it is recovered from the global traversal (or supplied by the
// constructors that know it). Crossingless circles are counted separately as
// free loops, written `O` in text.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "khrank/braid.hpp"
#include "khrank/error.hpp"

namespace khrank {

using Quad = std::array<int, 4>;

struct Component {
  std::vector<int> arcs;  // traversal order, starting at the smallest label; empty for a free loop
  bool free_loop = false;
};

class LinkDiagram {
 public:
  LinkDiagram() = default;

  /// Orientation inferred from the under-strands; components that never pass
  /// under are oriented from their smallest arc toward its smaller neighbour.
  LinkDiagram(std::vector<Quad> crossings, int free_loops) : crossings_(std::move(crossings)), free_loops_(free_loops) {
    init(std::nullopt);
  }

  /// over_forward[k] is true when the over-strand of crossing k runs b -> d.
  LinkDiagram(std::vector<Quad> crossings, int free_loops, std::vector<bool> over_forward)
      : crossings_(std::move(crossings)), free_loops_(free_loops) {
    if (over_forward.size() != crossings_.size()) throw Error("over-strand direction list has the wrong length");
    init(std::move(over_forward));
  }

  const std::vector<Quad>& crossings() const { return crossings_; }
  std::size_t crossing_count() const { return crossings_.size(); }
  int free_loops() const { return free_loops_; }
  int arc_count() const { return static_cast<int>(2 * crossings_.size()); }

  const std::vector<Component>& components() const { return components_; }
  int component_count() const { return static_cast<int>(components_.size()); }

  /// Component index of an arc label (1-based labels).
  int component_of_arc(int label) const { return arc_component_.at(static_cast<std::size_t>(label - 1)); }
  int under_component(std::size_t k) const { return component_of_arc(crossings_.at(k)[0]); }
  int over_component(std::size_t k) const { return component_of_arc(crossings_.at(k)[1]); }

  bool over_forward(std::size_t k) const { return over_forward_.at(k); }
  const std::vector<bool>& over_directions() const { return over_forward_; }

  /// +1 iff the over-strand crosses left-to-right seen along the under-strand (d -> b).
  int sign(std::size_t k) const { return over_forward_.at(k) ? -1 : 1; }

  int writhe() const {
    int w = 0;
    for (std::size_t k = 0; k < crossings_.size(); ++k) w += sign(k);
    return w;
  }
  int positive_crossings() const {
    return static_cast<int>(std::count(over_forward_.begin(), over_forward_.end(), false));
  }
  int negative_crossings() const { return static_cast<int>(crossings_.size()) - positive_crossings(); }

  /// Same diagram with each component's arcs renumbered consecutively along
  /// its orientation, so that re-parsing the PD text infers the same orientation.
  LinkDiagram relabeled_along_orientation() const;

  friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
    return a.crossings_ == b.crossings_ && a.free_loops_ == b.free_loops_ && a.over_forward_ == b.over_forward_;
  }

 private:
  struct Occurrence {
    int crossing;
    int slot;
    auto operator<=>(const Occurrence&) const = default;
  };

  void init(std::optional<std::vector<bool>> forced);

  std::vector<Quad> crossings_;
  int free_loops_ = 0;
  std::vector<bool> over_forward_;
  std::vector<int> arc_component_;
  std::vector<Component> components_;
  // Head (entry) occurrence of every arc under the chosen orientation.
  std::vector<Occurrence> head_;
};

inline void LinkDiagram::init(std::optional<std::vector<bool>> forced) {
  if (free_loops_ < 0) throw Error("free loop count must be nonnegative");
  const std::size_t n = crossings_.size();

  // Normalize labels to 1..2n preserving order.
  std::map<int, std::vector<Occurrence>> occ;
  for (std::size_t k = 0; k < n; ++k)
    for (int s = 0; s < 4; ++s) {
      if (crossings_[k][s] <= 0) throw ParseError("arc labels must be positive integers");
      occ[crossings_[k][s]].push_back({static_cast<int>(k), s});
    }
  for (const auto& [label, where] : occ)
    if (where.size() != 2)
      throw ParseError("arc " + std::to_string(label) + " occurs " + std::to_string(where.size()) +
                       " times; every arc must occur exactly twice");
  std::map<int, int> renumber;
  for (const auto& [label, where] : occ) renumber.emplace(label, static_cast<int>(renumber.size()) + 1);
  for (auto& q : crossings_)
    for (int& a : q) a = renumber.at(a);

  const std::size_t arcs = 2 * n;
  std::vector<std::array<Occurrence, 2>> where(arcs);
  {
    std::vector<int> filled(arcs, 0);
    for (std::size_t k = 0; k < n; ++k)
      for (int s = 0; s < 4; ++s) {
        const std::size_t a = static_cast<std::size_t>(crossings_[k][s] - 1);
        where[a][filled[a]++] = {static_cast<int>(k), s};
      }
  }
  auto label_at = [&](Occurrence o) { return crossings_[o.crossing][o.slot]; };
  auto other_end = [&](int label, Occurrence o) {
    const auto& w = where[static_cast<std::size_t>(label - 1)];
    return w[0] == o ? w[1] : w[0];
  };

  arc_component_.assign(arcs, -1);
  head_.assign(arcs, {});
  components_.clear();
  over_forward_.assign(n, false);

  for (int start = 1; start <= static_cast<int>(arcs); ++start) {
    if (arc_component_[start - 1] >= 0) continue;
    // Walk the strand: from an arc's head, pass through to the opposite slot.
    std::vector<int> seq;
    std::vector<Occurrence> heads;
    Occurrence first_head = where[start - 1][0];
    int arc = start;
    Occurrence head = first_head;
    while (true) {
      seq.push_back(arc);
      heads.push_back(head);
      Occurrence tail_of_next{head.crossing, (head.slot + 2) % 4};
      int next = label_at(tail_of_next);
      Occurrence next_head = other_end(next, tail_of_next);
      if (next == start) {
        if (next_head != first_head) throw ParseError("inconsistent traversal at arc " + std::to_string(start));
        break;
      }
      if (std::find(seq.begin(), seq.end(), next) != seq.end())
        throw ParseError("inconsistent traversal at arc " + std::to_string(next));
      arc = next;
      head = next_head;
    }

    // Score both directions against the fixed under-strand directions (and the
    // forced over directions, if given).
    auto consistent = [&](bool reversed) {
      for (std::size_t i = 0; i < seq.size(); ++i) {
        Occurrence h = heads[i];
        Occurrence t = other_end(seq[i], h);
        if (reversed) std::swap(h, t);
        if (h.slot == 2 || t.slot == 0) return false;
        if (forced) {
          const bool fwd_here = (*forced)[static_cast<std::size_t>(h.crossing)];
          if (h.slot == 1 && fwd_here == false) return false;
          if (h.slot == 3 && fwd_here == true) return false;
        }
      }
      return true;
    };
    const bool ok_fwd = consistent(false);
    const bool ok_rev = consistent(true);
    if (!ok_fwd && !ok_rev)
      throw ParseError("inconsistent traversal: component through arc " + std::to_string(start) +
                       " cannot be oriented");
    bool reversed = !ok_fwd;
    if (ok_fwd && ok_rev && seq.size() > 1) {
      // Free orientation: step from the smallest arc to its smaller neighbour;
      // on a tie, the smallest arc's head sits at the lower crossing.
      const int succ = seq[1];
      const int pred = seq.back();
      if (pred != succ) {
        reversed = pred < succ;
      } else {
        reversed = other_end(seq[0], heads[0]) < heads[0];
      }
    }
    if (reversed) {
      std::vector<int> rseq{seq[0]};
      std::vector<Occurrence> rheads{other_end(seq[0], heads[0])};
      for (std::size_t i = seq.size() - 1; i >= 1; --i) {
        rseq.push_back(seq[i]);
        rheads.push_back(other_end(seq[i], heads[i]));
      }
      seq = std::move(rseq);
      heads = std::move(rheads);
    }
    const int comp = static_cast<int>(components_.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      arc_component_[static_cast<std::size_t>(seq[i] - 1)] = comp;
      head_[static_cast<std::size_t>(seq[i] - 1)] = heads[i];
      if (heads[i].slot == 1) over_forward_[static_cast<std::size_t>(heads[i].crossing)] = true;
    }
    components_.push_back({std::move(seq), false});
  }
  for (int i = 0; i < free_loops_; ++i) components_.push_back({{}, true});
}

inline LinkDiagram LinkDiagram::relabeled_along_orientation() const {
  std::vector<int> new_label(static_cast<std::size_t>(arc_count()) + 1, 0);
  int next = 1;
  for (const auto& comp : components_) {
    if (comp.free_loop) continue;
    const std::size_t len = comp.arcs.size();
    // Start at an arc whose head crossing precedes its tail crossing, so the
    // free-orientation rule recovers this direction on re-parse.
    std::size_t start = 0;
    for (std::size_t i = 0; i < len; ++i) {
      const int a = comp.arcs[i];
      const Occurrence h = head_[static_cast<std::size_t>(a - 1)];
      const Occurrence t = head_[static_cast<std::size_t>(comp.arcs[(i + len - 1) % len] - 1)];
      // The tail of arc a is the exit slot opposite the previous arc's head.
      const Occurrence tail{t.crossing, (t.slot + 2) % 4};
      if (h < tail) {
        start = i;
        break;
      }
    }
    for (std::size_t i = 0; i < len; ++i) new_label[static_cast<std::size_t>(comp.arcs[(start + i) % len])] = next++;
  }
  std::vector<Quad> relabeled = crossings_;
  for (auto& q : relabeled)
    for (int& a : q) a = new_label[static_cast<std::size_t>(a)];
  return LinkDiagram(std::move(relabeled), free_loops_, over_forward_);
}

// ---------------------------------------------------------------------------
// Text and JSON forms

inline LinkDiagram parse_pd(std::string_view text) {
  std::vector<Quad> crossings;
  int loops = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    return ParseError("PD '" + std::string(text) + "': " + why + " at offset " + std::to_string(pos));
  };
  auto skip_sep = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ';')) ++pos;
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  while (true) {
    skip_sep();
    if (pos >= text.size()) break;
    const char head = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
    if (head == 'O') {
      ++pos;
      ++loops;
      continue;
    }
    if (head != 'X') throw fail("expected X(...) or O");
    ++pos;
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') throw fail("expected '('");
    ++pos;
    Quad q{};
    for (int s = 0; s < 4; ++s) {
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw fail("expected a positive arc label");
      if (pos - start > 9) throw fail("arc label too large");
      q[s] = std::stoi(std::string(text.substr(start, pos - start)));
      if (q[s] <= 0) throw fail("arc labels must be positive");
      skip_ws();
      const char want = s < 3 ? ',' : ')';
      if (pos >= text.size() || text[pos] != want) throw fail(std::string("expected '") + want + "'");
      ++pos;
    }
    crossings.push_back(q);
  }
  return LinkDiagram(std::move(crossings), loops);
}

inline std::string to_pd_string(const LinkDiagram& d) {
  std::string out;
  for (const auto& q : d.crossings()) {
    if (!out.empty()) out += ';';
    out += "X(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) + "," +
           std::to_string(q[3]) + ")";
  }
  for (int i = 0; i < d.free_loops(); ++i) out += out.empty() ? "O" : ";O";
  return out;
}

inline nlohmann::json to_json(const LinkDiagram& d) {
  nlohmann::json pd = nlohmann::json::array();
  for (const auto& q : d.crossings()) pd.push_back({q[0], q[1], q[2], q[3]});
  return {{"pd", pd}, {"free_loops", d.free_loops()}};
}

inline LinkDiagram diagram_from_json(const nlohmann::json& j) {
  try {
    std::vector<Quad> crossings;
    for (const auto& q : j.at("pd")) {
      if (!q.is_array() || q.size() != 4) throw ParseError("each PD entry must have four labels");
      crossings.push_back({q[0].get<int>(), q[1].get<int>(), q[2].get<int>(), q[3].get<int>()});
    }
    return LinkDiagram(std::move(crossings), j.value("free_loops", 0));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("diagram JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Invariants read off the diagram

inline std::vector<std::vector<int>> components(const LinkDiagram& d) {
  std::vector<std::vector<int>> out;
  for (const auto& c : d.components()) {
    std::vector<int> arcs = c.arcs;
    std::sort(arcs.begin(), arcs.end());
    out.push_back(std::move(arcs));
  }
  return out;
}

inline int crossing_sign(const LinkDiagram& d, std::size_t crossing) { return d.sign(crossing); }
inline int writhe(const LinkDiagram& d) { return d.writhe(); }

inline int linking_number(const LinkDiagram& d, int comp_a, int comp_b) {
  if (comp_a < 0 || comp_b < 0 || comp_a >= d.component_count() || comp_b >= d.component_count())
    throw Error("component index out of range");
  if (comp_a == comp_b) throw Error("linking number needs two distinct components");
  int sum = 0;
  for (std::size_t k = 0; k < d.crossing_count(); ++k) {
    const int u = d.under_component(k), o = d.over_component(k);
    if ((u == comp_a && o == comp_b) || (u == comp_b && o == comp_a)) sum += d.sign(k);
  }
  return sum / 2;
}

// ---------------------------------------------------------------------------
// Constructors

inline LinkDiagram mirror(const LinkDiagram& d) {
  std::vector<Quad> out;
  std::vector<bool> fwd;
  for (std::size_t k = 0; k < d.crossing_count(); ++k) {
    const auto& [a, b, c, e] = d.crossings()[k];
    if (d.over_forward(k)) {
      out.push_back({b, c, e, a});  // new under b -> d; old under a -> c now runs d -> b
      fwd.push_back(false);
    } else {
      out.push_back({e, a, b, c});  // new under d -> b; old under now runs b -> d
      fwd.push_back(true);
    }
  }
  return LinkDiagram(std::move(out), d.free_loops(), std::move(fwd));
}

inline LinkDiagram disjoint_union(const LinkDiagram& d1, const LinkDiagram& d2) {
  std::vector<Quad> out = d1.crossings();
  std::vector<bool> fwd = d1.over_directions();
  const int offset = d1.arc_count();
  for (std::size_t k = 0; k < d2.crossing_count(); ++k) {
    Quad q = d2.crossings()[k];
    for (int& a : q) a += offset;
    out.push_back(q);
    fwd.push_back(d2.over_forward(k));
  }
  return LinkDiagram(std::move(out), d1.free_loops() + d2.free_loops(), std::move(fwd));
}

/// Removes every component in `doomed`. Crossings touching a removed component
/// vanish; the surviving strand through such a crossing is fused into one arc.
inline LinkDiagram delete_components(const LinkDiagram& d, const std::set<int>& doomed) {
  for (int c : doomed)
    if (c < 0 || c >= d.component_count()) throw Error("component index out of range");
  std::vector<int> parent(static_cast<std::size_t>(d.arc_count()) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  std::vector<Quad> kept;
  std::vector<bool> fwd;
  for (std::size_t k = 0; k < d.crossing_count(); ++k) {
    const Quad& q = d.crossings()[k];
    const bool under_gone = doomed.count(d.under_component(k)) > 0;
    const bool over_gone = doomed.count(d.over_component(k)) > 0;
    if (!under_gone && !over_gone) {
      kept.push_back(q);
      fwd.push_back(d.over_forward(k));
    } else if (under_gone && !over_gone) {
      unite(q[1], q[3]);
    } else if (!under_gone && over_gone) {
      unite(q[0], q[2]);
    }
  }
  std::set<int> used;
  for (auto& q : kept)
    for (int& a : q) {
      a = find(a);
      used.insert(a);
    }
  int loops = 0;
  for (int c = 0; c < d.component_count(); ++c) {
    if (doomed.count(c)) continue;
    const auto& comp = d.components()[static_cast<std::size_t>(c)];
    if (comp.free_loop) {
      ++loops;
      continue;
    }
    if (!used.count(find(comp.arcs.front()))) ++loops;  // all its crossings vanished
  }
  return LinkDiagram(std::move(kept), loops, std::move(fwd));
}

inline LinkDiagram delete_component(const LinkDiagram& d, int comp) { return delete_components(d, {comp}); }

/// Keeps exactly the listed components.
inline LinkDiagram restrict_to(const LinkDiagram& d, const std::set<int>& keep) {
  std::set<int> doomed;
  for (int c = 0; c < d.component_count(); ++c)
    if (!keep.count(c)) doomed.insert(c);
  return delete_components(d, doomed);
}

namespace detail {

// Strands run upward; sigma_i is positive with the left strand on top. With
// `axis`, an unknotted circle crosses over every strand below the braid and
// under every returning strand of the closure, all 2l crossings positive.
inline LinkDiagram build_braid_diagram(const BraidWord& w, bool axis) {
  const int l = w.strands();
  int next_label = 1;
  std::vector<int> init(static_cast<std::size_t>(l)), cur(static_cast<std::size_t>(l));
  for (int p = 0; p < l; ++p) init[p] = cur[p] = next_label++;
  std::vector<Quad> xs;
  std::vector<bool> fwd;
  for (const auto& g : w.letters()) {
    const int i = g.index - 1;
    const int in_l = cur[i], in_r = cur[i + 1];
    const int out_l = next_label++, out_r = next_label++;  // new arcs at positions i+1 and i
    if (g.sign > 0) {
      xs.push_back({in_r, out_l, out_r, in_l});
      fwd.push_back(false);
    } else {
      xs.push_back({in_l, in_r, out_l, out_r});
      fwd.push_back(true);
    }
    cur[i] = out_r;
    cur[i + 1] = out_l;
  }
  int loops = 0;
  if (!axis) {
    // Close each top end onto the bottom of the same position.
    std::map<int, int> closing;
    for (int p = 0; p < l; ++p) {
      if (cur[p] == init[p]) ++loops;
      else closing[cur[p]] = init[p];
    }
    for (auto& q : xs)
      for (int& a : q)
        if (auto it = closing.find(a); it != closing.end()) a = it->second;
    return LinkDiagram(std::move(xs), loops, std::move(fwd)).relabeled_along_orientation();
  }
  std::vector<int> ret(static_cast<std::size_t>(l));
  for (int p = 0; p < l; ++p) ret[p] = next_label++;
  std::vector<int> u(static_cast<std::size_t>(2 * l));
  for (auto& a : u) a = next_label++;
  auto u_in = [&](int k) { return u[static_cast<std::size_t>(k)]; };
  auto u_out = [&](int k) { return u[static_cast<std::size_t>((k + 1) % (2 * l))]; };
  // Axis crossings in order along the axis: braid columns left to right, then
  // the returning strands, innermost (p = l) first.
  for (int p = 0; p < l; ++p) {
    xs.push_back({ret[p], u_out(p), init[p], u_in(p)});
    fwd.push_back(false);
  }
  for (int k = l; k < 2 * l; ++k) {
    const int p = 2 * l - 1 - k;
    xs.push_back({u_in(k), ret[p], u_out(k), cur[p]});
    fwd.push_back(false);
  }
  return LinkDiagram(std::move(xs), 0, std::move(fwd)).relabeled_along_orientation();
}

}  // namespace detail

inline LinkDiagram braid_closure_diagram(const BraidWord& w) { return detail::build_braid_diagram(w, false); }

/// U together with the closure of w, U being the braid axis.
inline LinkDiagram axis_link_diagram(const BraidWord& w) { return detail::build_braid_diagram(w, true); }

}  // namespace khrank
