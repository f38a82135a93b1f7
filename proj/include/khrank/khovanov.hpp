#pragma once

// Khovanov homology over Z/2 from the cube of resolutions.
//
// Vertex v of the cube is a bitmask over crossings: bit 0 takes the
// 0-smoothing (joins a-b and c-d), bit 1 the 1-smoothing (joins a-d and b-c).
// A generator at v labels each circle 1 or X; in a generator mask a set bit
// means X. Gradings:
//   i = |v| - n_-
//   j = (#1 - #X) + |v| + n_+ - 2 n_-      (+1 in the reduced theory)
// The reduced complex is the subcomplex where the marked circle carries X.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "khrank/error.hpp"
#include "khrank/gf2.hpp"
#include "khrank/link_diagram.hpp"
#include "khrank/parallel.hpp"

namespace khrank {

inline constexpr int kDefaultMaxCrossings = 14;

/// Circles of one complete resolution. Circles built from arcs come first,
/// numbered by their smallest arc; free loops follow.
struct Resolution {
  std::vector<int> circle_of_arc;  // indexed by label - 1
  int arc_circles = 0;
  int free_loops = 0;

  int circle_count() const { return arc_circles + free_loops; }
  int circle_of(int label) const { return circle_of_arc.at(static_cast<std::size_t>(label - 1)); }

  /// Arc sets of the arc circles; free loops appear as empty sets at the end.
  std::vector<std::vector<int>> circles() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(circle_count()));
    for (std::size_t a = 0; a < circle_of_arc.size(); ++a)
      out[static_cast<std::size_t>(circle_of_arc[a])].push_back(static_cast<int>(a) + 1);
    return out;
  }
};

namespace detail {

inline Resolution resolve_mask(const LinkDiagram& d, std::uint64_t v) {
  const std::size_t arcs = static_cast<std::size_t>(d.arc_count());
  std::vector<int> parent(arcs);
  for (std::size_t a = 0; a < arcs; ++a) parent[a] = static_cast<int>(a);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a - 1);
    b = find(b - 1);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (std::size_t k = 0; k < d.crossing_count(); ++k) {
    const auto& [a, b, c, e] = d.crossings()[k];
    if ((v >> k) & 1U) {
      unite(a, e);
      unite(b, c);
    } else {
      unite(a, b);
      unite(c, e);
    }
  }
  Resolution r;
  r.free_loops = d.free_loops();
  r.circle_of_arc.assign(arcs, -1);
  std::vector<int> id_of_root(arcs, -1);
  for (std::size_t a = 0; a < arcs; ++a) {
    const int root = find(static_cast<int>(a));
    if (id_of_root[static_cast<std::size_t>(root)] < 0) id_of_root[static_cast<std::size_t>(root)] = r.arc_circles++;
    r.circle_of_arc[a] = id_of_root[static_cast<std::size_t>(root)];
  }
  return r;
}

}  // namespace detail

inline Resolution resolve(const LinkDiagram& d, const std::vector<bool>& v) {
  if (v.size() != d.crossing_count()) throw Error("resolution vector length must equal the crossing count");
  if (v.size() > 63) throw ResourceError("too many crossings for a cube vertex");
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k]) mask |= std::uint64_t{1} << k;
  return detail::resolve_mask(d, mask);
}

enum class EdgeKind { merge, split };

/// Edge v -> v + e_k. For a merge, `from` holds the two circles at v and
/// `to[0]` the merged circle; for a split, `from[0]` splits into `to`.
struct CubeEdge {
  EdgeKind kind;
  std::array<int, 2> from{-1, -1};
  std::array<int, 2> to{-1, -1};
};

class ResolutionCube {
 public:
  explicit ResolutionCube(const LinkDiagram& d) : crossings_(d.crossings()) {
    if (d.crossing_count() > 30) throw ResourceError("cube too large");
    const std::size_t count = std::size_t{1} << d.crossing_count();
    vertices_.reserve(count);
    for (std::size_t v = 0; v < count; ++v) vertices_.push_back(detail::resolve_mask(d, v));
  }

  std::size_t crossing_count() const { return crossings_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  const Resolution& vertex(std::uint64_t v) const { return vertices_.at(v); }

  CubeEdge edge(std::uint64_t v, std::size_t k) const {
    if ((v >> k) & 1U) throw Error("cube edge must raise a zero bit");
    const auto& [a, b, c, e] = crossings_[k];
    const Resolution& src = vertices_[v];
    const Resolution& dst = vertices_[v | (std::uint64_t{1} << k)];
    const int ca = src.circle_of(a), cc = src.circle_of(c);
    if (ca != cc) return {EdgeKind::merge, {ca, cc}, {dst.circle_of(a), -1}};
    return {EdgeKind::split, {ca, -1}, {dst.circle_of(a), dst.circle_of(b)}};
  }

  /// For the edge v -> v + e_k: image at the target of every circle at v
  /// (merging circles both map to the merged one; a split circle maps to -1).
  std::vector<int> circle_map(std::uint64_t v, std::size_t k) const {
    const Resolution& src = vertices_[v];
    const Resolution& dst = vertices_[v | (std::uint64_t{1} << k)];
    std::vector<int> map(static_cast<std::size_t>(src.circle_count()), -1);
    for (std::size_t a = 0; a < src.circle_of_arc.size(); ++a)
      map[static_cast<std::size_t>(src.circle_of_arc[a])] = dst.circle_of_arc[a];
    const CubeEdge edge = this->edge(v, k);
    if (edge.kind == EdgeKind::split) map[static_cast<std::size_t>(edge.from[0])] = -1;
    for (int f = 0; f < src.free_loops; ++f) map[static_cast<std::size_t>(src.arc_circles + f)] = dst.arc_circles + f;
    return map;
  }

 private:
  std::vector<Quad> crossings_;
  std::vector<Resolution> vertices_;
};

using Bidegree = std::pair<int, int>;  // (homological i, quantum j)

struct ComplexOptions {
  bool reduced = false;
  std::optional<int> basepoint;  // arc label; default arc 1, or the first free loop
  int max_crossings = kDefaultMaxCrossings;
};

class KhovanovComplex {
 public:
  explicit KhovanovComplex(const LinkDiagram& d, ComplexOptions opts = {})
      : diagram_(d), reduced_(opts.reduced), cube_(check_size(d, opts.max_crossings)) {
    n_plus_ = d.positive_crossings();
    n_minus_ = d.negative_crossings();
    if (reduced_) resolve_basepoint(opts.basepoint);
    enumerate_generators();
  }

  const LinkDiagram& diagram() const { return diagram_; }
  bool reduced() const { return reduced_; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  const ResolutionCube& cube() const { return cube_; }

  /// Nonempty bidegrees in (i, j) order.
  std::vector<Bidegree> bidegrees() const {
    std::vector<Bidegree> out;
    for (const auto& [bd, gens] : blocks_) out.push_back(bd);
    return out;
  }

  std::size_t dim(int i, int j) const {
    auto it = blocks_.find({i, j});
    return it == blocks_.end() ? 0 : it->second.size();
  }

  std::size_t total_dim() const {
    std::size_t n = 0;
    for (const auto& [bd, gens] : blocks_) n += gens.size();
    return n;
  }

  /// The differential C^{i,j} -> C^{i+1,j}, rows indexing the target.
  gf2::BitMatrix differential(int i, int j) const {
    auto src_it = blocks_.find({i, j});
    const std::size_t cols = src_it == blocks_.end() ? 0 : src_it->second.size();
    const std::size_t rows = dim(i + 1, j);
    gf2::BitMatrix m(rows, cols);
    if (rows == 0 || cols == 0) return m;
    const std::size_t n = diagram_.crossing_count();
    for (std::size_t col = 0; col < cols; ++col) {
      const auto [v, mask] = src_it->second[col];
      for (std::size_t k = 0; k < n; ++k) {
        if ((v >> k) & 1U) continue;
        const std::uint64_t target = v | (std::uint64_t{1} << k);
        for_each_image(v, mask, k, [&](std::uint64_t image) {
          const std::int64_t row = index_[offset_[target] + image];
          if (row < 0) throw Error("differential left the complex");
          m.flip(static_cast<std::size_t>(row), col);
        });
      }
    }
    return m;
  }

 private:
  struct Gen {
    std::uint64_t vertex;
    std::uint64_t mask;
  };

  static const LinkDiagram& check_size(const LinkDiagram& d, int max_crossings) {
    if (static_cast<int>(d.crossing_count()) > max_crossings)
      throw ResourceError("diagram has " + std::to_string(d.crossing_count()) + " crossings; the cap is " +
                          std::to_string(max_crossings) + " (raise it with --max-crossings)");
    return d;
  }

  void resolve_basepoint(std::optional<int> basepoint) {
    if (diagram_.crossing_count() == 0) {
      if (basepoint) throw Error("basepoint arc " + std::to_string(*basepoint) + " is not an arc of the diagram");
      if (diagram_.free_loops() == 0) throw Error("the empty diagram has no basepoint");
      marked_arc_ = 0;  // first free loop
      return;
    }
    const int arc = basepoint.value_or(1);
    if (arc < 1 || arc > diagram_.arc_count())
      throw Error("basepoint arc " + std::to_string(arc) + " is not an arc of the diagram");
    marked_arc_ = arc;
  }

  int marked_circle(std::uint64_t v) const {
    const Resolution& r = cube_.vertex(v);
    return marked_arc_ == 0 ? r.arc_circles : r.circle_of(marked_arc_);
  }

  void enumerate_generators() {
    const std::size_t count = cube_.vertex_count();
    offset_.resize(count + 1);
    std::size_t total = 0;
    for (std::size_t v = 0; v < count; ++v) {
      offset_[v] = total;
      const int c = cube_.vertex(v).circle_count();
      if (c > 40) throw ResourceError("too many circles in a resolution");
      total += std::size_t{1} << c;
      if (total > (std::size_t{1} << 28)) throw ResourceError("chain complex too large");
    }
    offset_[count] = total;
    index_.assign(total, -1);
    for (std::uint64_t v = 0; v < count; ++v) {
      const int c = cube_.vertex(v).circle_count();
      const int height = std::popcount(v);
      const int i = height - n_minus_;
      const std::uint64_t marked_bit = reduced_ ? std::uint64_t{1} << marked_circle(v) : 0;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
        if ((mask & marked_bit) != marked_bit) continue;
        const int xs = std::popcount(mask);
        const int j = (c - 2 * xs) + height + n_plus_ - 2 * n_minus_ + (reduced_ ? 1 : 0);
        auto& block = blocks_[{i, j}];
        index_[offset_[v] + mask] = static_cast<std::int64_t>(block.size());
        block.push_back({v, mask});
      }
    }
  }

  template <class Emit>
  void for_each_image(std::uint64_t v, std::uint64_t mask, std::size_t k, Emit&& emit) const {
    const CubeEdge edge = cube_.edge(v, k);
    const std::vector<int> map = cube_.circle_map(v, k);
    std::uint64_t base = 0;
    for (std::size_t c = 0; c < map.size(); ++c) {
      if (map[c] < 0 || !((mask >> c) & 1U)) continue;
      if (edge.kind == EdgeKind::merge && (static_cast<int>(c) == edge.from[0] || static_cast<int>(c) == edge.from[1]))
        continue;
      base |= std::uint64_t{1} << map[c];
    }
    if (edge.kind == EdgeKind::merge) {
      const bool xa = (mask >> edge.from[0]) & 1U;
      const bool xb = (mask >> edge.from[1]) & 1U;
      if (xa && xb) return;                                      // X (x) X -> 0
      if (xa || xb) emit(base | (std::uint64_t{1} << edge.to[0]));  // 1 (x) X -> X
      else emit(base);                                           // 1 (x) 1 -> 1
      return;
    }
    const std::uint64_t b0 = std::uint64_t{1} << edge.to[0];
    const std::uint64_t b1 = std::uint64_t{1} << edge.to[1];
    if ((mask >> edge.from[0]) & 1U) {
      emit(base | b0 | b1);  // X -> X (x) X
    } else {
      emit(base | b1);  // 1 -> 1 (x) X + X (x) 1
      emit(base | b0);
    }
  }

  LinkDiagram diagram_;
  bool reduced_;
  ResolutionCube cube_;
  int n_plus_ = 0;
  int n_minus_ = 0;
  int marked_arc_ = 0;
  std::vector<std::size_t> offset_;
  std::vector<std::int64_t> index_;
  std::map<Bidegree, std::vector<Gen>> blocks_;
};

struct BigradedRanks {
  std::map<Bidegree, std::size_t> entries;  // positive ranks only
  std::size_t total = 0;

  std::size_t at(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }
};

struct KhOptions {
  bool reduced = false;
  std::optional<int> basepoint;
  int max_crossings = kDefaultMaxCrossings;
  unsigned jobs = 1;
};

/// Homology ranks of a built complex: dim C - rank(out) - rank(in), blockwise.
inline BigradedRanks homology_ranks(const KhovanovComplex& cx, unsigned jobs = 1) {
  const std::vector<Bidegree> bds = cx.bidegrees();
  std::vector<std::size_t> out_rank(bds.size(), 0);
  parallel_for(bds.size(), jobs, [&](std::size_t b) {
    out_rank[b] = gf2::rank(cx.differential(bds[b].first, bds[b].second));
  });
  std::map<Bidegree, std::size_t> rank_of_out;
  for (std::size_t b = 0; b < bds.size(); ++b) rank_of_out[bds[b]] = out_rank[b];
  BigradedRanks r;
  for (const auto& [i, j] : bds) {
    const std::size_t in = rank_of_out.count({i - 1, j}) ? rank_of_out.at({i - 1, j}) : 0;
    const std::size_t h = cx.dim(i, j) - rank_of_out.at({i, j}) - in;
    if (h > 0) {
      r.entries[{i, j}] = h;
      r.total += h;
    }
  }
  return r;
}

inline BigradedRanks kh_ranks(const LinkDiagram& d, const KhOptions& opts = {}) {
  KhovanovComplex cx(d, {opts.reduced, opts.basepoint, opts.max_crossings});
  return homology_ranks(cx, opts.jobs);
}

inline std::size_t total_rank(const LinkDiagram& d, int max_crossings = kDefaultMaxCrossings) {
  KhOptions o;
  o.max_crossings = max_crossings;
  return kh_ranks(d, o).total;
}

inline std::size_t reduced_total_rank(const LinkDiagram& d, std::optional<int> basepoint = {},
                                      int max_crossings = kDefaultMaxCrossings) {
  KhOptions o;
  o.reduced = true;
  o.basepoint = basepoint;
  o.max_crossings = max_crossings;
  return kh_ranks(d, o).total;
}

inline nlohmann::json bigraded_json(const BigradedRanks& r) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [bd, rank] : r.entries) out.push_back({bd.first, bd.second, rank});
  return out;
}

/// {"name"?, "components", "total", "reduced_total", "bigraded": [[i, j, rank], ...]}
inline nlohmann::json rank_report_json(const std::optional<std::string>& name, const LinkDiagram& d,
                                       const BigradedRanks& unreduced, std::size_t reduced_total) {
  nlohmann::json j;
  if (name) j["name"] = *name;
  j["components"] = d.component_count();
  j["total"] = unreduced.total;
  j["reduced_total"] = reduced_total;
  j["bigraded"] = bigraded_json(unreduced);
  return j;
}

}  // namespace khrank
