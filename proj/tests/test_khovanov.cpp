#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace khrank;

namespace {

const char* kHopf = "X(1,3,2,4);X(3,1,4,2)";
const char* kTrefoil = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)";

BigradedRanks reduced_ranks(const LinkDiagram& d, std::optional<int> bp = {}) {
  KhOptions o;
  o.reduced = true;
  o.basepoint = bp;
  return kh_ranks(d, o);
}

std::map<Bidegree, std::size_t> table(std::initializer_list<std::tuple<int, int, std::size_t>> rows) {
  std::map<Bidegree, std::size_t> m;
  for (const auto& [i, j, r] : rows) m[{i, j}] = r;
  return m;
}

}  // namespace

TEST(Resolve, Examples) {
  EXPECT_EQ(resolve(parse_pd("O"), {}).circle_count(), 1);
  const LinkDiagram hopf = parse_pd(kHopf);
  EXPECT_EQ(resolve(hopf, {false, false}).circle_count(), 2);
  EXPECT_EQ(resolve(hopf, {false, true}).circle_count(), 1);
  EXPECT_EQ(resolve(parse_pd(kTrefoil), {false, false, false}).circle_count(), 3);
  EXPECT_EQ(resolve(parse_pd(kTrefoil), {true, true, true}).circle_count(), 2);
  EXPECT_THROW(resolve(hopf, {true}), Error);
}

TEST(Resolve, MatchesWalkOracle) {
  for (const auto& e : builtin_dataset()) {
    const LinkDiagram d = e.diagram();
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << d.crossing_count()); ++v) {
      std::vector<bool> bits(d.crossing_count());
      for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = (v >> k) & 1U;
      EXPECT_EQ(resolve(d, bits).circle_count(), oracle::count_circles(d.crossings(), v) + d.free_loops()) << e.name;
    }
  }
}

TEST(ResolutionCube, AdjacentCountsDifferByOne) {
  for (const auto& e : builtin_dataset()) {
    const LinkDiagram d = e.diagram();
    const ResolutionCube cube(d);
    for (std::uint64_t v = 0; v < cube.vertex_count(); ++v)
      for (std::size_t k = 0; k < cube.crossing_count(); ++k) {
        if ((v >> k) & 1U) continue;
        const int c0 = cube.vertex(v).circle_count();
        const int c1 = cube.vertex(v | (std::uint64_t{1} << k)).circle_count();
        const CubeEdge edge = cube.edge(v, k);
        EXPECT_EQ(std::abs(c0 - c1), 1);
        EXPECT_EQ(edge.kind == EdgeKind::merge, c1 == c0 - 1);
      }
  }
}

TEST(KhRanks, Unknot) {
  const BigradedRanks r = kh_ranks(parse_pd("O"));
  EXPECT_EQ(r.total, 2u);
  EXPECT_EQ(r.entries, table({{0, -1, 1}, {0, 1, 1}}));
  const BigradedRanks red = reduced_ranks(parse_pd("O"));
  EXPECT_EQ(red.entries, table({{0, 0, 1}}));
  EXPECT_THROW(reduced_ranks(parse_pd("O"), 1), Error);
  EXPECT_THROW(reduced_ranks(LinkDiagram({}, 0)), Error);
  EXPECT_THROW(reduced_ranks(parse_pd(kHopf), 5), Error);
}

TEST(KhRanks, GoldenTotals) {
  EXPECT_EQ(total_rank(parse_pd(kHopf)), 4u);
  EXPECT_EQ(total_rank(parse_pd("O O")), 4u);
  EXPECT_EQ(total_rank(parse_pd(kTrefoil)), 6u);
  EXPECT_EQ(total_rank(mirror(parse_pd(kTrefoil))), 6u);
  EXPECT_EQ(total_rank(parse_pd("X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)")), 10u);
  const LinkDiagram l4a1 = parse_pd("X(6,1,7,2);X(8,3,5,4);X(2,5,3,6);X(4,7,1,8)");
  EXPECT_EQ(total_rank(l4a1), 8u);
  EXPECT_EQ(reduced_total_rank(l4a1), 4u);
  EXPECT_EQ(total_rank(parse_pd("X(6,1,7,2);X(12,8,9,7);X(4,12,1,11);X(5,11,6,10);X(3,8,4,5);X(9,3,10,2)")), 12u);
  EXPECT_EQ(total_rank(braid_closure_diagram(parse_braid("3:1 1 2 2"))), 8u);
}

TEST(KhRanks, BigradedAgainstPublishedTables) {
  // Reduced Z/2 homology of KnotInfo's 3_1: q^2 + t^2 q^6 + t^3 q^8.
  EXPECT_EQ(reduced_ranks(parse_pd("X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)")).entries, table({{0, 2, 1}, {2, 6, 1}, {3, 8, 1}}));
  // Hopf link with linking number +1: 1 + q^2 + t^2 q^4 + t^2 q^6.
  EXPECT_EQ(kh_ranks(parse_pd("X(4,2,3,1);X(2,4,1,3)")).entries, table({{0, 0, 1}, {0, 2, 1}, {2, 4, 1}, {2, 6, 1}}));
}

TEST(KhRanks, PresentationInvariance) {
  EXPECT_EQ(total_rank(braid_closure_diagram(parse_braid("2:1 1 1"))), total_rank(parse_pd(kTrefoil)));
  EXPECT_EQ(kh_ranks(braid_closure_diagram(parse_braid("2:1 1 1"))).entries,
            kh_ranks(parse_pd("X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)")).entries);
  EXPECT_EQ(total_rank(axis_link_diagram(parse_braid("2:1"))), 8u);
  // Reidemeister moves on the braid: conjugation and stabilization.
  EXPECT_EQ(kh_ranks(braid_closure_diagram(parse_braid("3:1 1 1 2"))).entries,
            kh_ranks(braid_closure_diagram(parse_braid("2:1 1 1"))).entries);
  EXPECT_EQ(kh_ranks(braid_closure_diagram(parse_braid("3:2 1 -2 1 -2 -2"))).entries,
            kh_ranks(braid_closure_diagram(parse_braid("3:1 -2 1 -2"))).entries);
}

TEST(KhRanks, CrossingCap) {
  const LinkDiagram d = braid_closure_diagram(parse_braid("2:1 1 1 1 1"));
  KhOptions o;
  o.max_crossings = 4;
  EXPECT_THROW(kh_ranks(d, o), ResourceError);
  o.max_crossings = 5;
  EXPECT_EQ(kh_ranks(d, o).total, 10u);
}

TEST(KhRanks, ParallelBlocksAgree) {
  for (const auto& e : builtin_dataset()) {
    KhOptions o;
    o.jobs = 3;
    EXPECT_EQ(kh_ranks(e.diagram(), o).entries, kh_ranks(e.diagram()).entries) << e.name;
  }
}

TEST(KhRanks, ReportJson) {
  const LinkDiagram d = parse_pd(kHopf);
  const nlohmann::json j = rank_report_json(std::string("hopf"), d, kh_ranks(d), 2);
  EXPECT_EQ(j["name"], "hopf");
  EXPECT_EQ(j["components"], 2);
  EXPECT_EQ(j["total"], 4);
  EXPECT_EQ(j["reduced_total"], 2);
  EXPECT_EQ(j["bigraded"], nlohmann::json::parse("[[0,0,1],[0,2,1],[2,4,1],[2,6,1]]"));
}

// Dataset-wide properties.

TEST(KhovanovProperty, DifferentialSquaresToZero) {
  for (const auto& e : builtin_dataset()) {
    for (bool reduced : {false, true}) {
      if (reduced && e.components == 0) continue;
      const KhovanovComplex cx(e.diagram(), {reduced, std::nullopt, kDefaultMaxCrossings});
      for (const auto& [i, j] : cx.bidegrees()) {
        const gf2::BitMatrix d0 = cx.differential(i, j), d1 = cx.differential(i + 1, j);
        EXPECT_TRUE(gf2::mul(d1, d0).is_zero()) << e.name << " at " << i << "," << j;
      }
    }
  }
}

TEST(KhovanovProperty, EulerCharacteristicMatchesStateSum) {
  for (const auto& e : builtin_dataset()) {
    const LinkDiagram d = e.diagram();
    const auto [plus, minus] = oracle::signs_by_walk(d.crossings());
    const BigradedRanks r = kh_ranks(d);
    if (plus == d.positive_crossings()) {
      EXPECT_EQ(oracle::euler_characteristic(r), oracle::state_sum_jones(d.crossings(), d.free_loops(), plus, minus))
          << e.name;
    } else {
      ADD_FAILURE() << e.name << ": crossing signs disagree with the walk oracle";
    }
    // chain-level Euler characteristic per j
    const KhovanovComplex cx(d);
    oracle::QPoly chain;
    for (const auto& [i, j] : cx.bidegrees()) chain[j] += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(cx.dim(i, j));
    std::erase_if(chain, [](const auto& kv) { return kv.second == 0; });
    EXPECT_EQ(chain, oracle::euler_characteristic(r)) << e.name;
  }
}

TEST(KhovanovProperty, HalvingAtEveryBasepoint) {
  for (const auto& e : builtin_dataset()) {
    const LinkDiagram d = e.diagram();
    const std::size_t total = total_rank(d);
    if (d.arc_count() == 0) {
      EXPECT_EQ(2 * reduced_total_rank(d), total) << e.name;
      continue;
    }
    for (int a = 1; a <= d.arc_count(); ++a) EXPECT_EQ(2 * reduced_total_rank(d, a), total) << e.name << " arc " << a;
  }
}

TEST(KhovanovProperty, QuantumParity) {
  for (const auto& e : builtin_dataset()) {
    std::set<int> parities;
    for (const auto& [bd, r] : kh_ranks(e.diagram()).entries) parities.insert(((bd.second % 2) + 2) % 2);
    EXPECT_EQ(parities.size(), 1u) << e.name;
    // odd number of components puts j in the odd class
    EXPECT_EQ(*parities.begin(), e.components % 2) << e.name;
  }
}

TEST(KhovanovProperty, MirrorSymmetry) {
  for (const auto& e : builtin_dataset()) {
    const BigradedRanks a = kh_ranks(e.diagram()), b = kh_ranks(mirror(e.diagram()));
    EXPECT_EQ(a.total, b.total);
    std::map<Bidegree, std::size_t> flipped;
    for (const auto& [bd, r] : a.entries) flipped[{-bd.first, -bd.second}] = r;
    EXPECT_EQ(flipped, b.entries) << e.name;
  }
}

TEST(KhovanovProperty, DisjointUnionMultiplies) {
  const Dataset data = builtin_dataset();
  for (const char* a : {"unknot", "3_1", "L2a1", "4_1", "L4a1"})
    for (const char* b : {"unknot", "3_1-mirror", "L2a1-mirror"}) {
      const LinkDiagram da = find_entry(data, a).diagram(), db = find_entry(data, b).diagram();
      EXPECT_EQ(total_rank(disjoint_union(da, db)), total_rank(da) * total_rank(db)) << a << " + " << b;
    }
}

TEST(KhovanovProperty, TotalParityAndLowerBound) {
  for (const auto& e : builtin_dataset()) {
    const std::size_t t = total_rank(e.diagram());
    if (e.components == 1) EXPECT_EQ(t % 4, 2u) << e.name;
    else EXPECT_EQ(t % 4, 0u) << e.name;
    EXPECT_GE(t, std::size_t{1} << e.components) << e.name;
  }
}

TEST(KhovanovProperty, RandomBraidClosures) {
  // Random closures: halving, parity, d*d = 0 and the state-sum Euler check.
  auto r = gen::rng(50);
  for (int k = 0; k < 40; ++k) {
    const LinkDiagram d = braid_closure_diagram(gen::braid(r, gen::uniform(r, 1, 4), 7));
    const BigradedRanks h = kh_ranks(d);
    EXPECT_EQ(2 * reduced_total_rank(d), h.total);
    if (d.component_count() == 1) EXPECT_EQ(h.total % 4, 2u);
    else EXPECT_EQ(h.total % 4, 0u);
    EXPECT_EQ(oracle::euler_characteristic(h),
              oracle::state_sum_jones(d.crossings(), d.free_loops(), d.positive_crossings(), d.negative_crossings()));
  }
}
