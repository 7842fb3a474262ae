#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <vector>

#include "pcon/eval.hpp"
#include "pcon/peel.hpp"
#include "support.hpp"

using namespace pcon;
using testsupport::barbell;
using testsupport::complete;
using testsupport::path_n;
using testsupport::random_graph;
using testsupport::two_rings;

TEST_CASE("brute force optimum on hand-checkable graphs", "[eval]") {
  SECTION("barbell") {
    OracleResult o = brute_force_optimum(barbell());
    CHECK(ratio_eq(o.min_phi, {1, 7}));
    // both triangles achieve it; the earliest bitmask is {0,1,2}
    CHECK(o.min_phi_set == std::vector<VertexId>{0, 1, 2});
    CHECK(ratio_eq(o.max_g, {3, 7}));
    CHECK(o.max_g_set == std::vector<VertexId>{0, 1, 2});
  }
  SECTION("two rings") {
    OracleResult o = brute_force_optimum(two_rings());
    CHECK(ratio_eq(o.min_phi, {1, 9}));
    CHECK(o.min_phi_set == std::vector<VertexId>{0, 1, 2, 3});
  }
  SECTION("complete graph K4") {
    OracleResult o = brute_force_optimum(complete(4));
    CHECK(ratio_eq(o.min_phi, {4, 6}));  // any pair; triples exceed volume m
    CHECK(o.min_phi_set.size() == 2);
  }
  SECTION("path P3 has no cut better than 1") {
    OracleResult o = brute_force_optimum(path_n(3));
    CHECK(ratio_eq(o.min_phi, {1, 1}));
  }
}

TEST_CASE("oracle minimum is a lower bound for arbitrary feasible sets",
          "[eval]") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_graph(9, 0.35, 400 + trial);
    if (g.edge_count() == 0) continue;
    OracleResult o = brute_force_optimum(g);
    CHECK(ratio_eq(conductance(g, o.min_phi_set), o.min_phi));
    CHECK(ratio_eq(g_score(g, o.max_g_set), o.max_g));
    for (int probe = 0; probe < 30; ++probe) {
      std::vector<VertexId> members;
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (rng.next_below(2)) members.push_back(v);
      if (members.empty() || members.size() == g.vertex_count()) continue;
      std::uint64_t vol = testsupport::ref_volume(g, members);
      if (vol == 0) continue;
      if (vol <= g.edge_count())
        CHECK_FALSE(ratio_less(conductance(g, members), o.min_phi));
      CHECK_FALSE(ratio_less(o.max_g, g_score(g, members)));
    }
  }
}

TEST_CASE("brute force optimum rejects oversized or edgeless graphs",
          "[eval]") {
  CHECK_THROWS_AS(brute_force_optimum(random_graph(21, 0.5, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_optimum(Graph::from_edges(5, {})),
                  std::invalid_argument);
}

TEST_CASE("nmi basics", "[eval]") {
  Partition a{{0, 0, 1, 1}};
  Partition b{{5, 5, 9, 9}};      // same split, different label values
  Partition c{{0, 1, 0, 1}};      // independent of a
  Partition single{{3, 3, 3, 3}};

  CHECK(nmi(a, a) == Catch::Approx(1.0));
  CHECK(nmi(a, b) == Catch::Approx(1.0));
  CHECK(nmi(a, c) == Catch::Approx(0.0).margin(1e-12));
  CHECK(nmi(a, single) == 0.0);  // degenerate marginal => 0 by convention
  CHECK(nmi(single, a) == 0.0);

  // frozen reference value for a 2x2 contingency {(0,0):2,(1,0):1,(1,1):1}
  Partition d{{0, 0, 0, 1}};
  CHECK(nmi(a, d) == Catch::Approx(0.345589).margin(5e-5));
  CHECK(nmi(d, a) == Catch::Approx(nmi(a, d)));  // symmetric

  Partition wrong_size{{0, 0, 1}};
  CHECK_THROWS_AS(nmi(a, wrong_size), std::invalid_argument);
  Partition empty{{}};
  CHECK_THROWS_AS(nmi(empty, empty), std::invalid_argument);
}

TEST_CASE("nmi stays within [0, 1] on random partitions", "[eval]") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng.next_below(40);
    Partition a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.labels.push_back(static_cast<std::uint32_t>(rng.next_below(4)));
      b.labels.push_back(static_cast<std::uint32_t>(rng.next_below(4)));
    }
    double v = nmi(a, b);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("score_detected_cluster picks the best-overlap community",
          "[eval]") {
  Partition truth{{0, 0, 0, 1, 1, 1}};  // barbell ground truth

  std::vector<VertexId> exact{3, 4, 5};
  CHECK(score_detected_cluster(exact, truth) == Catch::Approx(1.0));

  std::vector<VertexId> partial{3, 4};
  CHECK(score_detected_cluster(partial, truth) ==
        Catch::Approx(0.479139).margin(5e-4));

  // community-list overload with overlapping communities: {2,3,4,5} wins
  // with jaccard 3/4, and the NMI of the two binary splits is the same
  // contingency as above, transposed.
  std::vector<std::vector<VertexId>> comms{{0, 1, 2}, {2, 3, 4, 5}};
  std::vector<VertexId> det{3, 4, 5};
  double scored = score_detected_cluster(6, det, comms);
  CHECK(scored == Catch::Approx(0.479139).margin(5e-4));

  std::vector<VertexId> none;
  CHECK_THROWS_AS(score_detected_cluster(none, truth), std::invalid_argument);
  std::vector<VertexId> oob{9};
  CHECK_THROWS_AS(score_detected_cluster(6, oob, comms),
                  std::invalid_argument);
}

TEST_CASE("community set files parse and map to dense ids", "[eval]") {
  std::istringstream in(
      "# top communities\n"
      "10 20 30\n"
      "\n"
      "40 50\n");
  auto comms = read_community_sets(in);
  REQUIRE(comms.size() == 2);
  CHECK(comms[0] == std::vector<std::uint64_t>{10, 20, 30});
  CHECK(comms[1] == std::vector<std::uint64_t>{40, 50});

  std::istringstream none("# nothing\n");
  CHECK_THROWS_WITH(read_community_sets(none),
                    Catch::Matchers::ContainsSubstring("no communities"));

  // graph knows ids 10, 20, 40 only
  RelabelMap ids;
  ids.to_original = {10, 20, 40};
  ids.to_dense = {{10, 0}, {20, 1}, {40, 2}};
  auto dense = communities_to_dense(ids, comms);
  REQUIRE(dense.size() == 2);
  CHECK(dense[0] == std::vector<VertexId>{0, 1});  // 30 dropped
  CHECK(dense[1] == std::vector<VertexId>{2});     // 50 dropped

  RelabelMap stranger;
  stranger.to_original = {7};
  stranger.to_dense = {{7, 0}};
  CHECK_THROWS_WITH(communities_to_dense(stranger, comms),
                    Catch::Matchers::ContainsSubstring("no ground-truth"));
}

TEST_CASE("label pair files parse and build partitions", "[eval]") {
  std::istringstream in(
      "10 0\n"
      "20 0\n"
      "40 1\n"
      "99 1\n");  // 99 is outside the graph; silently skipped
  auto pairs = read_label_pairs(in);
  REQUIRE(pairs.size() == 4);

  RelabelMap ids;
  ids.to_original = {10, 20, 40};
  ids.to_dense = {{10, 0}, {20, 1}, {40, 2}};
  Partition part = partition_from_label_pairs(ids, pairs);
  CHECK(part.labels == std::vector<std::uint32_t>{0, 0, 1});

  std::istringstream missing("10 0\n20 0\n");
  auto incomplete = read_label_pairs(missing);
  CHECK_THROWS_WITH(partition_from_label_pairs(ids, incomplete),
                    Catch::Matchers::ContainsSubstring("no community label"));

  std::istringstream dup("10 0\n10 1\n20 0\n40 0\n");
  auto dupped = read_label_pairs(dup);
  CHECK_THROWS_WITH(partition_from_label_pairs(ids, dupped),
                    Catch::Matchers::ContainsSubstring("labeled twice"));

  std::istringstream bad("10\n");
  CHECK_THROWS_AS(read_label_pairs(bad), std::runtime_error);
  std::istringstream alpha("a 1\n");
  CHECK_THROWS_AS(read_label_pairs(alpha), std::runtime_error);
}
