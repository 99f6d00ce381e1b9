#include <doctest.h>

#include <set>

#include "graphgap/families.hpp"
#include "graphgap/multigraph.hpp"
#include "test_util.hpp"

using namespace graphgap;

TEST_CASE("construction validates and canonicalizes") {
  CHECK_THROWS(Multigraph(0, {}));
  CHECK_THROWS(Multigraph(2, {{0, 2, 1}}));
  CHECK_THROWS(Multigraph(2, {{0, 1, 0}}));
  CHECK_THROWS(Multigraph(2, {{0, 1, 1}}, {"only-one-label"}));

  // Parallel entries merge; order canonical.
  Multigraph g(3, {{1, 0, 1}, {0, 1, 2}, {2, 2, 1}});
  REQUIRE(g.edges().size() == 2);
  CHECK(g.edges()[0] == Edge{0, 1, 3});
  CHECK(g.edges()[1] == Edge{2, 2, 1});
  CHECK(g.omega(0, 1) == 3);
  CHECK(g.omega(1, 0) == 3);
  CHECK(g.omega(2, 2) == 1);
  CHECK(g.degree(0) == 3);
  CHECK(g.degree(2) == 1);  // loop counted once
}

TEST_CASE("all_pairs_distances basics") {
  auto p3 = standard_graph(StandardKind::Path, 3);
  CHECK(all_pairs_distances(p3)(0, 2) == 2);

  auto c5 = standard_graph(StandardKind::Cycle, 5);
  CHECK(all_pairs_distances(c5)(0, 3) == 2);

  auto pascal2 = hanoi_graph(2);
  CHECK(all_pairs_distances(pascal2).maxCoeff() == 3);
}

TEST_CASE("diameter examples") {
  CHECK(diameter(all_pairs_distances(standard_graph(StandardKind::Complete, 5))) == 1);
  CHECK(diameter(all_pairs_distances(grigorchuk_graph(3))) == 7);
  CHECK(diameter(hanoi_graph(4)) == 15);
}

TEST_CASE("max_degree conventions") {
  CHECK(max_degree(standard_graph(StandardKind::Cycle, 11)) == 2);

  // Every Hanoi vertex gets exactly one edge or loop from each of the three
  // generators; recount per vertex from the action as an oracle.
  for (int n = 1; n <= 4; ++n) {
    auto g = hanoi_graph(n);
    const auto& spec = hanoi_spec();
    for (int v = 0; v < g.vertex_count(); ++v) {
      int from_action = 0;
      for (int gen = 0; gen < 3; ++gen) {
        from_action += 1;  // involution: one incident edge or loop each
        CHECK(act(spec, gen, act(spec, gen, g.labels()[v])) == g.labels()[v]);
      }
      CHECK(g.degree(v) == from_action);
    }
    CHECK(max_degree(g) == 3);
  }

  CHECK(max_degree(grigorchuk_graph(1)) == 4);
}

TEST_CASE("disconnected input reported with vertex names") {
  Multigraph two_parts(4, {{0, 1, 1}, {2, 3, 1}});
  CHECK_THROWS_WITH_AS(all_pairs_distances(two_parts),
                       doctest::Contains("disconnected"), std::runtime_error);
  CHECK_FALSE(is_connected(two_parts));
}

TEST_CASE("metric axioms hold exhaustively on generated graphs") {
  std::vector<Multigraph> graphs;
  graphs.push_back(hanoi_graph(4));
  graphs.push_back(grigorchuk_graph(7));
  graphs.push_back(lamplighter_graph(4));
  graphs.push_back(sierpinski_graph(5));
  graphs.push_back(ball_path_graph(4));
  for (const auto& g : graphs) {
    REQUIRE(g.vertex_count() <= 200);
    auto d = all_pairs_distances(g);
    const int n = g.vertex_count();
    int violations = 0;
    for (int x = 0; x < n; ++x) {
      if (d(x, x) != 0) ++violations;
      for (int y = x + 1; y < n; ++y) {
        if (d(x, y) != d(y, x) || d(x, y) < 1) ++violations;
      }
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int z = 0; z < n; ++z) {
          if (d(x, z) > d(x, y) + d(y, z)) ++violations;
        }
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("diameter agrees with two BFS sweeps from a farthest pair") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = testutil::random_connected_graph(seed);
    auto d = all_pairs_distances(g);
    int diam = diameter(d);

    int fx = 0, fy = 0;
    for (int x = 0; x < g.vertex_count(); ++x) {
      for (int y = 0; y < g.vertex_count(); ++y) {
        if (d(x, y) == diam) {
          fx = x;
          fy = y;
        }
      }
    }
    auto from_x = testutil::bfs_oracle(g.vertex_count(), g.edges(), fx);
    auto from_y = testutil::bfs_oracle(g.vertex_count(), g.edges(), fy);
    CHECK(*std::max_element(from_x.begin(), from_x.end()) == diam);
    CHECK(*std::max_element(from_y.begin(), from_y.end()) == diam);
    CHECK(diameter(g) == diam);
  }
}

TEST_CASE("loops never change distances or diameter") {
  for (std::uint64_t seed = 100; seed < 112; ++seed) {
    auto g = testutil::random_connected_graph(seed);
    auto d = all_pairs_distances(g);
    auto rng = make_engine(seed, 1);
    auto edges = g.edges();
    int v = static_cast<int>(rng() % g.vertex_count());
    edges.push_back({v, v, 1});
    edges.push_back({0, 0, 2});
    Multigraph with_loop(g.vertex_count(), edges, g.labels(), g.transitive());
    auto d2 = all_pairs_distances(with_loop);
    CHECK(d == d2);
    CHECK(diameter(d) == diameter(d2));
  }
}
