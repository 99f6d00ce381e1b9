#include <doctest.h>

#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "graphgap/distortion.hpp"
#include "graphgap/families.hpp"
#include "graphgap/inequalities.hpp"
#include "graphgap/spectral.hpp"
#include "graphgap/volume.hpp"
#include "test_util.hpp"

using namespace graphgap;

namespace {

Embedding line_embedding(int n, double p) {
  Embedding e;
  e.p = p;
  e.coords.resize(n, 1);
  for (int i = 0; i < n; ++i) e.coords(i, 0) = i;
  return e;
}

/// BFS distances on the 6-generator Cayley graph of Z^2, the independent
/// oracle for the closed-form lattice metric.
std::map<std::pair<int, int>, int> lattice_bfs_oracle(int box) {
  const std::pair<int, int> steps[6] = {{1, 0},  {-1, 0}, {0, 1},
                                        {0, -1}, {-1, 1}, {1, -1}};
  std::map<std::pair<int, int>, int> dist;
  std::queue<std::pair<int, int>> queue;
  dist[{0, 0}] = 0;
  queue.push({0, 0});
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop();
    for (auto [dx, dy] : steps) {
      int nx = x + dx, ny = y + dy;
      if (std::abs(nx) > box || std::abs(ny) > box) continue;
      if (dist.emplace(std::make_pair(nx, ny), dist[{x, y}] + 1).second) {
        queue.push({nx, ny});
      }
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("realized distortion basics") {
  for (int n : {2, 5, 8}) {
    auto path = standard_graph(StandardKind::Path, n);
    auto d = all_pairs_distances(path);
    for (double p : {1.0, 2.0, 3.0}) {
      auto report = realized_distortion(d, line_embedding(n, p));
      CHECK(report.realized == doctest::Approx(1.0));
    }
  }

  auto c4 = standard_graph(StandardKind::Cycle, 4);
  auto d4 = all_pairs_distances(c4);
  Embedding square;
  square.p = 2.0;
  square.coords.resize(4, 2);
  square.coords << 0, 0, 1, 0, 1, 1, 0, 1;
  auto report = realized_distortion(d4, square);
  CHECK(report.expansion == doctest::Approx(1.0));
  CHECK(report.contraction == doctest::Approx(std::sqrt(2.0)));
  CHECK(report.realized == doctest::Approx(std::sqrt(2.0)));

  Embedding scaled = square;
  scaled.coords *= 7.0;
  CHECK(realized_distortion(d4, scaled).realized ==
        doctest::Approx(report.realized));

  Embedding collapsed = square;
  collapsed.coords.row(2) = collapsed.coords.row(0);
  CHECK_THROWS_WITH_AS(realized_distortion(d4, collapsed),
                       doctest::Contains("non-injective"), std::runtime_error);
}

TEST_CASE("realized distortion is invariant under isometries of the target") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = testutil::random_connected_graph(seed, 4, 12);
    auto d = all_pairs_distances(g);
    Embedding e = bourgain_embedding(g, d, 2.0, seed);
    double base = realized_distortion(d, e).realized;

    Embedding translated = e;
    translated.coords.rowwise() +=
        Eigen::RowVectorXd::Constant(e.coords.cols(), 2.5);
    CHECK(realized_distortion(d, translated).realized ==
          doctest::Approx(base));

    Embedding permuted = e;
    permuted.coords = permuted.coords.rowwise().reverse().eval();
    CHECK(realized_distortion(d, permuted).realized == doctest::Approx(base));
  }
}

TEST_CASE("randomized embedding: coordinates are 1-Lipschitz before scaling") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto g = hanoi_graph(3);
    auto d = all_pairs_distances(g);
    auto e = bourgain_embedding(g, d, 2.0, seed);
    const int n = g.vertex_count();
    const double scale = std::pow(double(e.dimension()), 1.0 / e.p);
    int violations = 0;
    for (int c = 0; c < e.dimension(); ++c) {
      for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
          double diff = std::abs(e.coords(x, c) - e.coords(y, c)) * scale;
          if (diff > d(x, y) + 1e-9) ++violations;
        }
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("randomized embedding: two points embed isometrically") {
  auto k2 = standard_graph(StandardKind::Path, 2);
  auto d = all_pairs_distances(k2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto report = realized_distortion(d, bourgain_embedding(k2, d, 2.0, seed));
    CHECK(report.realized == doctest::Approx(1.0));
  }
}

TEST_CASE("randomized embedding stays within the frozen log cap") {
  struct Entry {
    Family family;
    int lo, hi;
  };
  const Entry roster[] = {
      {Family::Hanoi, 1, 6},      {Family::Grigorchuk, 1, 9},
      {Family::Lamplighter, 2, 6}, {Family::BallPath, 1, 5},
      {Family::Sierpinski, 1, 6},
  };
  for (const auto& entry : roster) {
    for (int level = entry.lo; level <= entry.hi; ++level) {
      auto g = make_family_graph(entry.family, level);
      if (g.vertex_count() > 729 || g.vertex_count() < 2) continue;
      auto d = all_pairs_distances(g);
      const double cap = 5.0 * std::log2(double(g.vertex_count()));
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto e = bourgain_embedding(g, d, 2.0, seed);
        CHECK(realized_distortion(d, e).realized <= cap);
      }
    }
  }
}

TEST_CASE("lattice metric closed form against BFS") {
  CHECK(lattice_distance({0, 0}, {1, -1}) == 1);
  CHECK(lattice_distance({0, 0}, {1, 1}) == 2);
  CHECK(lattice_distance({0, 0}, {3, 0}) == 3);

  auto oracle = lattice_bfs_oracle(40);
  for (int dx = -12; dx <= 12; ++dx) {
    for (int dy = -12; dy <= 12; ++dy) {
      CHECK(lattice_distance({0, 0}, {dx, dy}) == oracle[{dx, dy}]);
    }
  }
}

TEST_CASE("planar drawing of the lattice") {
  CHECK(axial_to_planar({1, 0}).x() == doctest::Approx(1.0));
  CHECK(axial_to_planar({1, 0}).y() == doctest::Approx(0.0));
  CHECK(axial_to_planar({0, 1}).x() == doctest::Approx(0.5));
  CHECK(axial_to_planar({0, 1}).y() == doctest::Approx(std::sqrt(3.0) / 2.0));

  const AxialCoord steps[6] = {{1, 0},  {-1, 0}, {0, 1},
                               {0, -1}, {-1, 1}, {1, -1}};
  for (const auto& s : steps) {
    CHECK(axial_to_planar(s).norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("corner-anchored layout: base case and anchors") {
  auto coords = pascal_lattice_embedding(1);
  CHECK(coords[0] == AxialCoord{0, 0});
  CHECK(coords[1] == AxialCoord{1, 0});
  CHECK(coords[2] == AxialCoord{0, 1});

  for (int n = 1; n <= 5; ++n) {
    auto layout = pascal_lattice_embedding(n);
    auto g = hanoi_graph(n);
    std::map<std::string, int> index;
    for (int v = 0; v < g.vertex_count(); ++v) index[g.labels()[v]] = v;
    long long side = (1 << n) - 1;
    CHECK(layout[index[std::string(n, '0')]] == AxialCoord{0, 0});
    CHECK(layout[index[std::string(n, '1')]] == AxialCoord{side, 0});
    CHECK(layout[index[std::string(n, '2')]] == AxialCoord{0, side});
  }
}

TEST_CASE("corner-anchored layout: injective, unit edges, 1/3 contraction") {
  for (int n = 1; n <= 6; ++n) {
    auto layout = pascal_lattice_embedding(n);
    std::set<std::pair<long long, long long>> seen;
    for (const auto& c : layout) seen.insert({c.x, c.y});
    CHECK(seen.size() == layout.size());  // injective

    auto g = hanoi_graph(n);
    for (const Edge& e : g.edges()) {
      long long len = lattice_distance(layout[e.u], layout[e.v]);
      if (e.u == e.v) {
        CHECK(len == 0);
      } else {
        CHECK(len == 1);
      }
    }
  }

  for (int n = 1; n <= 5; ++n) {
    auto layout = pascal_lattice_embedding(n);
    auto g = hanoi_graph(n);
    auto d = all_pairs_distances(g);
    int violations = 0;
    for (int x = 0; x < g.vertex_count(); ++x) {
      for (int y = x + 1; y < g.vertex_count(); ++y) {
        // integer-exact form of ratio >= 1/3
        if (3 * lattice_distance(layout[x], layout[y]) < d(x, y)) {
          ++violations;
        }
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("planar drawing of the layout keeps distortion bounded") {
  auto g1 = hanoi_graph(1);
  auto report1 =
      realized_distortion(all_pairs_distances(g1), pascal_planar_embedding(1, 2.0));
  CHECK(report1.realized <= 1.16);

  double at3 = 0.0, at5 = 0.0;
  for (int n = 1; n <= 5; ++n) {
    auto g = hanoi_graph(n);
    auto e = pascal_planar_embedding(n, 2.0);
    auto report = realized_distortion(all_pairs_distances(g), e);
    CHECK(report.expansion == doctest::Approx(1.0));
    CHECK(report.realized <= 2.0 * std::sqrt(3.0) + 1e-9);
    if (n == 3) at3 = report.realized;
    if (n == 5) at5 = report.realized;
  }
  CHECK(at5 <= 1.25 * at3);
  CHECK(at3 <= 1.25 * at5);
}

TEST_CASE("distortion lower bound arithmetic") {
  // hexagon: delta=3, rho=2/3, k=2, ordered-pairs lambda=2, eps=1/2
  double bound = distortion_lower_bound(2.0, 3, 2.0 / 3.0, 2, 0.5, 2.0);
  CHECK(bound == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(distortion_lower_bound(2.0, 1, 0.0, 1, 0.5, 2.0),
                       doctest::Contains("vacuous"), std::runtime_error);
}

TEST_CASE("local search finds the known optima") {
  auto c4 = standard_graph(StandardKind::Cycle, 4);
  auto d4 = all_pairs_distances(c4);
  auto c4_result = local_opt_distortion(c4, d4, 2.0, 2, 0);
  CHECK(c4_result.report.realized <= std::sqrt(2.0) + 1e-3);

  auto p8 = standard_graph(StandardKind::Path, 8);
  auto d8 = all_pairs_distances(p8);
  auto p8_result = local_opt_distortion(p8, d8, 2.0, 1, 0);
  CHECK(p8_result.report.realized <= 1.0 + 1e-6);

  // sandwich against the assembled lower bound at p = 2
  auto g = hanoi_graph(2);
  auto d = all_pairs_distances(g);
  double lambda = lambda1_p2_exact(g, Convention::OrderedPairs).lambda;
  auto rho = rho_exact(g, d, 0.5);
  double lb = distortion_lower_bound(lambda, diameter(d), rho.lower,
                                     max_degree(g), 0.5, 2.0);
  auto upper = local_opt_distortion(g, d, 2.0, 3, 1);
  CHECK(lb <= upper.report.realized + 1e-9);
}

TEST_CASE("quasi-isometry constants") {
  // identity map
  auto c8 = standard_graph(StandardKind::Cycle, 8);
  auto d8 = all_pairs_distances(c8);
  Eigen::MatrixXd dd = d8.cast<double>();
  std::vector<int> identity(8);
  for (int i = 0; i < 8; ++i) identity[i] = i;
  auto qi = quasi_isometry_constants(dd, dd, identity);
  CHECK(qi.L == doctest::Approx(1.0));
  CHECK(qi.C == 0.0);
  CHECK(qi.K == 0.0);

  // even vertices of a path included into the path
  const int m = 6;
  auto p2m = standard_graph(StandardKind::Path, 2 * m);
  Eigen::MatrixXd dp = all_pairs_distances(p2m).cast<double>();
  Eigen::MatrixXd dsub(m, m);
  std::vector<int> image(m);
  for (int i = 0; i < m; ++i) {
    image[i] = 2 * i;
    for (int j = 0; j < m; ++j) dsub(i, j) = std::abs(2 * i - 2 * j);
  }
  auto qi2 = quasi_isometry_constants(dsub, dp, image);
  CHECK(qi2.L == doctest::Approx(1.0));
  CHECK(qi2.C == 0.0);
  CHECK(qi2.K == doctest::Approx(1.0));

  // lattice ball of radius 20 drawn in the plane
  std::vector<AxialCoord> ball;
  for (int x = -20; x <= 20; ++x) {
    for (int y = -20; y <= 20; ++y) {
      if (lattice_distance({0, 0}, {x, y}) <= 20) ball.push_back({x, y});
    }
  }
  const int bn = static_cast<int>(ball.size());
  Eigen::MatrixXd dlat(bn, bn), deuc(bn, bn);
  std::vector<int> ball_image(bn);
  for (int i = 0; i < bn; ++i) {
    ball_image[i] = i;
    for (int j = 0; j < bn; ++j) {
      dlat(i, j) = static_cast<double>(lattice_distance(ball[i], ball[j]));
      deuc(i, j) = (axial_to_planar(ball[i]) - axial_to_planar(ball[j])).norm();
    }
  }
  auto qi3 = quasi_isometry_constants(dlat, deuc, ball_image);
  CHECK(qi3.L <= 2.0 / std::sqrt(3.0) + 1e-9);
  CHECK(qi3.C == 0.0);
}
