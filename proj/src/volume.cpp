#include "graphgap/volume.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace graphgap {

const char* rho_method_name(RhoMethod m) {
  switch (m) {
    case RhoMethod::Exact: return "exact";
    case RhoMethod::BallcountLower: return "ballcount_lower";
    case RhoMethod::WitnessUpper: return "witness_upper";
  }
  return "?";
}

int rho_subset_size(double eps, int n) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must be in (0, 1)");
  }
  return static_cast<int>(std::ceil(eps * n - 1e-9));
}

namespace {

// Decision search for a clique of a given size on <= 64 vertices, with a
// greedy-coloring bound.
struct CliqueDecision {
  int target = 0;
  std::vector<std::uint64_t> adj;
  std::vector<int> stack;
  std::vector<int> witness;
  bool found = false;

  void expand(std::uint64_t candidates) {
    if (found) return;
    if (static_cast<int>(stack.size()) == target) {
      witness = stack;
      found = true;
      return;
    }
    if (static_cast<int>(stack.size()) + std::popcount(candidates) < target) {
      return;
    }

    // Greedy coloring: vertices listed class by class, color values ascending.
    std::vector<int> order, color;
    std::uint64_t uncolored = candidates;
    int c = 0;
    while (uncolored) {
      ++c;
      std::uint64_t avail = uncolored;
      while (avail) {
        int v = std::countr_zero(avail);
        order.push_back(v);
        color.push_back(c);
        uncolored &= ~(1ULL << v);
        avail &= ~(1ULL << v);
        avail &= ~adj[v];
      }
    }

    std::uint64_t pool = candidates;
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (static_cast<int>(stack.size()) + color[i] < target) return;
      int v = order[i];
      stack.push_back(v);
      expand(pool & adj[v]);
      stack.pop_back();
      if (found) return;
      pool &= ~(1ULL << v);
    }
  }
};

bool has_subset_of_diameter(const DistanceMatrix& d, int size, int max_diam,
                            std::vector<int>* witness) {
  const int n = static_cast<int>(d.rows());
  CliqueDecision search;
  search.target = size;
  search.adj.assign(n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && d(u, v) <= max_diam) search.adj[u] |= 1ULL << v;
    }
  }
  std::uint64_t all = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  search.expand(all);
  if (search.found && witness) {
    *witness = search.witness;
    std::sort(witness->begin(), witness->end());
  }
  return search.found;
}

int max_ball_size(const DistanceMatrix& d, int radius) {
  int best = 0;
  for (int x = 0; x < d.rows(); ++x) {
    int count = 0;
    for (int y = 0; y < d.cols(); ++y) {
      if (d(x, y) <= radius) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

}  // namespace

RhoResult rho_exact(const Multigraph& g, const DistanceMatrix& d, double eps) {
  const int n = g.vertex_count();
  if (n > kRhoExactCap) {
    throw std::runtime_error(
        "rho_exact: graph has more than " + std::to_string(kRhoExactCap) +
        " vertices; use rho_lower_ballcount / rho_upper_witness instead");
  }
  RhoResult result;
  result.eps = eps;
  result.method = RhoMethod::Exact;
  result.subset_size = rho_subset_size(eps, n);
  if (result.subset_size <= 1) {
    result.degenerate = true;
    result.lower = result.upper = 0.0;
    result.witness = {0};
    result.witness_diameter = 0;
    return result;
  }

  const int diam = diameter(d);
  // Ball counting already rules out small diameters; start the search there.
  int start = 1;
  for (int r = 0; r < diam; ++r) {
    if (max_ball_size(d, r) < result.subset_size) {
      start = r + 1;
    } else {
      break;
    }
  }
  for (int target_diam = start; target_diam <= diam; ++target_diam) {
    std::vector<int> witness;
    if (has_subset_of_diameter(d, result.subset_size, target_diam, &witness)) {
      result.lower = result.upper =
          static_cast<double>(target_diam) / static_cast<double>(diam);
      result.witness = std::move(witness);
      result.witness_diameter = target_diam;
      return result;
    }
  }
  throw std::logic_error("rho_exact: no feasible subset found");
}

RhoResult rho_lower_ballcount(const Multigraph& g, const DistanceMatrix& d,
                              double eps) {
  const int n = g.vertex_count();
  RhoResult result;
  result.eps = eps;
  result.method = RhoMethod::BallcountLower;
  result.subset_size = rho_subset_size(eps, n);
  result.upper = 1.0;
  if (result.subset_size <= 1) {
    result.degenerate = true;
    result.lower = 0.0;
    return result;
  }
  const int diam = diameter(d);
  if (diam < 1) {
    throw std::invalid_argument("rho_lower_ballcount: needs diameter >= 1");
  }
  int r_star = -1;
  for (int r = 0; r <= diam; ++r) {
    if (max_ball_size(d, r) < result.subset_size) {
      r_star = r;
    } else {
      break;
    }
  }
  result.lower = static_cast<double>(r_star + 1) / static_cast<double>(diam);
  return result;
}

RhoResult rho_upper_witness(const Multigraph& g, const DistanceMatrix& d,
                            double eps) {
  const int n = g.vertex_count();
  RhoResult result;
  result.eps = eps;
  result.method = RhoMethod::WitnessUpper;
  result.subset_size = rho_subset_size(eps, n);
  if (result.subset_size <= 1) {
    result.degenerate = true;
    result.lower = result.upper = 0.0;
    result.witness = {0};
    result.witness_diameter = 0;
    return result;
  }
  const int diam = diameter(d);

  int best_diam = diam + 1;
  std::vector<int> best_ball;
  std::vector<int> members;
  for (int x = 0; x < n; ++x) {
    // Smallest radius whose ball reaches the cardinality threshold.
    std::vector<int> count(diam + 1, 0);
    for (int y = 0; y < n; ++y) ++count[d(x, y)];
    int radius = 0, seen = 0;
    for (int r = 0; r <= diam; ++r) {
      seen += count[r];
      if (seen >= result.subset_size) {
        radius = r;
        break;
      }
    }
    if (radius >= best_diam) continue;  // ball diameter is at least the radius

    members.clear();
    for (int y = 0; y < n; ++y) {
      if (d(x, y) <= radius) members.push_back(y);
    }
    int ball_diam = 0;
    for (size_t i = 0; i < members.size() && ball_diam < best_diam; ++i) {
      for (size_t j = i + 1; j < members.size(); ++j) {
        ball_diam = std::max(ball_diam, d(members[i], members[j]));
      }
    }
    if (ball_diam < best_diam) {
      best_diam = ball_diam;
      best_ball = members;
    }
  }

  result.lower = 0.0;
  result.upper = static_cast<double>(best_diam) / static_cast<double>(diam);
  result.witness = std::move(best_ball);
  result.witness_diameter = best_diam;
  return result;
}

InequalityReport check_prop6(const Multigraph& g, const DistanceMatrix& d) {
  if (!g.transitive()) {
    throw std::runtime_error(
        "check_prop6: vertex-transitivity flag is not set (never inferred)");
  }
  if (g.vertex_count() < 3) {
    throw std::invalid_argument("check_prop6: needs at least 3 vertices");
  }

  InequalityReport report;
  report.inequality = "prop6";
  report.params = "eps=0.5";
  report.lhs = 0.25;

  const int diam = diameter(d);
  if (g.vertex_count() <= kRhoExactCap) {
    report.rhs = rho_exact(g, d, 0.5).lower;
    report.caveat = "rho exact";
  } else if (diam <= 2) {
    // Any admissible subset has >= 2 vertices, hence diameter >= 1.
    report.rhs = 1.0 / diam;
    report.caveat = "small-diameter direct bound";
  } else {
    report.rhs = rho_lower_ballcount(g, d, 0.5).lower;
    report.caveat = "rho lower bound";
  }
  report.slack = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + kInequalityTolerance;
  return report;
}

}  // namespace graphgap
