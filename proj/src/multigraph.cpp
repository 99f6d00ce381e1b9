#include "graphgap/multigraph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace graphgap {

Multigraph::Multigraph(int vertex_count, std::vector<Edge> edges,
                       std::vector<std::string> labels, bool transitive)
    : vertex_count_(vertex_count),
      labels_(std::move(labels)),
      transitive_(transitive) {
  if (vertex_count_ <= 0) {
    throw std::invalid_argument("Multigraph: vertex_count must be positive");
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != vertex_count_) {
    throw std::invalid_argument(
        "Multigraph: labels must be empty or one per vertex");
  }

  std::map<std::pair<int, int>, int> merged;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_) {
      throw std::invalid_argument("Multigraph: edge endpoint out of range");
    }
    if (e.mult <= 0) {
      throw std::invalid_argument("Multigraph: edge multiplicity must be >= 1");
    }
    auto key = std::minmax(e.u, e.v);
    merged[{key.first, key.second}] += e.mult;
  }

  edges_.reserve(merged.size());
  adjacency_.resize(vertex_count_);
  degree_.assign(vertex_count_, 0);
  for (const auto& [pair, mult] : merged) {
    edges_.push_back({pair.first, pair.second, mult});
    adjacency_[pair.first].push_back({pair.second, mult});
    degree_[pair.first] += mult;
    if (pair.first != pair.second) {
      adjacency_[pair.second].push_back({pair.first, mult});
      degree_[pair.second] += mult;
    }
  }
}

int Multigraph::omega(int x, int y) const {
  for (const auto& [w, m] : adjacency_[x]) {
    if (w == y) return m;
  }
  return 0;
}

std::string Multigraph::vertex_name(int v) const {
  if (!labels_.empty() && !labels_[v].empty()) {
    return labels_[v] + " (#" + std::to_string(v) + ")";
  }
  return "#" + std::to_string(v);
}

std::vector<int> bfs_distances(const Multigraph& g, int source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop();
    for (const auto& [y, mult] : g.neighbors(x)) {
      (void)mult;
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push(y);
      }
    }
  }
  return dist;
}

bool is_connected(const Multigraph& g) {
  auto dist = bfs_distances(g, 0);
  return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

namespace {

[[noreturn]] void throw_disconnected(const Multigraph& g, int source,
                                     const std::vector<int>& dist) {
  int unreachable = -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] < 0) {
      unreachable = v;
      break;
    }
  }
  throw std::runtime_error("disconnected graph: no path from vertex " +
                           g.vertex_name(source) + " to vertex " +
                           g.vertex_name(unreachable));
}

}  // namespace

DistanceMatrix all_pairs_distances(const Multigraph& g) {
  const int n = g.vertex_count();
  if (n > kDenseDistanceCap) {
    throw std::runtime_error(
        "all_pairs_distances: graph exceeds the dense cap of " +
        std::to_string(kDenseDistanceCap) +
        " vertices; use bfs_distances per source");
  }
  DistanceMatrix d(n, n);
  for (int s = 0; s < n; ++s) {
    auto dist = bfs_distances(g, s);
    for (int v = 0; v < n; ++v) {
      if (dist[v] < 0) throw_disconnected(g, s, dist);
      d(s, v) = dist[v];
    }
  }
  return d;
}

int diameter(const DistanceMatrix& d) { return d.maxCoeff(); }

int diameter(const Multigraph& g) {
  int best = 0;
  for (int s = 0; s < g.vertex_count(); ++s) {
    auto dist = bfs_distances(g, s);
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (dist[v] < 0) throw_disconnected(g, s, dist);
      best = std::max(best, dist[v]);
    }
  }
  return best;
}

int max_degree(const Multigraph& g) {
  int k = 0;
  for (int v = 0; v < g.vertex_count(); ++v) k = std::max(k, g.degree(v));
  return k;
}

bool is_regular(const Multigraph& g) {
  for (int v = 1; v < g.vertex_count(); ++v) {
    if (g.degree(v) != g.degree(0)) return false;
  }
  return true;
}

}  // namespace graphgap
