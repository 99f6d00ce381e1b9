#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace graphgap {

/// Dense all-pairs shortest-path matrix. Entry (x, y) is the combinatorial
/// distance: loops and edge multiplicities never shorten a path.
using DistanceMatrix = Eigen::MatrixXi;

struct Edge {
  int u = 0;
  int v = 0;
  int mult = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite undirected multigraph with loops. Edge multiplicities realize
/// omega(x, y); a loop [u, u] contributes omega(u, u). Immutable after
/// construction; all free functions below are pure.
class Multigraph {
 public:
  /// Builds a graph from an edge list. Parallel entries for the same vertex
  /// pair are merged by summing multiplicities; the stored edge list is
  /// canonical (u <= v, sorted lexicographically).
  Multigraph(int vertex_count, std::vector<Edge> edges,
             std::vector<std::string> labels = {}, bool transitive = false);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool transitive() const { return transitive_; }

  /// Neighbor list of v as (vertex, multiplicity) pairs; a loop at v appears
  /// once as (v, omega(v, v)).
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adjacency_[v];
  }

  int omega(int x, int y) const;

  /// Degree of v with each loop counted once: sum over y of omega(v, y).
  int degree(int v) const { return degree_[v]; }

  std::string vertex_name(int v) const;

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  bool transitive_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  std::vector<int> degree_;
};

/// Largest vertex count for which a dense DistanceMatrix is materialized.
inline constexpr int kDenseDistanceCap = 4096;

/// Distances from one source vertex; entries are -1 for unreachable vertices.
std::vector<int> bfs_distances(const Multigraph& g, int source);

bool is_connected(const Multigraph& g);

/// BFS-exact all-pairs distances. Throws if the graph is disconnected
/// (naming two unreachable vertices) or larger than kDenseDistanceCap.
DistanceMatrix all_pairs_distances(const Multigraph& g);

/// Diameter as the maximum entry of a distance matrix; 0 iff single vertex.
int diameter(const DistanceMatrix& d);

/// Diameter without materializing the full matrix (one BFS per source).
/// Throws on disconnected input.
int diameter(const Multigraph& g);

/// k = max over x of sum_y omega(x, y), loops counted once.
int max_degree(const Multigraph& g);

/// True when every vertex has the same degree (loop counted once).
bool is_regular(const Multigraph& g);

}  // namespace graphgap
