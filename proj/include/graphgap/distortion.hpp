#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphgap/multigraph.hpp"

namespace graphgap {

/// A map from vertices to R^dim, evaluated in the p-norm.
struct Embedding {
  Eigen::MatrixXd coords;  // one row per vertex
  double p = 2.0;

  int dimension() const { return static_cast<int>(coords.cols()); }
};

struct DistortionReport {
  double expansion = 0.0;    // max ||f(x)-f(y)||_p / d(x,y)
  double contraction = 0.0;  // max d(x,y) / ||f(x)-f(y)||_p
  double realized = 0.0;     // expansion * contraction; scale invariant
  std::optional<double> lower_bound;
  std::string method;
  std::uint64_t seed = 0;
};

/// Exact max ratios over all vertex pairs. Throws "non-injective" (naming
/// the pair) when two vertices share coordinates.
DistortionReport realized_distortion(const DistanceMatrix& d,
                                     const Embedding& e);

/// Randomized Frechet-style embedding: coordinates x -> d(x, A) for random
/// subsets A drawn at geometric densities 2^-i, i = 1..floor(log2 |V|),
/// subset_factor * log2 |V| subsets per level, normalized by m^(1/p) so the
/// map is 1-Lipschitz. Empty subsets contribute a constant coordinate. If
/// the raw map collides, deterministic d(., {v}) coordinates are appended
/// until it is injective. Deterministic per seed.
Embedding bourgain_embedding(const Multigraph& g, const DistanceMatrix& d,
                             double p, std::uint64_t seed,
                             int subset_factor = 8);

/// Axial coordinates on the triangular lattice: the Cayley graph of Z^2 with
/// generators {(1,0), (-1,0), (0,1), (0,-1), (-1,1), (1,-1)}.
struct AxialCoord {
  long long x = 0;
  long long y = 0;

  friend bool operator==(const AxialCoord&, const AxialCoord&) = default;
};

/// Word metric: (|dx| + |dy| + |dx+dy|) / 2.
long long lattice_distance(AxialCoord u, AxialCoord v);

/// Unit-triangle drawing of the lattice: (x + y/2, y sqrt(3)/2). All six
/// generator steps have Euclidean length 1.
Eigen::Vector2d axial_to_planar(AxialCoord u);

/// Corner-anchored recursive layout of the level-n Hanoi graph on the
/// triangular lattice, indexed like hanoi_graph(n). The corner words
/// 0^n, 1^n, 2^n sit at (0,0), (s,0), (0,s) with s = 2^n - 1; every proper
/// edge maps to a unit lattice step and every loop to distance 0.
std::vector<AxialCoord> pascal_lattice_embedding(int n);  // 1 <= n <= 6

/// The lattice layout drawn in the plane and rescaled by the longest edge
/// image so the p-norm expansion is exactly 1.
Embedding pascal_planar_embedding(int n, double p);

/// Distortion lower bound assembled from exact quantities:
///   (1/2) * rho_eps * delta * lambda^(1/p) * ((1-eps)/k)^(1/p),
/// valid whenever lambda is a lower estimate of the ordered-pairs gap.
/// Throws when rho_eps = 0 (the bound is vacuous).
double distortion_lower_bound(double lambda_ordered_pairs_lower, int delta,
                              double rho_eps, int k, double eps, double p);

struct LocalOptResult {
  DistortionReport report;
  Embedding embedding;
};

/// Upper-bound search: gradient descent on a smooth surrogate (sum of
/// squared log ratios) from MDS, projected-Bourgain and random starts,
/// keeping the best realized distortion seen. Deterministic per seed.
LocalOptResult local_opt_distortion(const Multigraph& g,
                                    const DistanceMatrix& d, double p, int dim,
                                    std::uint64_t seed, int iterations = 300);

struct QuasiIsometryConstants {
  double L = 1.0;  // multiplicative constant
  double C = 0.0;  // additive constant at that L
  double K = 0.0;  // density of the image in the target
};

/// Constants for a map between finite metric spaces given as distance
/// matrices; image[i] is the target index of source point i. L is the exact
/// bi-Lipschitz constant over pairs, C the residual additive slack at that L
/// (zero for injective maps), K the target's covering radius by the image.
QuasiIsometryConstants quasi_isometry_constants(const Eigen::MatrixXd& dx,
                                                const Eigen::MatrixXd& dy,
                                                const std::vector<int>& image);

std::string embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const std::string& text);
void save_embedding(const Embedding& e, const std::string& path);
Embedding load_embedding(const std::string& path);

}  // namespace graphgap
