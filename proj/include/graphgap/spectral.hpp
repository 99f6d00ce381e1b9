#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <optional>

#include "graphgap/multigraph.hpp"

namespace graphgap {

/// Normalization of the variational quotient. OrderedPairs sums the edge
/// energy over ordered vertex pairs (each proper edge twice); PerEdge counts
/// each edge once and equals exactly half the OrderedPairs value. At p = 2
/// the PerEdge value is the second-smallest eigenvalue of the weighted
/// Laplacian matrix.
enum class Convention { OrderedPairs, PerEdge };

const char* convention_name(Convention c);

enum class SpectralMethod { Dense, Iterative, Variational };

struct SpectralResult {
  double lambda = 0.0;
  Convention convention = Convention::PerEdge;
  double p = 2.0;
  Eigen::VectorXd minimizer;
  /// Relative eigen-equation residual; absent for p = 1, where the quotient
  /// value is still defined but the eigen-equation interpretation is not.
  std::optional<double> residual;
  SpectralMethod method = SpectralMethod::Dense;
};

/// Weighted Laplacian L = D - W over proper edges; loops carry no energy and
/// do not appear.
Eigen::MatrixXd laplacian_matrix(const Multigraph& g);
Eigen::SparseMatrix<double> laplacian_sparse(const Multigraph& g);

/// Adjacency matrix with omega as weights; each loop adds 1 to the diagonal.
Eigen::MatrixXd adjacency_matrix(const Multigraph& g);

/// (Delta_p f)(x) = sum_{y ~ x} (f(x) - f(y))^[p] omega(x, y), where
/// a^[p] = |a|^(p-1) sign(a). Nonlinear for p != 2; loops contribute zero.
Eigen::VectorXd apply_p_laplacian(const Multigraph& g,
                                  const Eigen::VectorXd& f, double p);

/// The alpha minimizing sum_x |f(x) - alpha|^p: the mean for p = 2, a median
/// for p = 1, otherwise located by bisecting the (monotone) derivative.
double optimal_shift(const Eigen::VectorXd& f, double p);

/// sum_x sum_{y~x} |f(x)-f(y)|^p omega(x,y), halved for PerEdge.
double dirichlet_energy(const Multigraph& g, const Eigen::VectorXd& f,
                        double p, Convention convention);

/// Quotient energy(f) / inf_alpha sum |f - alpha|^p for non-constant f.
double gap_quotient(const Multigraph& g, const Eigen::VectorXd& f, double p,
                    Convention convention);

/// First positive Laplacian eigenvalue at p = 2, exact linear algebra.
/// Dense solve up to kDenseSpectralCap vertices, otherwise deflated inverse
/// iteration with conjugate-gradient solves. The minimizer is the
/// corresponding eigenvector.
SpectralResult lambda1_p2_exact(const Multigraph& g, Convention convention);

/// Iterative path regardless of size (exposed for cross-checking).
SpectralResult lambda1_p2_iterative(const Multigraph& g, Convention convention,
                                    std::uint64_t seed = 0);

inline constexpr int kDenseSpectralCap = 3000;

/// Upper estimate of the first positive p-Laplacian eigenvalue: projected
/// subgradient descent on the quotient with the inner shift re-optimized at
/// every step. Restart 0 warm-starts from the p = 2 eigenvector when
/// available; the remaining restarts use seeded random sign vectors. The
/// reported value is the best quotient seen; deterministic given the seed.
SpectralResult lambda1_variational(const Multigraph& g, double p,
                                   Convention convention, int restarts = 16,
                                   std::uint64_t seed = 0,
                                   int max_iterations = 2000);

/// || Delta_p f - lambda |f|^(p-2) f ||_2 / || |f|^(p-2) f ||_2 for p > 1,
/// with lambda in the PerEdge convention. Zero-homogeneous in f.
double eigen_residual(const Multigraph& g, const Eigen::VectorXd& f,
                      double lambda_per_edge, double p);

struct AlphaResult {
  double alpha = 0.0;         // |alpha_2| in the modulus ordering
  int k = 0;                  // common degree
  bool bipartite_degenerate = false;  // alpha == k, diameter bound undefined
};

/// Second-largest adjacency eigenvalue modulus of a regular graph.
AlphaResult adjacency_alpha(const Multigraph& g);

}  // namespace graphgap
