#pragma once

#include <vector>

#include "graphgap/multigraph.hpp"
#include "graphgap/report.hpp"

namespace graphgap {

enum class RhoMethod { Exact, BallcountLower, WitnessUpper };

const char* rho_method_name(RhoMethod m);

/// Value (or bracket) of the volume distribution
///   rho_eps = min { diam(A)/diam(X) : |A| >= eps |X| }.
/// For Exact, lower == upper; witness is a subset attaining the exact value
/// or the upper bound. Degenerate marks ceil(eps |V|) <= 1, where singletons
/// force the value 0.
struct RhoResult {
  double eps = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  std::vector<int> witness;  // sorted vertex indices; empty for pure bounds
  RhoMethod method = RhoMethod::Exact;
  bool degenerate = false;
  int subset_size = 0;       // the cardinality threshold ceil(eps |V|)
  int witness_diameter = -1; // diam(witness) when a witness is present
};

/// Cardinality threshold ceil(eps * n), robust to floating error.
int rho_subset_size(double eps, int n);

inline constexpr int kRhoExactCap = 40;

/// Exact minimum by thresholding: the smallest D such that some subset of
/// the required size has pairwise distances <= D, found by a max-clique
/// search on the distance-threshold graph. Throws above kRhoExactCap.
RhoResult rho_exact(const Multigraph& g, const DistanceMatrix& d, double eps);

/// Ball-counting lower bound: if every radius-r ball holds fewer than the
/// required number of vertices, any admissible subset has diameter > r.
RhoResult rho_lower_ballcount(const Multigraph& g, const DistanceMatrix& d,
                              double eps);

/// Upper bound from the best metric-ball witness.
RhoResult rho_upper_witness(const Multigraph& g, const DistanceMatrix& d,
                            double eps);

/// rho_{1/2} >= 1/4 for connected vertex-transitive graphs on >= 3 vertices.
/// Refuses when the transitivity flag is not set. Uses the exact value below
/// kRhoExactCap vertices and the ball-counting lower bound above.
InequalityReport check_prop6(const Multigraph& g, const DistanceMatrix& d);

}  // namespace graphgap
