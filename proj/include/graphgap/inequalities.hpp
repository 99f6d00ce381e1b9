#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphgap/multigraph.hpp"
#include "graphgap/report.hpp"
#include "graphgap/spectral.hpp"

namespace graphgap {

enum class Family {
  Hanoi,
  Grigorchuk,
  Lamplighter,
  BallPath,
  Sierpinski,
  Cycle,
  Path,
  Complete,
  Hypercube,
};

Family family_from_name(const std::string& name);
const char* family_name(Family f);
std::pair<int, int> family_level_range(Family f);
Multigraph make_family_graph(Family f, int level);

/// Checks lambda <= C * (L_f / delta)^p with C = k/(1-eps) (2/rho)^p.
/// lambda is in the ordered-pairs normalization. Any realized distortion
/// only enlarges the right side and a rho lower bound only enlarges C, so
/// the check stays a valid necessary consequence; a non-exact lambda
/// (p != 2 upper estimate) is flagged in the caveat instead of asserted.
InequalityReport theorem3_check(const std::string& graph_id, double p,
                                double eps, double lambda_ordered_pairs,
                                bool lambda_exact, double rho,
                                double distortion_ub, int delta, int k);

/// Diameter bound delta <= 2 sqrt(2k / lambda) log2 |V| with lambda the
/// per-edge (matrix) eigenvalue.
InequalityReport eq6_check(const std::string& graph_id, int delta, int k,
                           double lambda_per_edge, int vertex_count);

/// Diameter bound delta <= ceil(log(|V|-1) / log(k/alpha)) for k-regular
/// graphs. Throws "bipartite-degenerate" when alpha = k.
InequalityReport eq8_check(const std::string& graph_id, int delta,
                           int vertex_count, const AlphaResult& alpha);

struct DecayFit {
  std::vector<double> ratios;  // successive lambda ratios
  double fitted_base = 0.0;    // exp of the least-squares slope of log lambda
};

DecayFit decay_fit(const std::vector<std::pair<int, double>>& levels_lambdas);

struct SweepConfig {
  Family family = Family::Hanoi;
  int level_min = 1;
  int level_max = 1;
  std::vector<double> p_list = {2.0};
  std::vector<double> eps_list = {0.5};
  std::uint64_t seed = 0;
  int restarts = 16;
  /// Largest graph for which the randomized embedding and its realized
  /// distortion are evaluated inside a sweep row.
  int bourgain_vertex_cap = 2000;
};

struct FamilySweepRow {
  std::string family;
  int n = 0;
  int vertex_count = 0;
  int delta = 0;
  int k = 0;
  double lambda_p2_per_edge = 0.0;
  double lambda_p2_ordered = 0.0;
  std::vector<std::pair<double, double>> lambda_p_ordered;  // p != 2
  struct RhoEntry {
    double eps = 0.0;
    double value = 0.0;  // exact value or lower bound
    bool exact = false;
    bool degenerate = false;
  };
  std::vector<RhoEntry> rho;
  std::optional<double> dist_lb;
  std::optional<double> dist_ub_lattice;
  std::optional<double> dist_ub_bourgain;
  int thm3_pass = -1;  // 1 pass, 0 fail, -1 not applicable
  int eq6_pass = -1;
  int eq8_pass = -1;
};

struct SweepResult {
  std::vector<FamilySweepRow> rows;
  /// Least-squares slope of the realized randomized-embedding distortion
  /// against log2 |V| (reported, never asserted).
  std::optional<double> bourgain_slope;
};

/// One row per level; deterministic given the config. Rows may be computed
/// by a worker pool capped by the SDL_THREADS environment variable and are
/// merged in level order.
SweepResult family_sweep(const SweepConfig& config);

FamilySweepRow sweep_row(const SweepConfig& config, int level);

std::string sweep_to_csv(const SweepResult& result, const SweepConfig& config);
std::string sweep_to_json(const SweepResult& result, const SweepConfig& config);

/// Fixed-precision float formatting used in reports (12 significant digits).
std::string format_report_double(double v);

}  // namespace graphgap
