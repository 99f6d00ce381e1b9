#include "graphgap/inequalities.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "graphgap/distortion.hpp"
#include "graphgap/families.hpp"
#include "graphgap/random.hpp"
#include "graphgap/volume.hpp"

namespace graphgap {

Family family_from_name(const std::string& name) {
  if (name == "hanoi") return Family::Hanoi;
  if (name == "grigorchuk") return Family::Grigorchuk;
  if (name == "lamplighter") return Family::Lamplighter;
  if (name == "ballpath" || name == "ball_path") return Family::BallPath;
  if (name == "sierpinski") return Family::Sierpinski;
  if (name == "cycle") return Family::Cycle;
  if (name == "path") return Family::Path;
  if (name == "complete") return Family::Complete;
  if (name == "hypercube") return Family::Hypercube;
  throw std::invalid_argument("unknown family: " + name);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Hanoi: return "hanoi";
    case Family::Grigorchuk: return "grigorchuk";
    case Family::Lamplighter: return "lamplighter";
    case Family::BallPath: return "ballpath";
    case Family::Sierpinski: return "sierpinski";
    case Family::Cycle: return "cycle";
    case Family::Path: return "path";
    case Family::Complete: return "complete";
    case Family::Hypercube: return "hypercube";
  }
  return "?";
}

std::pair<int, int> family_level_range(Family f) {
  switch (f) {
    case Family::Hanoi: return {1, 8};
    case Family::Grigorchuk: return {1, 12};
    case Family::Lamplighter: return {2, 10};
    case Family::BallPath: return {1, 10};
    case Family::Sierpinski: return {1, 8};
    case Family::Cycle: return {3, 100000};
    case Family::Path: return {1, 100000};
    case Family::Complete: return {1, 3000};
    case Family::Hypercube: return {1, 14};
  }
  return {1, 1};
}

Multigraph make_family_graph(Family f, int level) {
  switch (f) {
    case Family::Hanoi: return hanoi_graph(level);
    case Family::Grigorchuk: return grigorchuk_graph(level);
    case Family::Lamplighter: return lamplighter_graph(level);
    case Family::BallPath: return ball_path_graph(level);
    case Family::Sierpinski: return sierpinski_graph(level);
    case Family::Cycle: return standard_graph(StandardKind::Cycle, level);
    case Family::Path: return standard_graph(StandardKind::Path, level);
    case Family::Complete: return standard_graph(StandardKind::Complete, level);
    case Family::Hypercube:
      return standard_graph(StandardKind::Hypercube, level);
  }
  throw std::logic_error("unreachable");
}

InequalityReport theorem3_check(const std::string& graph_id, double p,
                                double eps, double lambda_ordered_pairs,
                                bool lambda_exact, double rho,
                                double distortion_ub, int delta, int k) {
  if (rho <= 0.0) {
    throw std::runtime_error(
        "theorem3_check: rho = 0 (degenerate subset threshold)");
  }
  if (delta < 1) throw std::invalid_argument("theorem3_check: delta >= 1");

  GapBoundConstants constants{static_cast<double>(k), eps, rho, p};
  InequalityReport report;
  report.inequality = "thm3";
  report.graph = graph_id;
  {
    std::ostringstream params;
    params << "p=" << p << ",eps=" << eps << ",rho=" << rho << ",k=" << k
           << ",delta=" << delta << ",L_f=" << distortion_ub
           << ",C=" << constants.value();
    report.params = params.str();
  }
  report.lhs = lambda_ordered_pairs;
  report.rhs = constants.value() * std::pow(distortion_ub / delta, p);
  report.slack = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + kInequalityTolerance;
  if (!lambda_exact) {
    report.caveat = "lambda estimate is upper-only; reported, not asserted";
  }
  return report;
}

InequalityReport eq6_check(const std::string& graph_id, int delta, int k,
                           double lambda_per_edge, int vertex_count) {
  InequalityReport report;
  report.inequality = "eq6";
  report.graph = graph_id;
  report.lhs = delta;
  report.rhs = 2.0 * std::sqrt(2.0 * k / lambda_per_edge) *
               std::log2(static_cast<double>(vertex_count));
  double rhs_ordered = 2.0 * std::sqrt(2.0 * k / (2.0 * lambda_per_edge)) *
                       std::log2(static_cast<double>(vertex_count));
  {
    std::ostringstream params;
    params << "k=" << k << ",lambda_per_edge=" << lambda_per_edge
           << ",V=" << vertex_count << ",rhs_ordered_pairs=" << rhs_ordered;
    report.params = params.str();
  }
  report.slack = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + kInequalityTolerance;
  return report;
}

InequalityReport eq8_check(const std::string& graph_id, int delta,
                           int vertex_count, const AlphaResult& alpha) {
  if (alpha.bipartite_degenerate) {
    throw std::runtime_error("eq8_check: bipartite-degenerate (alpha = k), "
                             "the diameter bound is undefined");
  }
  if (vertex_count < 3) {
    // log(|V| - 1) vanishes and the bound degenerates.
    throw std::runtime_error("eq8_check: needs at least 3 vertices");
  }
  InequalityReport report;
  report.inequality = "eq8";
  report.graph = graph_id;
  report.lhs = delta;
  if (alpha.alpha < 1e-12) {
    // log(k/alpha) -> infinity; the ceiling of the vanishing ratio is 1.
    report.rhs = 1.0;
  } else {
    report.rhs = std::ceil(std::log(static_cast<double>(vertex_count - 1)) /
                           std::log(alpha.k / alpha.alpha));
  }
  {
    std::ostringstream params;
    params << "k=" << alpha.k << ",alpha=" << alpha.alpha
           << ",V=" << vertex_count;
    report.params = params.str();
  }
  report.slack = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + kInequalityTolerance;
  return report;
}

DecayFit decay_fit(const std::vector<std::pair<int, double>>& levels_lambdas) {
  if (levels_lambdas.size() < 3) {
    throw std::invalid_argument("decay_fit: need at least 3 rows");
  }
  for (const auto& [n, lambda] : levels_lambdas) {
    (void)n;
    if (!(lambda > 0.0)) {
      throw std::invalid_argument("decay_fit: lambda values must be positive");
    }
  }
  DecayFit fit;
  for (size_t i = 0; i + 1 < levels_lambdas.size(); ++i) {
    fit.ratios.push_back(levels_lambdas[i + 1].second /
                         levels_lambdas[i].second);
  }
  // Least squares of log lambda against the level.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(levels_lambdas.size());
  for (const auto& [n, lambda] : levels_lambdas) {
    double x = n, y = std::log(lambda);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  fit.fitted_base = std::exp(slope);
  return fit;
}

FamilySweepRow sweep_row(const SweepConfig& config, int level) {
  FamilySweepRow row;
  row.family = family_name(config.family);
  row.n = level;

  Multigraph g = make_family_graph(config.family, level);
  row.vertex_count = g.vertex_count();
  row.k = max_degree(g);

  const bool dense_ok = g.vertex_count() <= kDenseDistanceCap;
  DistanceMatrix d;
  if (dense_ok) {
    d = all_pairs_distances(g);
    row.delta = diameter(d);
  } else {
    row.delta = diameter(g);
  }

  const std::uint64_t row_seed = mix_seed(config.seed, level);
  SpectralResult p2 = lambda1_p2_exact(g, Convention::PerEdge);
  row.lambda_p2_per_edge = p2.lambda;
  row.lambda_p2_ordered = 2.0 * p2.lambda;

  for (double p : config.p_list) {
    if (p == 2.0) continue;
    SpectralResult est = lambda1_variational(g, p, Convention::OrderedPairs,
                                             config.restarts, row_seed);
    row.lambda_p_ordered.push_back({p, est.lambda});
  }

  if (dense_ok) {
    for (double eps : config.eps_list) {
      FamilySweepRow::RhoEntry entry;
      entry.eps = eps;
      if (g.vertex_count() <= kRhoExactCap) {
        RhoResult rho = rho_exact(g, d, eps);
        entry.value = rho.lower;
        entry.exact = true;
        entry.degenerate = rho.degenerate;
      } else {
        RhoResult rho = rho_lower_ballcount(g, d, eps);
        entry.value = rho.lower;
        entry.exact = false;
        entry.degenerate = rho.degenerate;
      }
      row.rho.push_back(entry);
    }

    if (config.family == Family::Hanoi && level <= 6) {
      Embedding lattice = pascal_planar_embedding(level, 2.0);
      row.dist_ub_lattice = realized_distortion(d, lattice).realized;
    }
    if (g.vertex_count() <= config.bourgain_vertex_cap) {
      Embedding emb = bourgain_embedding(g, d, 2.0, row_seed);
      row.dist_ub_bourgain = realized_distortion(d, emb).realized;
    }

    double best_lb = -1.0;
    for (const auto& entry : row.rho) {
      if (entry.degenerate || entry.value <= 0.0) continue;
      best_lb = std::max(
          best_lb, distortion_lower_bound(row.lambda_p2_ordered, row.delta,
                                          entry.value, row.k, entry.eps, 2.0));
    }
    if (best_lb >= 0.0) row.dist_lb = best_lb;

    std::optional<double> dist_ub;
    if (row.dist_ub_lattice) dist_ub = *row.dist_ub_lattice;
    if (row.dist_ub_bourgain) {
      dist_ub = dist_ub ? std::min(*dist_ub, *row.dist_ub_bourgain)
                        : *row.dist_ub_bourgain;
    }
    if (dist_ub) {
      int verdict = -1;
      for (const auto& entry : row.rho) {
        if (entry.degenerate || entry.value <= 0.0) continue;
        InequalityReport check = theorem3_check(
            row.family + "-" + std::to_string(level), 2.0, entry.eps,
            row.lambda_p2_ordered, /*lambda_exact=*/true, entry.value,
            *dist_ub, row.delta, row.k);
        if (verdict != 0) verdict = check.pass ? 1 : 0;
      }
      row.thm3_pass = verdict;
    }
  }

  row.eq6_pass = eq6_check(row.family, row.delta, row.k, row.lambda_p2_per_edge,
                           row.vertex_count)
                     .pass
                     ? 1
                     : 0;

  if (is_regular(g) && g.vertex_count() >= 3 &&
      g.vertex_count() <= kDenseSpectralCap) {
    AlphaResult alpha = adjacency_alpha(g);
    if (alpha.bipartite_degenerate) {
      row.eq8_pass = -1;
    } else {
      row.eq8_pass =
          eq8_check(row.family, row.delta, row.vertex_count, alpha).pass ? 1
                                                                         : 0;
    }
  }
  return row;
}

SweepResult family_sweep(const SweepConfig& config) {
  auto [lo, hi] = family_level_range(config.family);
  if (config.level_min < lo || config.level_max > hi ||
      config.level_min > config.level_max) {
    throw std::invalid_argument(
        std::string("family_sweep: levels out of range for ") +
        family_name(config.family) + " (allowed " + std::to_string(lo) + ".." +
        std::to_string(hi) + ")");
  }

  const int count = config.level_max - config.level_min + 1;
  std::vector<FamilySweepRow> rows(count);

  int pool = 1;
  if (const char* env = std::getenv("SDL_THREADS")) {
    pool = std::max(1, std::min(std::atoi(env), count));
  }
  if (pool == 1) {
    for (int i = 0; i < count; ++i) {
      rows[i] = sweep_row(config, config.level_min + i);
    }
  } else {
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          rows[i] = sweep_row(config, config.level_min + i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }

  SweepResult result;
  result.rows = std::move(rows);

  // Shape of the realized randomized-embedding distortion against log2 |V|.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& row : result.rows) {
    if (!row.dist_ub_bourgain) continue;
    double x = std::log2(static_cast<double>(row.vertex_count));
    double y = *row.dist_ub_bourgain;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2 && m * sxx - sx * sx > 0) {
    result.bourgain_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return result;
}

std::string format_report_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

namespace {

std::string pass_cell(int verdict) {
  if (verdict < 0) return "na";
  return verdict ? "1" : "0";
}

std::string p_tag(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", p);
  return buffer;
}

}  // namespace

std::string sweep_to_csv(const SweepResult& result, const SweepConfig& config) {
  std::ostringstream out;
  out << "family,n,V,delta,k,lambda_p2_op,lambda_p2_eq3";
  for (double p : config.p_list) {
    if (p == 2.0) continue;
    out << ",lambda_p" << p_tag(p) << "_eq3";
  }
  for (double eps : config.eps_list) {
    out << ",rho_eps" << p_tag(eps);
  }
  out << ",rho_method,dist_lb,dist_ub_lattice,dist_ub_bourgain,"
         "thm3_pass,eq6_pass,eq8_pass\n";

  for (const FamilySweepRow& row : result.rows) {
    out << row.family << ',' << row.n << ',' << row.vertex_count << ','
        << row.delta << ',' << row.k << ','
        << format_report_double(row.lambda_p2_per_edge) << ','
        << format_report_double(row.lambda_p2_ordered);
    for (double p : config.p_list) {
      if (p == 2.0) continue;
      std::string cell = "na";
      for (const auto& [pp, value] : row.lambda_p_ordered) {
        if (pp == p) cell = format_report_double(value);
      }
      out << ',' << cell;
    }
    std::string methods;
    for (double eps : config.eps_list) {
      std::string cell = "na";
      for (const auto& entry : row.rho) {
        if (entry.eps == eps) {
          cell = format_report_double(entry.value);
          if (!methods.empty()) methods += ';';
          methods += entry.degenerate ? "degenerate"
                     : entry.exact    ? "exact"
                                      : "ballcount_lower";
        }
      }
      out << ',' << cell;
    }
    if (methods.empty()) methods = "na";
    out << ',' << methods;
    out << ',' << (row.dist_lb ? format_report_double(*row.dist_lb) : "na");
    out << ','
        << (row.dist_ub_lattice ? format_report_double(*row.dist_ub_lattice)
                                : "na");
    out << ','
        << (row.dist_ub_bourgain ? format_report_double(*row.dist_ub_bourgain)
                                 : "na");
    out << ',' << pass_cell(row.thm3_pass) << ',' << pass_cell(row.eq6_pass)
        << ',' << pass_cell(row.eq8_pass) << '\n';
  }
  return out.str();
}

std::string sweep_to_json(const SweepResult& result,
                          const SweepConfig& config) {
  nlohmann::json j;
  j["family"] = family_name(config.family);
  j["seed"] = config.seed;
  if (result.bourgain_slope) {
    j["bourgain_distortion_slope_vs_log2V"] = *result.bourgain_slope;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const FamilySweepRow& row : result.rows) {
    nlohmann::json r;
    r["n"] = row.n;
    r["V"] = row.vertex_count;
    r["delta"] = row.delta;
    r["k"] = row.k;
    r["lambda_p2_op"] = row.lambda_p2_per_edge;
    r["lambda_p2_eq3"] = row.lambda_p2_ordered;
    for (const auto& [p, value] : row.lambda_p_ordered) {
      r["lambda_p" + p_tag(p) + "_eq3"] = value;
    }
    for (const auto& entry : row.rho) {
      nlohmann::json rho;
      rho["eps"] = entry.eps;
      rho["value"] = entry.value;
      rho["method"] = entry.degenerate ? "degenerate"
                      : entry.exact    ? "exact"
                                       : "ballcount_lower";
      r["rho"].push_back(rho);
    }
    if (row.dist_lb) r["dist_lb"] = *row.dist_lb;
    if (row.dist_ub_lattice) r["dist_ub_lattice"] = *row.dist_ub_lattice;
    if (row.dist_ub_bourgain) r["dist_ub_bourgain"] = *row.dist_ub_bourgain;
    r["thm3_pass"] = pass_cell(row.thm3_pass);
    r["eq6_pass"] = pass_cell(row.eq6_pass);
    r["eq8_pass"] = pass_cell(row.eq8_pass);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace graphgap
