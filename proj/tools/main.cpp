// Command-line front end: graph generation, single computations,
// inequality verification, and family sweeps with CSV/JSON reports.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphgap/distortion.hpp"
#include "graphgap/families.hpp"
#include "graphgap/graph_io.hpp"
#include "graphgap/inequalities.hpp"
#include "graphgap/multigraph.hpp"
#include "graphgap/spectral.hpp"
#include "graphgap/volume.hpp"

namespace {

using namespace graphgap;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAssertionFailed = 2;

struct GraphSource {
  std::string family;
  int level = -1;
  std::string graph_file;
  std::string spec_file;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--family", family, "built-in family name");
    cmd->add_option("--level", level, "family level");
    cmd->add_option("--graph", graph_file, "graph file (JSON)");
    cmd->add_option("--spec", spec_file, "wreath-recursion spec file");
  }

  bool is_hanoi() const { return family == "hanoi"; }

  Multigraph resolve() const {
    int sources = (!family.empty() ? 1 : 0) + (!graph_file.empty() ? 1 : 0) +
                  (!spec_file.empty() ? 1 : 0);
    if (sources != 1) {
      throw std::runtime_error(
          "exactly one graph source required: --family, --graph or --spec");
    }
    if (!graph_file.empty()) return load_graph(graph_file);
    if (!spec_file.empty()) {
      if (level < 1) throw std::runtime_error("--spec requires --level");
      return schreier_graph(parse_spec(read_file(spec_file)), level);
    }
    if (level < 0) throw std::runtime_error("--family requires --level");
    return make_family_graph(family_from_name(family), level);
  }
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    values.push_back(std::stod(item));
    pos = comma == std::string::npos ? text.size() : comma + 1;
  }
  if (values.empty()) throw std::runtime_error("empty list");
  return values;
}

std::pair<int, int> parse_level_range(const std::string& text) {
  size_t dots = text.find("..");
  if (dots == std::string::npos) {
    int level = std::stoi(text);
    return {level, level};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

Convention parse_convention(const std::string& name) {
  if (name == "eq3" || name == "ordered") return Convention::OrderedPairs;
  if (name == "op" || name == "operator" || name == "per_edge") {
    return Convention::PerEdge;
  }
  throw std::runtime_error("unknown convention: " + name);
}

json report_to_json(const InequalityReport& report) {
  json j;
  j["inequality"] = report.inequality;
  j["graph"] = report.graph;
  j["params"] = report.params;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["slack"] = report.slack;
  j["pass"] = report.pass;
  if (!report.caveat.empty()) j["caveat"] = report.caveat;
  return j;
}

json rho_to_json(const RhoResult& rho) {
  json j;
  j["eps"] = rho.eps;
  j["method"] = rho_method_name(rho.method);
  j["subset_size"] = rho.subset_size;
  if (rho.method == RhoMethod::Exact) {
    j["value"] = rho.lower;
  } else {
    j["lower"] = rho.lower;
    j["upper"] = rho.upper;
  }
  if (!rho.witness.empty()) {
    j["witness"] = rho.witness;
    j["witness_diameter"] = rho.witness_diameter;
  }
  j["degenerate"] = rho.degenerate;
  return j;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    atomic_write_file(path, content);
  }
}

std::string graph_id(const GraphSource& source) {
  if (!source.family.empty()) {
    return source.family + "-" + std::to_string(source.level);
  }
  if (!source.graph_file.empty()) return source.graph_file;
  return source.spec_file + "-" + std::to_string(source.level);
}

int run(int argc, char** argv) {
  CLI::App app{"graph families, spectral gaps, volume distribution and "
               "distortion bounds"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a graph file");
  GraphSource gen_source;
  gen_source.add_options(gen);
  std::string gen_out;
  gen->add_option("--out", gen_out, "output path")->required();

  // --- spectral ---
  auto* spectral = app.add_subcommand("spectral", "first positive eigenvalue");
  GraphSource spectral_source;
  spectral_source.add_options(spectral);
  double spectral_p = 2.0;
  std::string spectral_convention = "eq3";
  std::string spectral_method = "auto";
  int spectral_restarts = 16;
  std::uint64_t spectral_seed = 0;
  std::string spectral_out;
  spectral->add_option("--p", spectral_p, "exponent p >= 1");
  spectral->add_option("--convention", spectral_convention, "eq3 | op");
  spectral->add_option("--method", spectral_method,
                       "auto | dense | iterative | variational");
  spectral->add_option("--restarts", spectral_restarts, "variational restarts");
  spectral->add_option("--seed", spectral_seed, "random seed");
  spectral->add_option("--out", spectral_out, "result JSON path");

  // --- distortion ---
  auto* distortion = app.add_subcommand("distortion", "distortion bounds");
  GraphSource distortion_source;
  distortion_source.add_options(distortion);
  std::string distortion_method = "bourgain";
  double distortion_p = 2.0;
  int distortion_dim = 2;
  int distortion_iters = 300;
  int distortion_subsets = 8;
  std::uint64_t distortion_seed = 0;
  std::string distortion_out, distortion_embed_out;
  distortion->add_option("--method", distortion_method,
                         "bourgain | lattice | localopt");
  distortion->add_option("--p", distortion_p, "target norm exponent");
  distortion->add_option("--dim", distortion_dim, "dimension for localopt");
  distortion->add_option("--iters", distortion_iters, "localopt iterations");
  distortion->add_option("--subset-factor", distortion_subsets,
                         "subsets per density level, times log2 |V|");
  distortion->add_option("--seed", distortion_seed, "random seed");
  distortion->add_option("--out", distortion_out, "report JSON path");
  distortion->add_option("--embed-out", distortion_embed_out,
                         "also write the embedding file");

  // --- rho ---
  auto* rho_cmd = app.add_subcommand("rho", "volume distribution");
  GraphSource rho_source;
  rho_source.add_options(rho_cmd);
  std::string rho_eps_text = "0.5";
  std::string rho_method = "auto";
  std::string rho_out;
  rho_cmd->add_option("--eps", rho_eps_text, "comma-separated eps list");
  rho_cmd->add_option("--method", rho_method, "auto | exact | lower | upper");
  rho_cmd->add_option("--out", rho_out, "result JSON path");

  // --- verify ---
  auto* verify = app.add_subcommand("verify", "check one inequality");
  GraphSource verify_source;
  verify_source.add_options(verify);
  std::string verify_ineq;
  double verify_p = 2.0;
  std::string verify_eps_text = "0.5";
  std::uint64_t verify_seed = 0;
  std::string verify_out;
  verify->add_option("--ineq", verify_ineq, "thm3 | eq6 | eq8 | prop6")
      ->required();
  verify->add_option("--p", verify_p, "exponent for thm3");
  verify->add_option("--eps", verify_eps_text, "eps list for thm3");
  verify->add_option("--seed", verify_seed, "random seed");
  verify->add_option("--out", verify_out, "report JSON path");

  // --- sweep ---
  auto* sweep = app.add_subcommand("sweep", "full family table");
  std::string sweep_family;
  std::string sweep_levels;
  std::string sweep_p_text = "2";
  std::string sweep_eps_text = "0.5";
  std::uint64_t sweep_seed = 0;
  int sweep_restarts = 16;
  std::string sweep_out;
  std::string sweep_format = "csv";
  sweep->add_option("--family", sweep_family, "family name")->required();
  sweep->add_option("--levels", sweep_levels, "level range a..b")->required();
  sweep->add_option("--p", sweep_p_text, "comma-separated p list");
  sweep->add_option("--eps", sweep_eps_text, "comma-separated eps list");
  sweep->add_option("--seed", sweep_seed, "random seed");
  sweep->add_option("--restarts", sweep_restarts, "variational restarts");
  sweep->add_option("--out", sweep_out, "output path")->required();
  sweep->add_option("--format", sweep_format, "csv | json");

  // --- embed ---
  auto* embed = app.add_subcommand("embed", "write an embedding file");
  GraphSource embed_source;
  embed_source.add_options(embed);
  std::string embed_method = "bourgain";
  double embed_p = 2.0;
  int embed_dim = 2;
  int embed_iters = 300;
  int embed_subsets = 8;
  std::uint64_t embed_seed = 0;
  std::string embed_out;
  embed->add_option("--method", embed_method, "bourgain | lattice | localopt");
  embed->add_option("--p", embed_p, "target norm exponent");
  embed->add_option("--dim", embed_dim, "dimension for localopt");
  embed->add_option("--iters", embed_iters, "localopt iterations");
  embed->add_option("--subset-factor", embed_subsets,
                    "subsets per density level, times log2 |V|");
  embed->add_option("--seed", embed_seed, "random seed");
  embed->add_option("--out", embed_out, "embedding file path")->required();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    Multigraph g = gen_source.resolve();
    save_graph(g, gen_out);
    std::cout << "wrote " << gen_out << " (" << g.vertex_count()
              << " vertices, " << g.edges().size() << " edge records)\n";
    return kExitOk;
  }

  if (spectral->parsed()) {
    Multigraph g = spectral_source.resolve();
    Convention convention = parse_convention(spectral_convention);
    SpectralResult result;
    if (spectral_method == "dense" || spectral_method == "iterative") {
      if (spectral_p != 2.0) {
        throw std::runtime_error("--method " + spectral_method +
                                 " requires --p 2; use variational");
      }
    }
    if (spectral_method == "dense" ||
        (spectral_method == "auto" && spectral_p == 2.0)) {
      result = lambda1_p2_exact(g, convention);
    } else if (spectral_method == "iterative") {
      result = lambda1_p2_iterative(g, convention, spectral_seed);
    } else if (spectral_method == "variational" || spectral_method == "auto") {
      result = lambda1_variational(g, spectral_p, convention, spectral_restarts,
                                   spectral_seed);
    } else {
      throw std::runtime_error("unknown method: " + spectral_method);
    }
    json j;
    j["lambda"] = result.lambda;
    j["convention"] = convention_name(result.convention);
    j["p"] = result.p;
    j["method"] = result.method == SpectralMethod::Dense       ? "dense"
                  : result.method == SpectralMethod::Iterative ? "iterative"
                                                               : "variational";
    if (result.residual) j["residual"] = *result.residual;
    j["minimizer"] = std::vector<double>(
        result.minimizer.data(), result.minimizer.data() + result.minimizer.size());
    write_output(spectral_out, j.dump(2) + "\n");
    std::cout << "lambda1(p=" << spectral_p << ", "
              << convention_name(convention) << ") = " << result.lambda
              << "\n";
    return kExitOk;
  }

  if (distortion->parsed() || embed->parsed()) {
    const bool embedding_only = embed->parsed();
    GraphSource& source = embedding_only ? embed_source : distortion_source;
    std::string method = embedding_only ? embed_method : distortion_method;
    double p = embedding_only ? embed_p : distortion_p;
    int dim = embedding_only ? embed_dim : distortion_dim;
    int iters = embedding_only ? embed_iters : distortion_iters;
    int subsets = embedding_only ? embed_subsets : distortion_subsets;
    std::uint64_t seed = embedding_only ? embed_seed : distortion_seed;

    Multigraph g = source.resolve();
    DistanceMatrix d = all_pairs_distances(g);
    Embedding e;
    if (method == "bourgain") {
      e = bourgain_embedding(g, d, p, seed, subsets);
    } else if (method == "lattice") {
      if (!source.is_hanoi()) {
        throw std::runtime_error(
            "--method lattice applies to --family hanoi only");
      }
      e = pascal_planar_embedding(source.level, p);
    } else if (method == "localopt") {
      e = local_opt_distortion(g, d, p, dim, seed, iters).embedding;
    } else {
      throw std::runtime_error("unknown method: " + method);
    }

    if (embedding_only) {
      save_embedding(e, embed_out);
      std::cout << "wrote " << embed_out << " (dim " << e.dimension() << ")\n";
      return kExitOk;
    }

    DistortionReport report = realized_distortion(d, e);
    report.method = method;
    report.seed = seed;
    json j;
    j["method"] = report.method;
    j["seed"] = report.seed;
    j["p"] = p;
    j["expansion"] = report.expansion;
    j["contraction"] = report.contraction;
    j["realized"] = report.realized;
    write_output(distortion_out, j.dump(2) + "\n");
    if (!distortion_embed_out.empty()) save_embedding(e, distortion_embed_out);
    std::cout << "realized distortion (" << method << ", p=" << p
              << ") = " << report.realized << "\n";
    return kExitOk;
  }

  if (rho_cmd->parsed()) {
    Multigraph g = rho_source.resolve();
    DistanceMatrix d = all_pairs_distances(g);
    json results = json::array();
    for (double eps : parse_double_list(rho_eps_text)) {
      if (rho_method == "exact" ||
          (rho_method == "auto" && g.vertex_count() <= kRhoExactCap)) {
        results.push_back(rho_to_json(rho_exact(g, d, eps)));
      } else if (rho_method == "lower" || rho_method == "auto") {
        results.push_back(rho_to_json(rho_lower_ballcount(g, d, eps)));
      } else if (rho_method == "upper") {
        results.push_back(rho_to_json(rho_upper_witness(g, d, eps)));
      } else {
        throw std::runtime_error("unknown method: " + rho_method);
      }
    }
    write_output(rho_out, results.dump(2) + "\n");
    for (const auto& r : results) {
      std::cout << "rho(eps=" << r["eps"] << ") "
                << (r.contains("value") ? r["value"] : r["lower"]) << " ["
                << r["method"].get<std::string>() << "]\n";
    }
    return kExitOk;
  }

  if (verify->parsed()) {
    Multigraph g = verify_source.resolve();
    DistanceMatrix d = all_pairs_distances(g);
    const int delta = diameter(d);
    const int k = max_degree(g);
    const std::string id = graph_id(verify_source);
    json reports = json::array();
    bool hard_fail = false;

    if (verify_ineq == "eq6") {
      SpectralResult p2 = lambda1_p2_exact(g, Convention::PerEdge);
      InequalityReport report =
          eq6_check(id, delta, k, p2.lambda, g.vertex_count());
      reports.push_back(report_to_json(report));
      hard_fail = !report.pass;
    } else if (verify_ineq == "eq8") {
      AlphaResult alpha = adjacency_alpha(g);
      InequalityReport report = eq8_check(id, delta, g.vertex_count(), alpha);
      reports.push_back(report_to_json(report));
      hard_fail = !report.pass;
    } else if (verify_ineq == "prop6") {
      InequalityReport report = check_prop6(g, d);
      reports.push_back(report_to_json(report));
      hard_fail = !report.pass;
    } else if (verify_ineq == "thm3") {
      double lambda_ordered;
      bool lambda_exact = verify_p == 2.0;
      if (lambda_exact) {
        lambda_ordered = lambda1_p2_exact(g, Convention::OrderedPairs).lambda;
      } else {
        lambda_ordered =
            lambda1_variational(g, verify_p, Convention::OrderedPairs, 16,
                                verify_seed)
                .lambda;
      }
      Embedding e = bourgain_embedding(g, d, verify_p, verify_seed);
      double ub = realized_distortion(d, e).realized;
      if (verify_source.is_hanoi() && verify_source.level <= 6) {
        Embedding lattice = pascal_planar_embedding(verify_source.level, verify_p);
        ub = std::min(ub, realized_distortion(d, lattice).realized);
      }
      for (double eps : parse_double_list(verify_eps_text)) {
        RhoResult rho = g.vertex_count() <= kRhoExactCap
                            ? rho_exact(g, d, eps)
                            : rho_lower_ballcount(g, d, eps);
        if (rho.degenerate || rho.lower <= 0.0) {
          throw std::runtime_error(
              "thm3: rho = 0 at eps=" + std::to_string(eps) +
              " (degenerate subset threshold)");
        }
        InequalityReport report =
            theorem3_check(id, verify_p, eps, lambda_ordered, lambda_exact,
                           rho.lower, ub, delta, k);
        reports.push_back(report_to_json(report));
        if (!report.pass && lambda_exact) hard_fail = true;
      }
    } else {
      throw std::runtime_error("unknown inequality: " + verify_ineq);
    }

    write_output(verify_out, reports.dump(2) + "\n");
    for (const auto& r : reports) {
      std::cout << r["inequality"].get<std::string>() << " on "
                << r["graph"].get<std::string>() << ": "
                << (r["pass"].get<bool>() ? "PASS" : "FAIL")
                << (r.contains("caveat") ? " (" + r["caveat"].get<std::string>() + ")"
                                         : "")
                << "\n";
    }
    return hard_fail ? kExitAssertionFailed : kExitOk;
  }

  if (sweep->parsed()) {
    SweepConfig config;
    config.family = family_from_name(sweep_family);
    auto [lo, hi] = parse_level_range(sweep_levels);
    config.level_min = lo;
    config.level_max = hi;
    config.p_list = parse_double_list(sweep_p_text);
    config.eps_list = parse_double_list(sweep_eps_text);
    config.seed = sweep_seed;
    config.restarts = sweep_restarts;

    SweepResult result = family_sweep(config);
    std::string content = sweep_format == "json"
                              ? sweep_to_json(result, config)
                              : sweep_to_csv(result, config);
    atomic_write_file(sweep_out, content);

    int failures = 0;
    for (const auto& row : result.rows) {
      if (row.thm3_pass == 0 || row.eq6_pass == 0 || row.eq8_pass == 0) {
        ++failures;
      }
    }
    std::cout << "wrote " << sweep_out << " (" << result.rows.size()
              << " rows)";
    if (result.bourgain_slope) {
      std::cout << "; bourgain distortion slope vs log2|V| = "
                << *result.bourgain_slope;
    }
    std::cout << "\n";
    if (failures > 0) {
      std::cout << failures << " row(s) with failed checks\n";
      return kExitAssertionFailed;
    }
    return kExitOk;
  }

  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
