#include "graphgap/distortion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include <json.hpp>

#include "graphgap/families.hpp"
#include "graphgap/graph_io.hpp"
#include "graphgap/random.hpp"

namespace graphgap {

namespace {

double lp_norm(const Eigen::VectorXd& v, double p) {
  if (p == 2.0) return v.norm();
  return std::pow(v.array().abs().pow(p).sum(), 1.0 / p);
}

double pair_distance(const Embedding& e, int i, int j) {
  Eigen::VectorXd diff = e.coords.row(i) - e.coords.row(j);
  return lp_norm(diff, e.p);
}

}  // namespace

DistortionReport realized_distortion(const DistanceMatrix& d,
                                     const Embedding& e) {
  const int n = static_cast<int>(d.rows());
  if (e.coords.rows() != n) {
    throw std::invalid_argument("realized_distortion: size mismatch");
  }
  if (n < 2) throw std::invalid_argument("realized_distortion: need >= 2 points");

  DistortionReport report;
  report.expansion = 0.0;
  report.contraction = 0.0;

  if (e.p == 2.0) {
    // Gram trick: ||xi - xj||^2 = G_ii + G_jj - 2 G_ij.
    Eigen::MatrixXd gram = e.coords * e.coords.transpose();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double sq = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
        double dist = std::sqrt(std::max(0.0, sq));
        if (dist == 0.0 && (e.coords.row(i) - e.coords.row(j)).norm() == 0.0) {
          throw std::runtime_error("non-injective embedding: vertices " +
                                   std::to_string(i) + " and " +
                                   std::to_string(j) + " coincide");
        }
        report.expansion = std::max(report.expansion, dist / d(i, j));
        report.contraction = std::max(report.contraction, d(i, j) / dist);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double dist = pair_distance(e, i, j);
        if (dist == 0.0) {
          throw std::runtime_error("non-injective embedding: vertices " +
                                   std::to_string(i) + " and " +
                                   std::to_string(j) + " coincide");
        }
        report.expansion = std::max(report.expansion, dist / d(i, j));
        report.contraction = std::max(report.contraction, d(i, j) / dist);
      }
    }
  }
  report.realized = report.expansion * report.contraction;
  return report;
}

namespace {

std::vector<int> distances_to_set(const Multigraph& g,
                                  const std::vector<int>& set) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> queue;
  for (int v : set) {
    dist[v] = 0;
    queue.push(v);
  }
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

}  // namespace

Embedding bourgain_embedding(const Multigraph& g, const DistanceMatrix& d,
                             double p, std::uint64_t seed, int subset_factor) {
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("bourgain_embedding: need >= 2 vertices");
  if (subset_factor < 1) {
    throw std::invalid_argument("bourgain_embedding: subset_factor >= 1");
  }

  const double log2n = std::log2(static_cast<double>(n));
  const int levels = std::max(1, static_cast<int>(std::floor(log2n)));
  const int per_level =
      std::max(1, static_cast<int>(std::ceil(subset_factor * log2n - 1e-12)));
  const int graph_diameter = d.maxCoeff();

  auto rng = make_engine(seed, 0xB0C5);
  std::vector<Eigen::VectorXd> columns;
  columns.reserve(static_cast<size_t>(levels) * per_level);
  std::vector<int> subset;
  for (int i = 1; i <= levels; ++i) {
    // Inclusion probability 2^-i via an exact 53-bit integer comparison.
    const std::uint64_t threshold = 1ULL << (53 - std::min(i, 53));
    for (int j = 0; j < per_level; ++j) {
      subset.clear();
      for (int v = 0; v < n; ++v) {
        if ((rng() >> 11) < threshold) subset.push_back(v);
      }
      Eigen::VectorXd column(n);
      if (subset.empty()) {
        column.setConstant(graph_diameter);
      } else {
        auto dist = distances_to_set(g, subset);
        for (int v = 0; v < n; ++v) column[v] = dist[v];
      }
      columns.push_back(std::move(column));
    }
  }

  // Raw coordinates are integers; collisions are detected exactly and broken
  // with deterministic point-distance coordinates.
  auto find_collision = [&]() -> std::pair<int, int> {
    std::map<std::vector<double>, int> seen;
    std::vector<double> key(columns.size());
    for (int v = 0; v < n; ++v) {
      for (size_t c = 0; c < columns.size(); ++c) key[c] = columns[c][v];
      auto [it, inserted] = seen.insert({key, v});
      if (!inserted) return {it->second, v};
    }
    return {-1, -1};
  };
  for (;;) {
    auto [u, v] = find_collision();
    if (u < 0) break;
    Eigen::VectorXd column(n);
    for (int w = 0; w < n; ++w) column[w] = d(u, w);
    columns.push_back(std::move(column));
  }

  const int m = static_cast<int>(columns.size());
  Embedding e;
  e.p = p;
  e.coords.resize(n, m);
  const double scale = 1.0 / std::pow(static_cast<double>(m), 1.0 / p);
  for (int c = 0; c < m; ++c) e.coords.col(c) = columns[c] * scale;
  return e;
}

long long lattice_distance(AxialCoord u, AxialCoord v) {
  long long dx = v.x - u.x;
  long long dy = v.y - u.y;
  return (std::llabs(dx) + std::llabs(dy) + std::llabs(dx + dy)) / 2;
}

Eigen::Vector2d axial_to_planar(AxialCoord u) {
  return {static_cast<double>(u.x) + 0.5 * static_cast<double>(u.y),
          std::sqrt(3.0) / 2.0 * static_cast<double>(u.y)};
}

namespace {

std::vector<AxialCoord> place_pascal(int level,
                                     std::array<AxialCoord, 3> anchors) {
  if (level == 1) return {anchors[0], anchors[1], anchors[2]};
  const long long side = (1LL << level) - 1;
  const long long sub_side = (1LL << (level - 1)) - 1;

  size_t size = 1;
  for (int i = 0; i < level; ++i) size *= 3;
  std::vector<AxialCoord> out(size);

  for (int last = 0; last < 3; ++last) {
    // The sub-copy for last letter l keeps corner l at the outer anchor; the
    // corner facing copy m is the one labeled by the third letter, so the
    // three connecting edges come out as unit lattice steps.
    std::array<AxialCoord, 3> sub;
    sub[last] = anchors[last];
    for (int m = 0; m < 3; ++m) {
      if (m == last) continue;
      int k = 3 - last - m;
      sub[k] = {anchors[last].x +
                    (anchors[m].x - anchors[last].x) / side * sub_side,
                anchors[last].y +
                    (anchors[m].y - anchors[last].y) / side * sub_side};
    }
    auto inner = place_pascal(level - 1, sub);
    for (size_t j = 0; j < inner.size(); ++j) out[3 * j + last] = inner[j];
  }
  return out;
}

}  // namespace

std::vector<AxialCoord> pascal_lattice_embedding(int n) {
  if (n < 1 || n > 6) {
    throw std::invalid_argument("pascal_lattice_embedding: n must be in [1, 6]");
  }
  const long long side = (1LL << n) - 1;
  return place_pascal(n, {AxialCoord{0, 0}, AxialCoord{side, 0},
                          AxialCoord{0, side}});
}

Embedding pascal_planar_embedding(int n, double p) {
  auto lattice = pascal_lattice_embedding(n);
  Multigraph g = hanoi_graph(n);

  Embedding e;
  e.p = p;
  e.coords.resize(lattice.size(), 2);
  for (size_t v = 0; v < lattice.size(); ++v) {
    e.coords.row(v) = axial_to_planar(lattice[v]).transpose();
  }

  double max_step = 0.0;
  for (const Edge& edge : g.edges()) {
    if (edge.u == edge.v) continue;
    Eigen::VectorXd diff = e.coords.row(edge.u) - e.coords.row(edge.v);
    max_step = std::max(max_step, lp_norm(diff, p));
  }
  if (max_step > 0.0) e.coords /= max_step;
  return e;
}

double distortion_lower_bound(double lambda_ordered_pairs_lower, int delta,
                              double rho_eps, int k, double eps, double p) {
  if (rho_eps <= 0.0) {
    throw std::runtime_error(
        "distortion_lower_bound: rho_eps = 0, the bound is vacuous");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("distortion_lower_bound: eps must be in (0,1)");
  }
  if (lambda_ordered_pairs_lower < 0.0 || delta < 1 || k < 1) {
    throw std::invalid_argument("distortion_lower_bound: bad inputs");
  }
  return 0.5 * rho_eps * delta *
         std::pow(lambda_ordered_pairs_lower, 1.0 / p) *
         std::pow((1.0 - eps) / k, 1.0 / p);
}

namespace {

double realized_or_inf(const DistanceMatrix& d, const Embedding& e) {
  const int n = static_cast<int>(d.rows());
  double expansion = 0.0, contraction = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dist = pair_distance(e, i, j);
      if (dist == 0.0) return std::numeric_limits<double>::infinity();
      expansion = std::max(expansion, dist / d(i, j));
      contraction = std::max(contraction, d(i, j) / dist);
    }
  }
  return expansion * contraction;
}

Eigen::MatrixXd classical_mds(const DistanceMatrix& d, int dim) {
  const int n = static_cast<int>(d.rows());
  Eigen::MatrixXd sq(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sq(i, j) = static_cast<double>(d(i, j)) * d(i, j);
    }
  }
  Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::MatrixXd b = -0.5 * centering * sq * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);

  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, dim);
  for (int c = 0; c < dim; ++c) {
    int idx = n - 1 - c;  // eigenvalues ascend; take the top ones
    if (idx < 0) break;
    double lambda = solver.eigenvalues()(idx);
    if (lambda <= 0.0) continue;
    coords.col(c) = solver.eigenvectors().col(idx) * std::sqrt(lambda);
  }
  return coords;
}

Eigen::MatrixXd project_to_dim(const Eigen::MatrixXd& points, int dim) {
  Eigen::MatrixXd centered = points.rowwise() - points.colwise().mean();
  Eigen::MatrixXd gram = centered * centered.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  const int n = static_cast<int>(points.rows());
  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, dim);
  for (int c = 0; c < dim; ++c) {
    int idx = n - 1 - c;
    if (idx < 0) break;
    double lambda = solver.eigenvalues()(idx);
    if (lambda <= 0.0) continue;
    coords.col(c) = solver.eigenvectors().col(idx) * std::sqrt(lambda);
  }
  return coords;
}

}  // namespace

LocalOptResult local_opt_distortion(const Multigraph& g,
                                    const DistanceMatrix& d, double p, int dim,
                                    std::uint64_t seed, int iterations) {
  if (dim < 1) throw std::invalid_argument("local_opt_distortion: dim >= 1");
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("local_opt_distortion: need >= 2 points");

  std::vector<Eigen::MatrixXd> starts;
  starts.push_back(classical_mds(d, dim));
  starts.push_back(project_to_dim(bourgain_embedding(g, d, p, seed).coords, dim));
  for (int r = 0; r < 3; ++r) {
    auto rng = make_engine(seed, 0x10CA1 + r);
    Eigen::MatrixXd random(n, dim);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < dim; ++c) {
        // Box-Muller from exact uniform bits.
        double u1 = std::max(unit_double(rng), 1e-300);
        double u2 = unit_double(rng);
        random(i, c) = std::sqrt(-2.0 * std::log(u1)) *
                       std::cos(2.0 * M_PI * u2);
      }
    }
    starts.push_back(random * diameter(d));
  }

  double best_realized = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best_coords;

  const double guard = 1e-12;
  auto loss_and_grad = [&](const Eigen::MatrixXd& x, Eigen::MatrixXd* grad) {
    double loss = 0.0;
    if (grad) grad->setZero();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Eigen::VectorXd diff = x.row(i) - x.row(j);
        double r = lp_norm(diff, p) + guard;
        double t = std::log(r) - std::log(static_cast<double>(d(i, j)));
        loss += t * t;
        if (grad) {
          // d r / d x_i = sgn(diff) |diff|^(p-1) / r^(p-1)
          Eigen::VectorXd dr(diff.size());
          for (int c = 0; c < diff.size(); ++c) {
            double a = diff[c];
            double mag = std::pow(std::abs(a), p - 1.0);
            dr[c] = (a >= 0 ? mag : -mag);
          }
          dr /= std::pow(r, p - 1.0);
          Eigen::VectorXd contrib = (2.0 * t / r) * dr;
          grad->row(i) += contrib.transpose();
          grad->row(j) -= contrib.transpose();
        }
      }
    }
    return loss;
  };

  Embedding probe;
  probe.p = p;
  for (const Eigen::MatrixXd& start : starts) {
    Eigen::MatrixXd x = start;
    probe.coords = x;
    double realized = realized_or_inf(d, probe);
    if (realized < best_realized) {
      best_realized = realized;
      best_coords = x;
    }

    Eigen::MatrixXd grad(n, dim);
    double loss = loss_and_grad(x, &grad);
    double step = 0.1;
    for (int it = 0; it < iterations; ++it) {
      double gnorm = grad.norm();
      if (!(gnorm > 1e-14)) break;
      bool accepted = false;
      double t = step;
      for (int shrink = 0; shrink < 30; ++shrink) {
        Eigen::MatrixXd trial = x - (t / gnorm) * grad;
        double trial_loss = loss_and_grad(trial, nullptr);
        if (trial_loss < loss) {
          x = trial;
          loss = trial_loss;
          step = std::min(2.0 * t, 10.0);
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;
      loss_and_grad(x, &grad);

      probe.coords = x;
      realized = realized_or_inf(d, probe);
      if (realized < best_realized) {
        best_realized = realized;
        best_coords = x;
      }
    }
  }

  if (!std::isfinite(best_realized)) {
    throw std::runtime_error("local_opt_distortion: all starts degenerate");
  }

  LocalOptResult result;
  result.embedding.coords = best_coords;
  result.embedding.p = p;
  result.report = realized_distortion(d, result.embedding);
  result.report.method = "local_opt";
  result.report.seed = seed;
  return result;
}

QuasiIsometryConstants quasi_isometry_constants(const Eigen::MatrixXd& dx,
                                                const Eigen::MatrixXd& dy,
                                                const std::vector<int>& image) {
  const int n = static_cast<int>(dx.rows());
  if (static_cast<int>(image.size()) != n) {
    throw std::invalid_argument("quasi_isometry_constants: image size mismatch");
  }

  double ratio = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double a = dx(i, j);
      double b = dy(image[i], image[j]);
      if (a <= 0.0) continue;
      if (b <= 0.0) {
        throw std::runtime_error(
            "quasi_isometry_constants: map identifies points at positive "
            "distance; no additive constant-free fit exists");
      }
      ratio = std::max(ratio, std::max(a / b, b / a));
    }
  }

  double slack = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double a = dx(i, j);
      double b = dy(image[i], image[j]);
      slack = std::max(slack, b - ratio * a);
      slack = std::max(slack, a / ratio - b);
    }
  }
  if (slack < 1e-9) slack = 0.0;

  double density = 0.0;
  for (int t = 0; t < dy.rows(); ++t) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) nearest = std::min(nearest, dy(t, image[i]));
    density = std::max(density, nearest);
  }
  return {ratio, slack, density};
}

std::string embedding_to_json(const Embedding& e) {
  nlohmann::json j;
  j["p"] = e.p;
  j["dim"] = e.dimension();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < e.coords.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < e.coords.cols(); ++c) row.push_back(e.coords(i, c));
    rows.push_back(std::move(row));
  }
  j["coords"] = std::move(rows);
  return j.dump(2) + "\n";
}

Embedding embedding_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Embedding e;
  e.p = j.at("p").get<double>();
  int dim = j.at("dim").get<int>();
  const auto& rows = j.at("coords");
  e.coords.resize(rows.size(), dim);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != dim) {
      throw std::runtime_error("embedding file: ragged coords");
    }
    for (int c = 0; c < dim; ++c) e.coords(i, c) = rows[i][c].get<double>();
  }
  return e;
}

void save_embedding(const Embedding& e, const std::string& path) {
  atomic_write_file(path, embedding_to_json(e));
}

Embedding load_embedding(const std::string& path) {
  return embedding_from_json(read_file(path));
}

}  // namespace graphgap
