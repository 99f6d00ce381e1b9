#include "graphgap/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "graphgap/random.hpp"

namespace graphgap {

namespace {

/// sgnpow(a, q) = |a|^q * sign(a); the bracket power a^[p] used throughout
/// is sgnpow(a, p - 1).
double sgnpow(double a, double q) {
  if (a == 0.0) return 0.0;
  double m = std::pow(std::abs(a), q);
  return a > 0 ? m : -m;
}

void require_connected(const Multigraph& g, const char* who) {
  if (!is_connected(g)) {
    throw std::runtime_error(std::string(who) + ": graph is disconnected");
  }
}

}  // namespace

const char* convention_name(Convention c) {
  return c == Convention::OrderedPairs ? "ordered_pairs" : "per_edge";
}

Eigen::MatrixXd laplacian_matrix(const Multigraph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    L(e.u, e.v) -= e.mult;
    L(e.v, e.u) -= e.mult;
    L(e.u, e.u) += e.mult;
    L(e.v, e.v) += e.mult;
  }
  return L;
}

Eigen::SparseMatrix<double> laplacian_sparse(const Multigraph& g) {
  const int n = g.vertex_count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * g.edges().size());
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    trip.emplace_back(e.u, e.v, -static_cast<double>(e.mult));
    trip.emplace_back(e.v, e.u, -static_cast<double>(e.mult));
    trip.emplace_back(e.u, e.u, static_cast<double>(e.mult));
    trip.emplace_back(e.v, e.v, static_cast<double>(e.mult));
  }
  Eigen::SparseMatrix<double> L(n, n);
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

Eigen::MatrixXd adjacency_matrix(const Multigraph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) {
      A(e.u, e.u) += e.mult;
    } else {
      A(e.u, e.v) += e.mult;
      A(e.v, e.u) += e.mult;
    }
  }
  return A;
}

Eigen::VectorXd apply_p_laplacian(const Multigraph& g, const Eigen::VectorXd& f,
                                  double p) {
  if (p < 1.0) throw std::invalid_argument("apply_p_laplacian: p must be >= 1");
  if (f.size() != g.vertex_count()) {
    throw std::invalid_argument("apply_p_laplacian: f has wrong size");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(f.size());
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    double t = sgnpow(f[e.u] - f[e.v], p - 1.0) * e.mult;
    out[e.u] += t;
    out[e.v] -= t;
  }
  return out;
}

double optimal_shift(const Eigen::VectorXd& f, double p) {
  if (p < 1.0) throw std::invalid_argument("optimal_shift: p must be >= 1");
  if (f.size() == 0) return 0.0;
  if (p == 2.0) return f.mean();
  if (p == 1.0) {
    std::vector<double> v(f.data(), f.data() + f.size());
    size_t mid = (v.size() - 1) / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    return v[mid];
  }
  double lo = f.minCoeff(), hi = f.maxCoeff();
  if (lo == hi) return lo;
  // d/dalpha sum |f - alpha|^p is monotone nondecreasing; bisect its sign.
  auto deriv = [&](double alpha) {
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += sgnpow(alpha - f[i], p - 1.0);
    return s;
  };
  double tol = 1e-12 * std::max(1.0, hi - lo);
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (deriv(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double dirichlet_energy(const Multigraph& g, const Eigen::VectorXd& f, double p,
                        Convention convention) {
  double per_edge = 0.0;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    per_edge += e.mult * std::pow(std::abs(f[e.u] - f[e.v]), p);
  }
  return convention == Convention::OrderedPairs ? 2.0 * per_edge : per_edge;
}

double gap_quotient(const Multigraph& g, const Eigen::VectorXd& f, double p,
                    Convention convention) {
  double alpha = optimal_shift(f, p);
  double denom = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    denom += std::pow(std::abs(f[i] - alpha), p);
  }
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return dirichlet_energy(g, f, p, convention) / denom;
}

SpectralResult lambda1_p2_exact(const Multigraph& g, Convention convention) {
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("lambda1_p2_exact: need >= 2 vertices");
  require_connected(g, "lambda1_p2_exact");
  if (n > kDenseSpectralCap) return lambda1_p2_iterative(g, convention);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian_matrix(g));
  double lambda_pe = solver.eigenvalues()(1);
  Eigen::VectorXd minimizer = solver.eigenvectors().col(1);

  SpectralResult result;
  result.lambda =
      convention == Convention::OrderedPairs ? 2.0 * lambda_pe : lambda_pe;
  result.convention = convention;
  result.p = 2.0;
  result.minimizer = minimizer;
  result.residual = eigen_residual(g, minimizer, lambda_pe, 2.0);
  result.method = SpectralMethod::Dense;
  return result;
}

SpectralResult lambda1_p2_iterative(const Multigraph& g, Convention convention,
                                    std::uint64_t seed) {
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("lambda1_p2_iterative: need >= 2 vertices");
  require_connected(g, "lambda1_p2_iterative");
  Eigen::SparseMatrix<double> L = laplacian_sparse(g);

  auto deflate = [n](Eigen::VectorXd& v) { v.array() -= v.mean(); };

  // Conjugate gradients on the complement of the constants; L is positive
  // definite there for a connected graph.
  auto cg_solve = [&](const Eigen::VectorXd& rhs) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = rhs;
    deflate(r);
    Eigen::VectorXd d = r;
    double rr = r.squaredNorm();
    const double stop = 1e-24 * rhs.squaredNorm();
    const int max_iter = 40 * n;
    for (int it = 0; it < max_iter && rr > stop; ++it) {
      Eigen::VectorXd Ld = L * d;
      double alpha = rr / d.dot(Ld);
      x += alpha * d;
      r -= alpha * Ld;
      deflate(r);
      double rr_new = r.squaredNorm();
      d = r + (rr_new / rr) * d;
      rr = rr_new;
    }
    return x;
  };

  auto rng = make_engine(seed, 0xACE1);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = unit_double(rng) - 0.5;
  deflate(v);
  v.normalize();

  double rho_prev = std::numeric_limits<double>::infinity();
  double rho = v.dot(L * v);
  for (int outer = 0; outer < 500; ++outer) {
    Eigen::VectorXd x = cg_solve(v);
    deflate(x);
    double norm = x.norm();
    if (norm == 0.0) break;
    v = x / norm;
    rho_prev = rho;
    rho = v.dot(L * v);
    if (std::abs(rho - rho_prev) <= 1e-11 * std::abs(rho)) break;
  }

  SpectralResult result;
  result.lambda = convention == Convention::OrderedPairs ? 2.0 * rho : rho;
  result.convention = convention;
  result.p = 2.0;
  result.minimizer = v;
  result.residual = eigen_residual(g, v, rho, 2.0);
  result.method = SpectralMethod::Iterative;
  return result;
}

SpectralResult lambda1_variational(const Multigraph& g, double p,
                                   Convention convention, int restarts,
                                   std::uint64_t seed, int max_iterations) {
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("lambda1_variational: need >= 2 vertices");
  if (p < 1.0) throw std::invalid_argument("lambda1_variational: p must be >= 1");
  if (restarts < 1) throw std::invalid_argument("lambda1_variational: restarts >= 1");
  require_connected(g, "lambda1_variational");

  // Everything below works in the ordered-pairs normalization; PerEdge is
  // exactly half of it.
  auto center_normalize = [&](Eigen::VectorXd& f) {
    f.array() -= optimal_shift(f, p);
    double norm = f.norm();
    if (norm <= 1e-300) return false;
    f /= norm;
    return true;
  };

  auto quotient = [&](const Eigen::VectorXd& f) {
    return gap_quotient(g, f, p, Convention::OrderedPairs);
  };

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_f;

  Eigen::VectorXd warm;
  if (n <= kDenseSpectralCap) {
    warm = lambda1_p2_exact(g, Convention::PerEdge).minimizer;
  } else {
    warm = lambda1_p2_iterative(g, Convention::PerEdge, seed).minimizer;
  }

  for (int restart = 0; restart < restarts; ++restart) {
    Eigen::VectorXd f;
    if (restart == 0) {
      f = warm;
    } else {
      auto rng = make_engine(seed, restart);
      f.resize(n);
      for (int i = 0; i < n; ++i) f[i] = unit_double(rng) < 0.5 ? -1.0 : 1.0;
      if (std::abs(f.sum()) == static_cast<double>(n)) f[0] = -f[0];
    }
    if (!center_normalize(f)) continue;

    double q = quotient(f);
    double step = 0.25;
    for (int iter = 0; iter < max_iterations; ++iter) {
      double alpha = optimal_shift(f, p);
      Eigen::VectorXd h = f.array() - alpha;
      double denom = h.array().abs().pow(p).sum();
      double num = dirichlet_energy(g, h, p, Convention::OrderedPairs);
      Eigen::VectorXd grad_num = 2.0 * p * apply_p_laplacian(g, h, p);
      Eigen::VectorXd grad_den(n);
      for (int i = 0; i < n; ++i) grad_den[i] = p * sgnpow(h[i], p - 1.0);
      Eigen::VectorXd grad =
          (grad_num * denom - num * grad_den) / (denom * denom);
      double gnorm = grad.norm();
      if (!(gnorm > 1e-13 * std::max(1.0, q))) break;

      Eigen::VectorXd dir = -grad / gnorm;
      bool accepted = false;
      double t = step;
      for (int shrink = 0; shrink < 45; ++shrink) {
        Eigen::VectorXd trial = f + t * dir;
        if (center_normalize(trial)) {
          double qt = quotient(trial);
          if (qt < q - 1e-14 * std::abs(q)) {
            f = trial;
            q = qt;
            step = std::min(2.0 * t, 1.0);
            accepted = true;
            break;
          }
        }
        t *= 0.5;
      }
      if (!accepted) break;
    }

    if (q < best) {
      best = q;
      best_f = f;
    }
  }

  if (!std::isfinite(best)) {
    throw std::runtime_error(
        "lambda1_variational: every restart degenerated to a constant function");
  }

  SpectralResult result;
  result.lambda = convention == Convention::OrderedPairs ? best : 0.5 * best;
  result.convention = convention;
  result.p = p;
  result.minimizer = best_f;
  if (p > 1.0) {
    result.residual = eigen_residual(g, best_f, 0.5 * best, p);
  }
  result.method = SpectralMethod::Variational;
  return result;
}

double eigen_residual(const Multigraph& g, const Eigen::VectorXd& f,
                      double lambda_per_edge, double p) {
  if (p <= 1.0) throw std::invalid_argument("eigen_residual: requires p > 1");
  if (f.norm() == 0.0) throw std::invalid_argument("eigen_residual: zero f");
  Eigen::VectorXd lhs = apply_p_laplacian(g, f, p);
  Eigen::VectorXd rhs(f.size());
  for (int i = 0; i < f.size(); ++i) rhs[i] = sgnpow(f[i], p - 1.0);
  double den = rhs.norm();
  if (den == 0.0) throw std::invalid_argument("eigen_residual: |f|^(p-2) f vanishes");
  return (lhs - lambda_per_edge * rhs).norm() / den;
}

AlphaResult adjacency_alpha(const Multigraph& g) {
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("adjacency_alpha: need >= 2 vertices");
  if (n > kDenseSpectralCap) {
    throw std::runtime_error("adjacency_alpha: graph exceeds the dense cap");
  }
  if (!is_regular(g)) {
    throw std::runtime_error("adjacency_alpha: graph is not regular");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_matrix(g));
  Eigen::VectorXd moduli = solver.eigenvalues().cwiseAbs();
  std::sort(moduli.data(), moduli.data() + moduli.size(),
            std::greater<double>());

  AlphaResult result;
  result.k = g.degree(0);
  result.alpha = moduli[1];
  result.bipartite_degenerate =
      std::abs(result.alpha - result.k) <= 1e-9 * std::max(1.0, double(result.k));
  return result;
}

}  // namespace graphgap
