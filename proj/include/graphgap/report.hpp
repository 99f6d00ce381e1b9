#pragma once

#include <cmath>
#include <string>

namespace graphgap {

/// The constant k/(1-eps) * (2/rho_eps)^p that scales the gap-vs-distortion
/// bound.
struct GapBoundConstants {
  double k = 0.0;
  double eps = 0.0;
  double rho_eps = 0.0;
  double p = 2.0;

  double value() const {
    return k / (1.0 - eps) * std::pow(2.0 / rho_eps, p);
  }
};

/// One checked inequality instance: lhs <= rhs within tolerance.
struct InequalityReport {
  std::string inequality;  // "thm3", "eq6", "eq8", "prop6"
  std::string graph;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool pass = false;
  std::string caveat;  // e.g. "lambda estimate is upper-only"
};

inline constexpr double kInequalityTolerance = 1e-9;

}  // namespace graphgap
