//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "coolant/bias/bias.hpp"

namespace coolant::bias {

namespace {

constexpr double kDomainEdge = 8.5;   // |z| beyond this carries < 1e-16 mass
constexpr double kPanelTol = 1e-9;    // per-call budget, under the 1e-8 contract
constexpr int kMaxDepth = 28;

struct GlRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Newton iteration on the Legendre recurrence; exact symmetric rule.
GlRule make_rule(int n) {
  GlRule r;
  r.x.assign(static_cast<std::size_t>(n), 0.0);
  r.w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[static_cast<std::size_t>(i)] = -z;
    r.x[static_cast<std::size_t>(n - 1 - i)] = z;
    r.w[static_cast<std::size_t>(i)] = w;
    r.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

const GlRule& rule7() {
  static const GlRule r = make_rule(7);
  return r;
}
const GlRule& rule15() {
  static const GlRule r = make_rule(15);
  return r;
}

struct Density {
  double inv_two_var;  // 1 / (2 (1 - rho^2))
  double norm;         // 1 / (2 pi sqrt(1 - rho^2))
  double rho;

  explicit Density(double rho_)
      : inv_two_var(1.0 / (2.0 * (1.0 - rho_ * rho_))),
        norm(1.0 / (2.0 * std::numbers::pi * std::sqrt(1.0 - rho_ * rho_))),
        rho(rho_) {}

  double operator()(double x, double y) const {
    return norm * std::exp(-(x * x - 2.0 * rho * x * y + y * y) * inv_two_var);
  }
};

double tensor_quad(const Density& f, const GlRule& r, double a1, double b1,
                   double a2, double b2) {
  const double mx = 0.5 * (a1 + b1), rx = 0.5 * (b1 - a1);
  const double my = 0.5 * (a2 + b2), ry = 0.5 * (b2 - a2);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double xi = mx + rx * r.x[i];
    double row = 0.0;
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      row += r.w[j] * f(xi, my + ry * r.x[j]);
    }
    sum += r.w[i] * row;
  }
  return sum * rx * ry;
}

double adaptive_panel(const Density& f, double a1, double b1, double a2,
                      double b2, double tol, int depth) {
  const double coarse = tensor_quad(f, rule7(), a1, b1, a2, b2);
  const double fine = tensor_quad(f, rule15(), a1, b1, a2, b2);
  if (std::abs(fine - coarse) <= tol || depth >= kMaxDepth) return fine;
  const double m1 = 0.5 * (a1 + b1);
  const double m2 = 0.5 * (a2 + b2);
  const double quarter = 0.25 * tol;
  return adaptive_panel(f, a1, m1, a2, m2, quarter, depth + 1) +
         adaptive_panel(f, m1, b1, a2, m2, quarter, depth + 1) +
         adaptive_panel(f, a1, m1, m2, b2, quarter, depth + 1) +
         adaptive_panel(f, m1, b1, m2, b2, quarter, depth + 1);
}

double upper_orthant(double t1, double t2, double rho) {
  if (rho >= 1.0 - 1e-12) return normal_upper(std::max(t1, t2));
  if (rho <= -1.0 + 1e-12) {
    // Y = -X: the event is t1 < X < -t2.
    return std::max(0.0, normal_upper(t1) - normal_upper(-t2));
  }
  if (t1 >= kDomainEdge || t2 >= kDomainEdge) return 0.0;
  const double lo1 = std::max(t1, -kDomainEdge);
  const double lo2 = std::max(t2, -kDomainEdge);
  const Density f(rho);
  return adaptive_panel(f, lo1, kDomainEdge, lo2, kDomainEdge, kPanelTol, 0);
}

}  // namespace

double normal_upper(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

double gaussian_joint(double t1, double t2, double rho, Tail d1, Tail d2) {
  if (rho < -1.0 || rho > 1.0) {
    throw std::invalid_argument("gaussian_joint: |rho| must be <= 1");
  }
  // Sign flips reduce every tail pair to the upper orthant: negating one
  // coordinate negates the correlation and the matching threshold.
  double a = t1, b = t2, r = rho;
  if (d1 == Tail::Less) {
    a = -a;
    r = -r;
  }
  if (d2 == Tail::Less) {
    b = -b;
    r = -r;
  }
  return upper_orthant(a, b, r);
}

bool case1_check(double rho, double t1, double t2) {
  if (rho > 0.0) throw std::invalid_argument("case1_check needs rho <= 0");
  const double joint = gaussian_joint(t1, t2, rho);
  const double product = normal_upper(t1) * normal_upper(t2);
  return joint <= product + 1e-8;
}

bool case2_check(double rho, double t1, double t2) {
  if (rho < 0.0) throw std::invalid_argument("case2_check needs rho >= 0");
  const double joint = gaussian_joint(t1, t2, rho, Tail::Greater, Tail::Less);
  const double product = normal_upper(t1) * (1.0 - normal_upper(t2));
  return joint <= product + 1e-8;
}

std::vector<ScanRow> monotonicity_scan(double t1, double t2,
                                       const std::vector<double>& rho_grid) {
  for (std::size_t i = 1; i < rho_grid.size(); ++i) {
    if (rho_grid[i] < rho_grid[i - 1]) {
      throw std::invalid_argument("monotonicity_scan: grid must be sorted");
    }
  }
  std::vector<ScanRow> rows;
  rows.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    rows.push_back({rho, gaussian_joint(t1, t2, rho)});
  }
  return rows;
}

}  // namespace coolant::bias
