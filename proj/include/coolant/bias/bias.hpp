//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coolant::bias {

struct EmptySample : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonPSDMatrix : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Coordinate { X, Y };
enum class Tail { Greater, Less };

/// Threshold event on one coordinate, e.g. {X, Greater, t1} is {X > t1}.
struct EventSpec {
  Coordinate variable = Coordinate::X;
  Tail direction = Tail::Greater;
  double threshold = 0.0;
};

struct BiasEstimate {
  double p_joint = 0.0;
  double p_u = 0.0;
  double p_v = 0.0;
  double product = 0.0;         // p_u * p_v
  double cov_indicators = 0.0;  // centered empirical covariance of the flags
  double gap = 0.0;             // product - p_joint
  double mc_std_err = 0.0;      // binomial error of p_joint
};

/// Empirical check of P(U and V) = P(U)P(V) + Cov(1_U, 1_V). The covariance
/// is accumulated in centered form, so the identity holding to 1e-12 is a
/// float-arithmetic fact, not bookkeeping.
BiasEstimate indicator_cov(std::span<const std::pair<double, double>> samples,
                           const EventSpec& u, const EventSpec& v);

/// Centered covariance of two 0/1 flag vectors (screening delegates here).
double indicator_covariance(const std::vector<char>& u,
                            const std::vector<char>& v);

/// Standard normal upper tail P(Z > t).
double normal_upper(double t);

/// Bivariate standard-normal probability P(X ? t1, Y ? t2) for the given
/// tail pair, |rho| <= 1. Adaptive tensor-product Gauss-Legendre on the
/// upper orthant after sign-flip reductions; absolute error < 1e-8.
/// |rho| = 1 uses the degenerate closed forms.
double gaussian_joint(double t1, double t2, double rho,
                      Tail d1 = Tail::Greater, Tail d2 = Tail::Greater);

/// Case I (rho <= 0, same-direction tails): joint <= product + 1e-8.
bool case1_check(double rho, double t1, double t2);
/// Case II (rho >= 0, opposing tails): P(X>t1, Y<t2) <= P(X>t1)P(Y<t2) + 1e-8.
bool case2_check(double rho, double t1, double t2);

struct ScanRow {
  double rho = 0.0;
  double joint = 0.0;  // upper-orthant probability at (t1, t2)
};

/// Upper-orthant probability along a sorted rho grid; the probability is
/// non-decreasing in rho (quadrant-dependence monotonicity).
std::vector<ScanRow> monotonicity_scan(double t1, double t2,
                                       const std::vector<double>& rho_grid);

/// Correlation-matrix builders for the inflation study. The chain couples
/// only neighboring criteria, so it stays positive-definite at any length;
/// the equicorrelated form with negative rho loses PSD once k > 1 + 1/|rho|.
Eigen::MatrixXd chain_correlation(int k, double rho);
Eigen::MatrixXd equicorrelated(int k, double rho);

struct InflationConfig {
  Eigen::MatrixXd correlation;     // k_max x k_max, validated PSD
  std::vector<double> thresholds;  // z-units, one per criterion
  double pred_noise = 0.3;         // sigma of the independent predictor noise
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
  int chunks = 8;  // fixed seed-partitioned streams; results independent of
                   // worker count
};

struct InflationPoint {
  int k = 0;
  double product_estimate = 0.0;  // product of marginal feasibilities
  double joint_estimate = 0.0;    // true joint feasibility
  double gap = 0.0;               // product - joint
  double gap_rel = 0.0;           // 1 - joint/product
  double fp_fraction = 0.0;       // false positives among predicted-pass
  double joint_err = 0.0;         // binomial MC std errors
  double product_err = 0.0;       // delta-method
  double gap_rel_err = 0.0;       // delta-method on the ratio
};

/// Multi-criteria feasibility study over k = 1..k_max: draws correlated true
/// properties plus independent per-property predictor noise, then compares
/// the independence-product estimate with the true joint rate and reports
/// the false-positive fraction among predicted-pass samples.
std::vector<InflationPoint> fp_inflation_sim(const InflationConfig& config);

/// CSV `k,product,joint,gap,gap_rel,fp_fraction,joint_err,product_err,gap_rel_err`.
void write_inflation_csv(const std::string& path,
                         const std::vector<InflationPoint>& points);

}  // namespace coolant::bias
