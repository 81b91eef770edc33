//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "coolant/bias/bias.hpp"
#include "coolant/core/rng.hpp"
#include "doctest.h"

namespace {

using coolant::Rng;
using coolant::bias::Coordinate;
using coolant::bias::EventSpec;
using coolant::bias::Tail;

EventSpec above(Coordinate c, double t) { return {c, Tail::Greater, t}; }

double closed_form_origin(double rho) {
  return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
}

/// Reference upper tail via the complementary error function.
double phi_bar(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

coolant::bias::InflationConfig base_config(int k, double rho,
                                           std::size_t samples,
                                           std::uint64_t seed) {
  coolant::bias::InflationConfig cfg;
  cfg.correlation = coolant::bias::chain_correlation(k, rho);
  cfg.thresholds.assign(static_cast<std::size_t>(k), 0.0);
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("bias") {

TEST_CASE("indicator covariance on hand-checked sample sets") {
  SUBCASE("all mass at (1,1)") {
    const std::vector<std::pair<double, double>> samples(5, {1.0, 1.0});
    const auto est = coolant::bias::indicator_cov(
        samples, above(Coordinate::X, 0.0), above(Coordinate::Y, 0.0));
    CHECK(est.p_joint == 1.0);
    CHECK(est.product == 1.0);
    CHECK(est.cov_indicators == 0.0);
    CHECK(est.gap == 0.0);
  }

  SUBCASE("perfectly anti-aligned pair") {
    const std::vector<std::pair<double, double>> samples = {{1.0, -1.0},
                                                            {-1.0, 1.0}};
    const auto est = coolant::bias::indicator_cov(
        samples, above(Coordinate::X, 0.0), above(Coordinate::Y, 0.0));
    CHECK(est.p_joint == 0.0);
    CHECK(est.p_u == 0.5);
    CHECK(est.p_v == 0.5);
    CHECK(est.product == 0.25);
    CHECK(est.cov_indicators == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(est.gap == doctest::Approx(0.25).epsilon(1e-15));
  }

  SUBCASE("events may read either coordinate and either tail") {
    const std::vector<std::pair<double, double>> samples = {
        {0.5, 2.0}, {-0.5, 1.0}, {1.5, -2.0}};
    const auto est = coolant::bias::indicator_cov(
        samples, {Coordinate::Y, Tail::Less, 1.5}, above(Coordinate::X, 0.0));
    // Y<1.5 holds for samples 1 and 2; X>0 for samples 0 and 2.
    CHECK(est.p_u == doctest::Approx(2.0 / 3.0));
    CHECK(est.p_v == doctest::Approx(2.0 / 3.0));
    CHECK(est.p_joint == doctest::Approx(1.0 / 3.0));
  }

  SUBCASE("empty input is refused") {
    const std::vector<std::pair<double, double>> none;
    CHECK_THROWS_AS(coolant::bias::indicator_cov(
                        none, above(Coordinate::X, 0.0), above(Coordinate::Y, 0.0)),
                    coolant::bias::EmptySample);
  }
}

TEST_CASE("the decomposition identity is exact on random sample sets") {
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    Rng rng = Rng::derived(trial, "bias.identity");
    const std::size_t n = 1 + rng.index(400);
    std::vector<std::pair<double, double>> samples;
    samples.reserve(n);
    const double rho = rng.uniform(-0.95, 0.95);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = rng.normal();
      const double y = rho * x + std::sqrt(1.0 - rho * rho) * rng.normal();
      samples.emplace_back(x, y);
    }
    const EventSpec u{rng.uniform() < 0.5 ? Coordinate::X : Coordinate::Y,
                      rng.uniform() < 0.5 ? Tail::Greater : Tail::Less,
                      rng.uniform(-1.5, 1.5)};
    const EventSpec v{rng.uniform() < 0.5 ? Coordinate::X : Coordinate::Y,
                      rng.uniform() < 0.5 ? Tail::Greater : Tail::Less,
                      rng.uniform(-1.5, 1.5)};
    const auto est = coolant::bias::indicator_cov(samples, u, v);
    CHECK(std::abs(est.p_joint - est.product - est.cov_indicators) < 1e-12);
    CHECK(est.gap == est.product - est.p_joint);
  }
}

TEST_CASE("flag-vector covariance matches hand arithmetic") {
  const std::vector<char> u = {1, 0, 1};
  const std::vector<char> v = {1, 1, 0};
  // E[uv]=1/3, E[u]=E[v]=2/3 -> cov = 1/3 - 4/9 = -1/9.
  CHECK(coolant::bias::indicator_covariance(u, v) ==
        doctest::Approx(-1.0 / 9.0).epsilon(1e-15));
  CHECK_THROWS_AS(coolant::bias::indicator_covariance({}, {}),
                  coolant::bias::EmptySample);
  CHECK_THROWS_AS(coolant::bias::indicator_covariance({1}, {1, 0}),
                  coolant::bias::EmptySample);
}

TEST_CASE("normal upper tail") {
  CHECK(coolant::bias::normal_upper(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (const double t : {-2.0, -0.7, 0.3, 1.0, 1.96, 3.5}) {
    CHECK(coolant::bias::normal_upper(t) ==
          doctest::Approx(phi_bar(t)).epsilon(1e-13));
  }
  CHECK(coolant::bias::normal_upper(1.0) ==
        doctest::Approx(0.15865525393145707).epsilon(1e-12));
}

TEST_CASE("bivariate orthant probabilities") {
  SUBCASE("independence factorizes") {
    for (const double t1 : {-1.0, 0.0, 0.8}) {
      for (const double t2 : {-0.5, 0.4, 1.5}) {
        const double joint = coolant::bias::gaussian_joint(t1, t2, 0.0);
        CHECK(std::abs(joint - phi_bar(t1) * phi_bar(t2)) < 1e-8);
      }
    }
  }

  SUBCASE("zero-threshold closed form") {
    CHECK(std::abs(coolant::bias::gaussian_joint(0.0, 0.0, 0.5) - 1.0 / 3.0) <
          1e-8);
    CHECK(std::abs(coolant::bias::gaussian_joint(0.0, 0.0, -0.5) - 1.0 / 6.0) <
          1e-8);
    for (double rho = -0.9; rho < 0.95; rho += 0.1) {
      CHECK(std::abs(coolant::bias::gaussian_joint(0.0, 0.0, rho) -
                     closed_form_origin(rho)) < 1e-8);
    }
  }

  SUBCASE("tail flips relabel the axes") {
    const double a = coolant::bias::gaussian_joint(0.3, -0.2, 0.4, Tail::Less,
                                                   Tail::Greater);
    const double b = coolant::bias::gaussian_joint(-0.3, -0.2, -0.4);
    CHECK(std::abs(a - b) < 1e-10);
    // Complement over the second coordinate restores the marginal.
    const double up = coolant::bias::gaussian_joint(0.7, 0.2, 0.3);
    const double down = coolant::bias::gaussian_joint(0.7, 0.2, 0.3,
                                                      Tail::Greater, Tail::Less);
    CHECK(std::abs(up + down - phi_bar(0.7)) < 1e-8);
  }

  SUBCASE("degenerate correlations use the closed forms") {
    CHECK(coolant::bias::gaussian_joint(0.5, 1.2, 1.0) ==
          doctest::Approx(phi_bar(1.2)).epsilon(1e-12));
    CHECK(coolant::bias::gaussian_joint(1.2, 0.5, 1.0) ==
          doctest::Approx(phi_bar(1.2)).epsilon(1e-12));
    // rho=-1: X>t1 and -X>t2 means t1 < X < -t2.
    CHECK(coolant::bias::gaussian_joint(-1.0, -0.5, -1.0) ==
          doctest::Approx(phi_bar(-1.0) - phi_bar(0.5)).epsilon(1e-12));
    CHECK(coolant::bias::gaussian_joint(0.5, 0.5, -1.0) == 0.0);
    CHECK_THROWS_AS(coolant::bias::gaussian_joint(0.0, 0.0, 1.5),
                    std::invalid_argument);
  }
}

TEST_CASE("case checks hold on and off the boundary") {
  CHECK(coolant::bias::case1_check(-0.3, 0.5, 1.0));
  CHECK(coolant::bias::case1_check(0.0, -0.4, 0.9));
  CHECK(coolant::bias::case1_check(-0.9, 0.0, 0.0));
  CHECK(coolant::bias::case2_check(0.3, 0.5, 1.0));
  CHECK(coolant::bias::case2_check(0.0, 0.2, -0.7));
  CHECK(coolant::bias::case2_check(0.9, 0.0, 0.0));
  CHECK_THROWS_AS(coolant::bias::case1_check(0.2, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(coolant::bias::case2_check(-0.2, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("monotonicity scan is non-decreasing in rho") {
  SUBCASE("origin thresholds match the closed form") {
    const auto rows =
        coolant::bias::monotonicity_scan(0.0, 0.0, {-0.9, 0.0, 0.9});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].joint == doctest::Approx(closed_form_origin(-0.9)).epsilon(1e-6));
    CHECK(rows[0].joint == doctest::Approx(0.0717847).epsilon(1e-4));
    CHECK(rows[1].joint == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(rows[2].joint == doctest::Approx(0.4282153).epsilon(1e-4));
    CHECK(rows[0].joint < rows[1].joint);
    CHECK(rows[1].joint < rows[2].joint);
  }

  SUBCASE("single-point grid") {
    const auto rows = coolant::bias::monotonicity_scan(0.3, -0.1, {0.25});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].rho == 0.25);
  }

  SUBCASE("far-tail thresholds") {
    std::vector<double> grid;
    for (double r = -0.8; r <= 0.85; r += 0.2) grid.push_back(r);
    const auto rows = coolant::bias::monotonicity_scan(2.0, 2.0, grid);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].joint >= rows[i - 1].joint - 1e-8);
    }
  }
}

TEST_CASE("correlation builders") {
  const Eigen::MatrixXd chain = coolant::bias::chain_correlation(6, -0.3);
  REQUIRE(chain.rows() == 6);
  REQUIRE(chain.cols() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(chain(i, i) == 1.0);
    for (int j = 0; j < 6; ++j) {
      const double want = std::abs(i - j) == 1 ? -0.3 : (i == j ? 1.0 : 0.0);
      CHECK(chain(i, j) == want);
    }
  }
  // The chain stays positive-definite at any length.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(chain);
  CHECK(es.eigenvalues().minCoeff() > 0.0);

  const Eigen::MatrixXd eq = coolant::bias::equicorrelated(4, -0.3);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(eq(i, j) == (i == j ? 1.0 : -0.3));
    }
  }
  // Six equicorrelated criteria at rho=-0.3 are no longer a valid
  // correlation structure; the simulator must refuse them.
  coolant::bias::InflationConfig bad = base_config(6, -0.3, 1000, 0);
  bad.correlation = coolant::bias::equicorrelated(6, -0.3);
  CHECK_THROWS_AS(coolant::bias::fp_inflation_sim(bad),
                  coolant::bias::NonPSDMatrix);
  coolant::bias::InflationConfig ok = base_config(4, -0.3, 2000, 0);
  ok.correlation = coolant::bias::equicorrelated(4, -0.3);
  CHECK_NOTHROW(coolant::bias::fp_inflation_sim(ok));
}

TEST_CASE("inflation simulation") {
  SUBCASE("one criterion cannot be biased") {
    const auto pts = coolant::bias::fp_inflation_sim(base_config(1, 0.0, 20000, 3));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].k == 1);
    CHECK(pts[0].product_estimate == pts[0].joint_estimate);
    CHECK(pts[0].gap == 0.0);
  }

  SUBCASE("perfect predictors never produce false positives") {
    coolant::bias::InflationConfig cfg = base_config(3, 0.0, 20000, 5);
    cfg.correlation = Eigen::MatrixXd::Identity(3, 3);
    cfg.pred_noise = 0.0;
    for (const auto& pt : coolant::bias::fp_inflation_sim(cfg)) {
      CHECK(pt.fp_fraction == 0.0);
    }
  }

  SUBCASE("negative coupling separates product from joint") {
    const auto pts = coolant::bias::fp_inflation_sim(base_config(2, -0.5, 200000, 7));
    REQUIRE(pts.size() == 2);
    const auto& p2 = pts[1];
    // Closed form: joint 1/6 vs product 1/4.
    CHECK(std::abs(p2.joint_estimate - 1.0 / 6.0) < 5.0 * p2.joint_err);
    CHECK(p2.gap > 5.0 * p2.joint_err);
    CHECK(p2.gap_rel == doctest::Approx(1.0 - p2.joint_estimate /
                                                  p2.product_estimate));
  }

  SUBCASE("runs are deterministic and worker-count independent") {
    const auto cfg = base_config(3, -0.3, 50000, 11);
    const auto a = coolant::bias::fp_inflation_sim(cfg);
    const auto b = coolant::bias::fp_inflation_sim(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].joint_estimate == b[i].joint_estimate);
      CHECK(a[i].product_estimate == b[i].product_estimate);
      CHECK(a[i].fp_fraction == b[i].fp_fraction);
    }
    setenv("COOLANT_THREADS", "2", 1);
    const auto c = coolant::bias::fp_inflation_sim(cfg);
    setenv("COOLANT_THREADS", "1", 1);
    const auto d = coolant::bias::fp_inflation_sim(cfg);
    unsetenv("COOLANT_THREADS");
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].joint_estimate == c[i].joint_estimate);
      CHECK(a[i].joint_estimate == d[i].joint_estimate);
    }
  }

  SUBCASE("config validation") {
    coolant::bias::InflationConfig cfg = base_config(2, 0.2, 1000, 0);
    cfg.thresholds.pop_back();
    CHECK_THROWS_AS(coolant::bias::fp_inflation_sim(cfg), std::invalid_argument);
    cfg = base_config(2, 0.2, 1000, 0);
    cfg.correlation(0, 1) = 0.3;  // asymmetric
    CHECK_THROWS_AS(coolant::bias::fp_inflation_sim(cfg), std::invalid_argument);
    cfg = base_config(2, 0.2, 0, 0);
    CHECK_THROWS_AS(coolant::bias::fp_inflation_sim(cfg), std::invalid_argument);
  }
}

TEST_CASE("inflation CSV lists one row per criterion count") {
  const auto pts = coolant::bias::fp_inflation_sim(base_config(3, -0.2, 5000, 1));
  const auto path =
      (std::filesystem::temp_directory_path() / "coolant_inflation.csv").string();
  coolant::bias::write_inflation_csv(path, pts);
  std::ifstream in(path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line ==
        "k,product,joint,gap,gap_rel,fp_fraction,joint_err,product_err,gap_rel_err");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  std::filesystem::remove(path);
}

}  // TEST_SUITE("bias")
