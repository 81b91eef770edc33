//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "coolant/bias/bias.hpp"
#include "coolant/core/rng.hpp"
#include "coolant/core/threads.hpp"

namespace coolant::bias {

Eigen::MatrixXd chain_correlation(int k, double rho) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(k, k);
  for (int i = 0; i + 1 < k; ++i) {
    m(i, i + 1) = rho;
    m(i + 1, i) = rho;
  }
  return m;
}

Eigen::MatrixXd equicorrelated(int k, double rho) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(k, k, rho);
  m.diagonal().setOnes();
  return m;
}

namespace {

struct ChunkCounts {
  std::vector<std::uint64_t> marginal;  // per criterion
  std::uint64_t joint_true = 0;
  std::uint64_t pred_all = 0;
  std::uint64_t pred_all_false = 0;  // predicted pass, truly failing
};

/// Factor A with A A^T = sigma, via eigendecomposition (tolerates the
/// PSD-but-singular boundary). Throws NonPSDMatrix below -1e-10.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  const double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -1e-10) {
    throw NonPSDMatrix("correlation matrix has eigenvalue " +
                       std::to_string(min_ev));
  }
  const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * clamped.asDiagonal();
}

ChunkCounts run_chunk(const Eigen::MatrixXd& factor,
                      const std::vector<double>& thresholds, double pred_noise,
                      std::size_t count, Rng rng) {
  const int k = static_cast<int>(factor.rows());
  ChunkCounts counts;
  counts.marginal.assign(static_cast<std::size_t>(k), 0);
  Eigen::VectorXd g(k);
  Eigen::VectorXd x(k);
  for (std::size_t s = 0; s < count; ++s) {
    for (int i = 0; i < k; ++i) g(i) = rng.normal();
    x.noalias() = factor * g;
    bool all_true = true;
    bool all_pred = true;
    for (int i = 0; i < k; ++i) {
      const double t = thresholds[static_cast<std::size_t>(i)];
      const bool truth = x(i) > t;
      const bool pred = x(i) + pred_noise * rng.normal() > t;
      if (truth) ++counts.marginal[static_cast<std::size_t>(i)];
      all_true = all_true && truth;
      all_pred = all_pred && pred;
    }
    if (all_true) ++counts.joint_true;
    if (all_pred) {
      ++counts.pred_all;
      if (!all_true) ++counts.pred_all_false;
    }
  }
  return counts;
}

}  // namespace

std::vector<InflationPoint> fp_inflation_sim(const InflationConfig& config) {
  const Eigen::MatrixXd& sigma = config.correlation;
  const int k_max = static_cast<int>(sigma.rows());
  if (k_max < 1 || sigma.cols() != sigma.rows()) {
    throw std::invalid_argument("fp_inflation_sim: correlation must be square");
  }
  if (!sigma.isApprox(sigma.transpose(), 1e-12)) {
    throw std::invalid_argument("fp_inflation_sim: correlation must be symmetric");
  }
  for (int i = 0; i < k_max; ++i) {
    if (std::abs(sigma(i, i) - 1.0) > 1e-12) {
      throw std::invalid_argument("fp_inflation_sim: unit diagonal required");
    }
  }
  if (static_cast<int>(config.thresholds.size()) != k_max) {
    throw std::invalid_argument("fp_inflation_sim: one threshold per criterion");
  }
  if (config.samples == 0 || config.chunks < 1) {
    throw std::invalid_argument("fp_inflation_sim: need samples and chunks");
  }
  psd_factor(sigma);  // validate the full matrix up front

  std::vector<InflationPoint> points;
  points.reserve(static_cast<std::size_t>(k_max));

  for (int k = 1; k <= k_max; ++k) {
    const Eigen::MatrixXd factor = psd_factor(sigma.topLeftCorner(k, k));
    const std::vector<double> thresholds(config.thresholds.begin(),
                                         config.thresholds.begin() + k);

    const auto chunks = static_cast<std::size_t>(config.chunks);
    std::vector<ChunkCounts> partial(chunks);
    const std::size_t base = config.samples / chunks;
    const std::size_t extra = config.samples % chunks;

    const auto run = [&](std::size_t c) {
      const std::size_t count = base + (c == chunks - 1 ? extra : 0);
      Rng rng = Rng::derived(config.seed, "inflation.k" + std::to_string(k) +
                                              ".chunk" + std::to_string(c));
      partial[c] = run_chunk(factor, thresholds, config.pred_noise, count,
                             std::move(rng));
    };

    const unsigned workers = std::min<unsigned>(worker_count(),
                                                static_cast<unsigned>(chunks));
    if (workers <= 1) {
      for (std::size_t c = 0; c < chunks; ++c) run(c);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t c = w; c < chunks; c += workers) run(c);
        });
      }
      for (auto& th : pool) th.join();
    }

    // Deterministic reduce in chunk order.
    ChunkCounts total;
    total.marginal.assign(static_cast<std::size_t>(k), 0);
    for (const ChunkCounts& c : partial) {
      for (int i = 0; i < k; ++i) {
        total.marginal[static_cast<std::size_t>(i)] +=
            c.marginal[static_cast<std::size_t>(i)];
      }
      total.joint_true += c.joint_true;
      total.pred_all += c.pred_all;
      total.pred_all_false += c.pred_all_false;
    }

    const double n = static_cast<double>(config.samples);
    InflationPoint pt;
    pt.k = k;
    pt.joint_estimate = static_cast<double>(total.joint_true) / n;
    pt.product_estimate = 1.0;
    double product_rel_var = 0.0;
    for (int i = 0; i < k; ++i) {
      const double p =
          static_cast<double>(total.marginal[static_cast<std::size_t>(i)]) / n;
      pt.product_estimate *= p;
      if (p > 0.0) product_rel_var += (1.0 - p) / (n * p);
    }
    pt.gap = pt.product_estimate - pt.joint_estimate;
    pt.joint_err =
        std::sqrt(pt.joint_estimate * (1.0 - pt.joint_estimate) / n);
    pt.product_err = pt.product_estimate * std::sqrt(product_rel_var);
    if (pt.product_estimate > 0.0) {
      const double ratio = pt.joint_estimate / pt.product_estimate;
      pt.gap_rel = 1.0 - ratio;
      double ratio_rel_var = product_rel_var;
      if (pt.joint_estimate > 0.0) {
        ratio_rel_var +=
            (1.0 - pt.joint_estimate) / (n * pt.joint_estimate);
      }
      pt.gap_rel_err = ratio * std::sqrt(ratio_rel_var);
    }
    pt.fp_fraction =
        total.pred_all > 0
            ? static_cast<double>(total.pred_all_false) /
                  static_cast<double>(total.pred_all)
            : 0.0;
    points.push_back(pt);
  }
  return points;
}

void write_inflation_csv(const std::string& path,
                         const std::vector<InflationPoint>& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "k,product,joint,gap,gap_rel,fp_fraction,joint_err,product_err,"
         "gap_rel_err\n";
  out.precision(10);
  for (const InflationPoint& p : points) {
    out << p.k << "," << p.product_estimate << "," << p.joint_estimate << ","
        << p.gap << "," << p.gap_rel << "," << p.fp_fraction << ","
        << p.joint_err << "," << p.product_err << "," << p.gap_rel_err << "\n";
  }
}

}  // namespace coolant::bias
