//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "coolant/core/rng.hpp"
#include "coolant/core/stats.hpp"
#include "coolant/gate/train.hpp"
#include "coolant/nn/optim.hpp"
#include "coolant/surrogate/surrogate.hpp"

namespace coolant::surrogate {

std::vector<std::pair<int, int>> sample_pairs(std::size_t n, std::size_t m,
                                              double fraction,
                                              std::uint64_t seed) {
  const std::size_t total = n * m;
  if (total == 0) return {};
  std::size_t k = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(total)));
  k = std::clamp<std::size_t>(k, 1, total);

  Rng rng = Rng::derived(seed, "surrogate.pairs");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(k);
  if (k * 4 >= total) {
    const std::vector<std::size_t> flat = rng.sample_without_replacement(total, k);
    for (std::size_t f : flat) {
      pairs.emplace_back(static_cast<int>(f / m), static_cast<int>(f % m));
    }
  } else {
    // Sparse regime: rejection sampling avoids materializing the grid.
    std::unordered_set<std::size_t> seen;
    seen.reserve(k * 2);
    while (pairs.size() < k) {
      const std::size_t f = rng.index(total);
      if (seen.insert(f).second) {
        pairs.emplace_back(static_cast<int>(f / m), static_cast<int>(f % m));
      }
    }
  }
  return pairs;
}

PairSample build_distillation(const reactor::ReactantSets& sets,
                              const EmbeddingTable& table,
                              const gate::GateModel& teacher,
                              const std::vector<std::pair<int, int>>& pairs) {
  if (teacher.n_tasks() != kTaskCount) {
    throw TeacherUnavailable("build_distillation: teacher must carry one head per property");
  }
  PairSample sample;
  sample.pairs = pairs;
  const int d = table.dim();
  sample.inputs.resize(static_cast<Eigen::Index>(pairs.size()), 2 * d);
  sample.targets.resize(static_cast<Eigen::Index>(pairs.size()), kTaskCount);
  const std::size_t n_chlorides = sets.chlorides.size();
  for (std::size_t row = 0; row < pairs.size(); ++row) {
    const auto [i, j] = pairs[row];
    const reactor::Reactant& alcohol = sets.alcohols.at(static_cast<std::size_t>(i));
    const bool ether = static_cast<std::size_t>(j) < n_chlorides;
    const reactor::Reactant& partner =
        ether ? sets.chlorides.at(static_cast<std::size_t>(j))
              : sets.acids.at(static_cast<std::size_t>(j) - n_chlorides);
    sample.inputs.row(static_cast<Eigen::Index>(row)) =
        surrogate_input(alcohol.smiles, partner.smiles, table);
    const reactor::ProductRecord rec =
        ether ? reactor::williamson(alcohol.graph, partner.graph)
              : reactor::esterify(alcohol.graph, partner.graph);
    const std::vector<double> y = teacher.predict(rec.product);
    for (int t = 0; t < kTaskCount; ++t) {
      sample.targets(static_cast<Eigen::Index>(row), t) = y[static_cast<std::size_t>(t)];
    }
  }
  return sample;
}

SurrogateTrainOutcome train_surrogate(const PairSample& sample,
                                      const SurrogateConfig& config) {
  const Eigen::Index n = sample.inputs.rows();
  if (n < 1) throw std::invalid_argument("train_surrogate: empty sample");
  if (sample.inputs.cols() != 2 * config.latent)
    throw std::invalid_argument("train_surrogate: input width mismatch");
  if (sample.targets.cols() != kTaskCount || sample.targets.rows() != n)
    throw std::invalid_argument("train_surrogate: target shape mismatch");

  SurrogateModel model = SurrogateModel::create(config);

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng split = Rng::derived(config.seed, "surrogate.split");
  split.shuffle(order);
  std::size_t n_val = static_cast<std::size_t>(
      std::floor(config.val_fraction * static_cast<double>(n)));
  if (n_val >= order.size()) n_val = order.size() - 1;
  const std::size_t n_train = order.size() - n_val;

  Eigen::MatrixXd x_train(static_cast<Eigen::Index>(n_train), sample.inputs.cols());
  Eigen::MatrixXd y_train(static_cast<Eigen::Index>(n_train), kTaskCount);
  Eigen::MatrixXd x_val(static_cast<Eigen::Index>(n_val), sample.inputs.cols());
  Eigen::MatrixXd y_val(static_cast<Eigen::Index>(n_val), kTaskCount);
  for (std::size_t k = 0; k < n_val; ++k) {
    x_val.row(static_cast<Eigen::Index>(k)) =
        sample.inputs.row(static_cast<Eigen::Index>(order[k]));
    y_val.row(static_cast<Eigen::Index>(k)) =
        sample.targets.row(static_cast<Eigen::Index>(order[k]));
  }
  for (std::size_t k = 0; k < n_train; ++k) {
    x_train.row(static_cast<Eigen::Index>(k)) =
        sample.inputs.row(static_cast<Eigen::Index>(order[n_val + k]));
    y_train.row(static_cast<Eigen::Index>(k)) =
        sample.targets.row(static_cast<Eigen::Index>(order[n_val + k]));
  }

  // Standardize targets per task from the training rows.
  for (int t = 0; t < kTaskCount; ++t) {
    const double mean = y_train.col(t).mean();
    double sd = std::sqrt(
        (y_train.col(t).array() - mean).square().sum() /
        static_cast<double>(n_train));
    if (sd < 1e-12) sd = 1.0;
    model.label_mean()[static_cast<std::size_t>(t)] = mean;
    model.label_std()[static_cast<std::size_t>(t)] = sd;
    y_train.col(t) = (y_train.col(t).array() - mean) / sd;
  }

  nn::AdamConfig adam;
  adam.lr = config.lr;
  nn::Adam opt(model.params(), adam);
  Rng shuffle_rng = Rng::derived(config.seed, "surrogate.shuffle");

  const std::size_t batch =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, config.batch)),
                            n_train);
  std::vector<std::size_t> perm(n_train);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  SurrogateTrainOutcome out;
  out.epoch_loss.reserve(static_cast<std::size_t>(config.epochs));

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_rng.shuffle(perm);
    double epoch_loss = 0.0;
    int steps = 0;
    for (std::size_t start = 0; start < perm.size(); start += batch) {
      const std::size_t stop = std::min(start + batch, perm.size());
      const auto nb = static_cast<Eigen::Index>(stop - start);
      Eigen::MatrixXd xb(nb, x_train.cols());
      Eigen::MatrixXd yb(nb, kTaskCount);
      for (std::size_t k = start; k < stop; ++k) {
        xb.row(static_cast<Eigen::Index>(k - start)) =
            x_train.row(static_cast<Eigen::Index>(perm[k]));
        yb.row(static_cast<Eigen::Index>(k - start)) =
            y_train.row(static_cast<Eigen::Index>(perm[k]));
      }

      nn::Tape tape;
      nn::Var x = tape.constant(std::move(xb));
      nn::Var h = tape.leaky_relu(model.trunk().forward(tape, x), config.slope);
      nn::Var total{};
      bool have = false;
      for (int t = 0; t < kTaskCount; ++t) {
        nn::Var pred = model.tower(t).forward(tape, h);
        nn::Var y = tape.constant(yb.col(t));
        nn::Var l = tape.mse(pred, y);
        total = have ? tape.add(total, l) : l;
        have = true;
      }
      const double v = tape.value(total)(0, 0);
      if (!std::isfinite(v)) {
        throw gate::DivergenceDetected("surrogate loss non-finite at epoch " +
                                       std::to_string(epoch));
      }
      model.params().zero_grads();
      tape.backward(total);
      opt.step();
      epoch_loss += v;
      ++steps;
    }
    out.epoch_loss.push_back(steps > 0 ? epoch_loss / steps : 0.0);
  }

  out.val_r.assign(kTaskCount, 0.0);
  out.val_mae.assign(kTaskCount, 0.0);
  if (n_val > 0) {
    const Eigen::MatrixXd pred = model.predict_rows(x_val);
    for (int t = 0; t < kTaskCount; ++t) {
      std::vector<double> p(static_cast<std::size_t>(n_val));
      std::vector<double> y(static_cast<std::size_t>(n_val));
      for (std::size_t k = 0; k < n_val; ++k) {
        p[k] = pred(static_cast<Eigen::Index>(k), t);
        y[k] = y_val(static_cast<Eigen::Index>(k), t);
      }
      out.val_r[static_cast<std::size_t>(t)] = pearson_r(p, y);
      out.val_mae[static_cast<std::size_t>(t)] = mean_abs_error(p, y);
    }
  }
  out.model = std::move(model);
  return out;
}

FidelityReport fidelity_report(const SurrogateModel& model,
                               const PairSample& holdout) {
  FidelityReport report;
  report.pearson.assign(kTaskCount, 0.0);
  report.mae.assign(kTaskCount, 0.0);
  const Eigen::Index n = holdout.inputs.rows();
  if (n == 0) return report;
  const Eigen::MatrixXd pred = model.predict_rows(holdout.inputs);
  for (int t = 0; t < kTaskCount; ++t) {
    std::vector<double> p(static_cast<std::size_t>(n));
    std::vector<double> y(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      p[static_cast<std::size_t>(k)] = pred(k, t);
      y[static_cast<std::size_t>(k)] = holdout.targets(k, t);
    }
    report.pearson[static_cast<std::size_t>(t)] = pearson_r(p, y);
    report.mae[static_cast<std::size_t>(t)] = mean_abs_error(p, y);
  }
  return report;
}

void write_fidelity_csv(const std::string& path, const FidelityReport& report,
                        const std::vector<std::string>& task_names) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "task,pearson_r,mae\n";
  out.precision(10);
  for (std::size_t t = 0; t < report.pearson.size(); ++t) {
    const std::string name =
        t < task_names.size() ? task_names[t] : "task" + std::to_string(t);
    out << name << "," << report.pearson[t] << "," << report.mae[t] << "\n";
  }
}

}  // namespace coolant::surrogate
