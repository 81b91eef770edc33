//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/gate/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coolant/core/rng.hpp"
#include "coolant/core/stats.hpp"
#include "coolant/encoder/encoder.hpp"
#include "coolant/gate/losses.hpp"
#include "coolant/nn/optim.hpp"

namespace coolant::gate {

namespace {

struct TaskData {
  std::vector<std::pair<int, double>> train;     // (molecule, standardized y)
  std::unordered_map<int, double> by_molecule;   // standardized train lookup
  std::vector<int> val_molecules;
  std::vector<double> val_truth;                 // raw label units
};

/// Tape-free batched predictions for one task, raw label units.
std::vector<double> predict_many(const GateModel& m,
                                 const std::vector<encoder::FeaturizedGraph>& feats,
                                 const std::vector<int>& molecules, int task) {
  std::vector<double> out;
  if (molecules.empty()) return out;
  std::vector<const encoder::FeaturizedGraph*> parts;
  parts.reserve(molecules.size());
  for (int mol : molecules) parts.push_back(&feats[static_cast<std::size_t>(mol)]);
  const encoder::FeaturizedBatch fb = encoder::featurize_batch(parts);
  const Eigen::MatrixXd z = encoder::encode_batch_infer(fb, m.enc());
  const Eigen::MatrixXd latent = m.has_transfer() ? m.transfer(task).infer(z) : z;
  const Eigen::MatrixXd pred = m.head(task).infer(latent);
  const auto ti = static_cast<std::size_t>(task);
  out.reserve(molecules.size());
  for (Eigen::Index i = 0; i < pred.rows(); ++i) {
    out.push_back(pred(i, 0) * m.label_std()[ti] + m.label_mean()[ti]);
  }
  return out;
}

std::vector<double> validation_r(const GateModel& m,
                                 const std::vector<encoder::FeaturizedGraph>& feats,
                                 const std::vector<TaskData>& tasks) {
  std::vector<double> rs;
  rs.reserve(tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const std::vector<double> pred =
        predict_many(m, feats, tasks[t].val_molecules, static_cast<int>(t));
    rs.push_back(pearson_r(pred, tasks[t].val_truth));
  }
  return rs;
}

}  // namespace

TrainOutcome train_gate(const Dataset& ds, const GateConfig& config) {
  const int n_tasks = ds.n_tasks;
  if (n_tasks < 1) throw std::invalid_argument("train_gate: dataset has no tasks");
  if (ds.graphs.empty()) throw std::invalid_argument("train_gate: empty dataset");
  if (config.perturbations < 1)
    throw std::invalid_argument("train_gate: perturbations must be >= 1");
  if (config.alpha < 0.0 || config.beta < 0.0 || config.gamma < 0.0 ||
      config.delta < 0.0)
    throw std::invalid_argument("train_gate: loss weights must be >= 0");

  GateModel model = GateModel::create(config, n_tasks);
  const bool transfer = model.has_transfer();
  const int d = config.enc.latent;

  // Per-task 90/10 split (stream keyed by the task id) and standardization
  // from the training portion only.
  std::vector<TaskData> tasks(static_cast<std::size_t>(n_tasks));
  for (int t = 0; t < n_tasks; ++t) {
    const auto& items = ds.labels[static_cast<std::size_t>(t)];
    if (items.empty())
      throw std::invalid_argument("train_gate: task " + std::to_string(t) +
                                  " has no labels");
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng split = Rng::derived(config.seed, "split.task" + std::to_string(t));
    split.shuffle(order);
    std::size_t n_val = static_cast<std::size_t>(
        std::floor(config.val_fraction * static_cast<double>(items.size())));
    if (n_val >= items.size()) n_val = items.size() - 1;

    TaskData& td = tasks[static_cast<std::size_t>(t)];
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t k = n_val; k < order.size(); ++k) {
      const auto& [mol, y] = items[order[k]];
      td.train.emplace_back(mol, y);
      sum += y;
      sum_sq += y * y;
    }
    const double n_train = static_cast<double>(td.train.size());
    const double mean = sum / n_train;
    double sd = std::sqrt(std::max(0.0, sum_sq / n_train - mean * mean));
    if (sd < 1e-12) sd = 1.0;
    model.label_mean()[static_cast<std::size_t>(t)] = mean;
    model.label_std()[static_cast<std::size_t>(t)] = sd;
    for (auto& [mol, y] : td.train) {
      y = (y - mean) / sd;
      td.by_molecule[mol] = y;
    }
    for (std::size_t k = 0; k < n_val; ++k) {
      const auto& [mol, y] = items[order[k]];
      td.val_molecules.push_back(mol);
      td.val_truth.push_back(y);
    }
  }

  // Batch pool: molecules carrying at least one training label. The eval
  // block never acquires labels, so it stays out automatically.
  std::vector<char> pooled(ds.graphs.size(), 0);
  for (const TaskData& td : tasks) {
    for (const auto& [mol, y] : td.train) pooled[static_cast<std::size_t>(mol)] = 1;
  }
  std::vector<int> pool;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    if (pooled[i]) pool.push_back(static_cast<int>(i));
  }
  const std::size_t batch_size =
      std::min(static_cast<std::size_t>(std::max(1, config.batch)), pool.size());

  std::vector<encoder::FeaturizedGraph> feats;
  feats.reserve(ds.graphs.size());
  for (const auto& g : ds.graphs) feats.push_back(encoder::featurize(g));

  nn::AdamConfig adam;
  adam.lr = config.lr;
  adam.weight_decay = config.weight_decay;
  nn::Adam opt(model.params(), adam);

  Rng shuffle_rng = Rng::derived(config.seed, "train.shuffle");
  Rng pair_rng = Rng::derived(config.seed, "train.pairs");
  Rng perturb_rng = Rng::derived(config.seed, "train.perturb");

  TrainOutcome out;
  out.epochs.reserve(static_cast<std::size_t>(config.epochs));

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::vector<int> order = pool;
    shuffle_rng.shuffle(order);
    EpochMetrics em;
    em.epoch = epoch;
    int steps = 0;

    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t stop = std::min(start + batch_size, order.size());
      const std::vector<int> mols(order.begin() + static_cast<std::ptrdiff_t>(start),
                                  order.begin() + static_cast<std::ptrdiff_t>(stop));

      // Labeled rows per task within this batch.
      std::vector<int> present;
      std::vector<std::vector<int>> rows_of(static_cast<std::size_t>(n_tasks));
      std::vector<std::vector<double>> ys_of(static_cast<std::size_t>(n_tasks));
      for (int t = 0; t < n_tasks; ++t) {
        const auto ti = static_cast<std::size_t>(t);
        for (std::size_t k = 0; k < mols.size(); ++k) {
          const auto it = tasks[ti].by_molecule.find(mols[k]);
          if (it == tasks[ti].by_molecule.end()) continue;
          rows_of[ti].push_back(static_cast<int>(k));
          ys_of[ti].push_back(it->second);
        }
        if (!rows_of[ti].empty()) present.push_back(t);
      }
      if (present.empty()) continue;

      // Ordered task pair (s, t), uniform over tasks present in the batch;
      // no draw is consumed when only one task is present (so single-task
      // runs never touch the pair stream).
      int s = present[0];
      int t = present[0];
      if (present.size() >= 2) {
        const std::size_t i = pair_rng.index(present.size());
        std::size_t j = pair_rng.index(present.size() - 1);
        if (j >= i) ++j;
        s = present[i];
        t = present[j];
      }

      std::vector<const encoder::FeaturizedGraph*> parts;
      parts.reserve(mols.size());
      for (int mol : mols) parts.push_back(&feats[static_cast<std::size_t>(mol)]);
      const encoder::FeaturizedBatch fb = encoder::featurize_batch(parts);

      nn::Tape tape;
      nn::Var z = encoder::encode_batch(tape, fb, model.enc());

      // L_reg: squared error over every labeled (molecule, task) entry in
      // the batch, normalized by the entry count.
      nn::Var reg_sum{};
      bool have_reg = false;
      std::size_t n_labels = 0;
      for (int tau : present) {
        const auto ti = static_cast<std::size_t>(tau);
        nn::Var z_rows = tape.gather_rows(z, rows_of[ti]);
        nn::Var latent =
            transfer ? model.transfer(tau).forward(tape, z_rows) : z_rows;
        nn::Var pred = model.head(tau).forward(tape, latent);
        Eigen::MatrixXd y(static_cast<Eigen::Index>(ys_of[ti].size()), 1);
        for (std::size_t k = 0; k < ys_of[ti].size(); ++k) {
          y(static_cast<Eigen::Index>(k), 0) = ys_of[ti][k];
        }
        nn::Var ss = tape.sum_sq(tape.sub(pred, tape.constant(std::move(y))));
        reg_sum = have_reg ? tape.add(reg_sum, ss) : ss;
        have_reg = true;
        n_labels += ys_of[ti].size();
      }
      nn::Var reg = tape.scale(reg_sum, 1.0 / static_cast<double>(n_labels));
      nn::Var total = reg;

      double v_auto = 0.0, v_cons = 0.0, v_map = 0.0, v_dis = 0.0;
      if (transfer) {
        if (config.alpha > 0.0) {
          nn::Var z_hat =
              model.inverse(t).forward(tape, model.transfer(t).forward(tape, z));
          nn::Var la = loss_auto(tape, z, z_hat);
          total = tape.add(total, tape.scale(la, config.alpha));
          v_auto = tape.value(la)(0, 0);
        }
        if (config.beta > 0.0 && s != t) {
          nn::Var m_s = model.transfer(s).forward(tape, z);
          nn::Var m_t = model.transfer(t).forward(tape, z);
          nn::Var lc = loss_cons(tape, m_s, m_t);
          total = tape.add(total, tape.scale(lc, config.beta));
          v_cons = tape.value(lc)(0, 0);
        }
        if (config.gamma > 0.0 && !rows_of[static_cast<std::size_t>(t)].empty()) {
          const auto ti = static_cast<std::size_t>(t);
          nn::Var z_t = tape.gather_rows(z, rows_of[ti]);
          nn::Var routed = model.transfer(t).forward(
              tape, model.inverse(s).forward(
                        tape, model.transfer(s).forward(tape, z_t)));
          nn::Var pred = model.head(t).forward(tape, routed);
          Eigen::MatrixXd y(static_cast<Eigen::Index>(ys_of[ti].size()), 1);
          for (std::size_t k = 0; k < ys_of[ti].size(); ++k) {
            y(static_cast<Eigen::Index>(k), 0) = ys_of[ti][k];
          }
          nn::Var lm = loss_map(tape, pred, tape.constant(std::move(y)));
          total = tape.add(total, tape.scale(lm, config.gamma));
          v_map = tape.value(lm)(0, 0);
        }
        if (config.delta > 0.0 && s != t) {
          const int M = config.perturbations;
          const int nb = static_cast<int>(mols.size());
          std::vector<int> rep;
          rep.reserve(static_cast<std::size_t>(nb) * static_cast<std::size_t>(M));
          for (int i = 0; i < nb; ++i) {
            for (int j = 0; j < M; ++j) rep.push_back(i);
          }
          Eigen::MatrixXd noise(static_cast<Eigen::Index>(rep.size()), d);
          for (Eigen::Index r = 0; r < noise.rows(); ++r) {
            for (Eigen::Index c = 0; c < noise.cols(); ++c) {
              noise(r, c) = config.sigma * perturb_rng.normal();
            }
          }
          nn::Var pivots = tape.gather_rows(z, rep);
          nn::Var pert = tape.add(pivots, tape.constant(std::move(noise)));
          nn::Var mp_s = model.transfer(s).forward(tape, pivots);
          nn::Var mq_s = model.transfer(s).forward(tape, pert);
          nn::Var mp_t = model.transfer(t).forward(tape, pivots);
          nn::Var mq_t = model.transfer(t).forward(tape, pert);
          nn::Var ld = loss_dis(tape, mp_s, mq_s, mp_t, mq_t);
          total = tape.add(total, tape.scale(ld, config.delta));
          v_dis = tape.value(ld)(0, 0);
        }
      }

      const double v_total = tape.value(total)(0, 0);
      if (!std::isfinite(v_total)) {
        throw DivergenceDetected("non-finite loss at epoch " +
                                 std::to_string(epoch) + ", step " +
                                 std::to_string(steps + 1));
      }

      model.params().zero_grads();
      tape.backward(total);
      opt.step();

      em.loss_total += v_total;
      em.loss_reg += tape.value(reg)(0, 0);
      em.loss_auto += v_auto;
      em.loss_cons += v_cons;
      em.loss_map += v_map;
      em.loss_dis += v_dis;
      ++steps;
    }

    if (steps > 0) {
      const double inv = 1.0 / static_cast<double>(steps);
      em.loss_total *= inv;
      em.loss_reg *= inv;
      em.loss_auto *= inv;
      em.loss_cons *= inv;
      em.loss_map *= inv;
      em.loss_dis *= inv;
    }
    em.val_r = validation_r(model, feats, tasks);
    out.epochs.push_back(std::move(em));
  }

  out.model = std::move(model);
  return out;
}

TrainOutcome train_stl(const Dataset& ds, int task, const GateConfig& config) {
  GateConfig stl = config;
  stl.alpha = 0.0;
  stl.beta = 0.0;
  stl.gamma = 0.0;
  stl.delta = 0.0;
  return train_gate(ds.task_view(task), stl);
}

double eval_pearson(const GateModel& model, const Dataset& ds, int task) {
  if (ds.eval_molecules.empty()) return 0.0;
  const auto ti = static_cast<std::size_t>(task);
  if (ti >= ds.eval_labels.size() || task >= model.n_tasks()) return 0.0;
  std::vector<double> pred;
  pred.reserve(ds.eval_molecules.size());
  for (int mol : ds.eval_molecules) {
    pred.push_back(model.predict(ds.graphs[static_cast<std::size_t>(mol)])[ti]);
  }
  return pearson_r(pred, ds.eval_labels[ti]);
}

void write_metrics_jsonl(const std::string& path,
                         const std::vector<EpochMetrics>& epochs) {
  std::ofstream fout(path);
  if (!fout) throw std::runtime_error("cannot open " + path + " for writing");
  for (const EpochMetrics& em : epochs) {
    nlohmann::json j{{"epoch", em.epoch},       {"loss_total", em.loss_total},
                     {"loss_reg", em.loss_reg}, {"loss_auto", em.loss_auto},
                     {"loss_cons", em.loss_cons}, {"loss_map", em.loss_map},
                     {"loss_dis", em.loss_dis},  {"val_r", em.val_r}};
    fout << j.dump() << "\n";
  }
}

}  // namespace coolant::gate
