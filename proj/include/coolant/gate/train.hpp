//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "coolant/gate/dataset.hpp"
#include "coolant/gate/model.hpp"

namespace coolant::gate {

/// Non-finite training loss.
struct DivergenceDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EpochMetrics {
  int epoch = 0;       // 1-based
  double loss_total = 0.0;
  double loss_reg = 0.0;
  double loss_auto = 0.0;
  double loss_cons = 0.0;
  double loss_map = 0.0;
  double loss_dis = 0.0;
  std::vector<double> val_r;  // per task, on the 10% validation labels
};

struct TrainOutcome {
  GateModel model;
  std::vector<EpochMetrics> epochs;
};

/// Full five-term training loop. Deterministic given config.seed: validation
/// splits, epoch shuffles, task-pair choices and latent perturbations each
/// consume their own named RNG stream.
TrainOutcome train_gate(const Dataset& ds, const GateConfig& config);

/// Single-task baseline: task `t` of the dataset, all alignment weights
/// forced to zero — by construction the same optimizer, labels and parameter
/// streams as a one-task zero-weight GATE run, hence bit-identical to it.
TrainOutcome train_stl(const Dataset& ds, int task, const GateConfig& config);

/// Pearson r between predictions and truth on the dataset's held-out eval
/// block for one task; 0 when the block is absent.
double eval_pearson(const GateModel& model, const Dataset& ds, int task);

/// One JSON object per epoch (loss components + per-task validation r).
void write_metrics_jsonl(const std::string& path,
                         const std::vector<EpochMetrics>& epochs);

}  // namespace coolant::gate
