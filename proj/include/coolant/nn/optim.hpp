//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Core>
#include <vector>

#include "coolant/nn/tape.hpp"

namespace coolant::nn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;  // decoupled (AdamW); 0 reduces to plain Adam
};

/// Adam / AdamW over a ParamStore. Moments are kept per tensor in store
/// order; with weight_decay = 0 the update is bit-for-bit plain Adam.
class Adam {
public:
  Adam(ParamStore& params, AdamConfig config);

  /// One bias-corrected update from the current Tensor::grad values.
  void step();

  int steps_taken() const { return t_; }
  const AdamConfig& config() const { return config_; }

private:
  ParamStore& params_;
  AdamConfig config_;
  std::vector<Eigen::MatrixXd> m_;
  std::vector<Eigen::MatrixXd> v_;
  int t_ = 0;
};

}  // namespace coolant::nn
