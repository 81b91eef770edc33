//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/nn/optim.hpp"

#include <cmath>

namespace coolant::nn {

Adam::Adam(ParamStore& params, AdamConfig config)
    : params_(params), config_(config) {
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Tensor& t = params.at(i);
    m_.emplace_back(Eigen::MatrixXd::Zero(t.value.rows(), t.value.cols()));
    v_.emplace_back(Eigen::MatrixXd::Zero(t.value.rows(), t.value.cols()));
  }
}

void Adam::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(config_.beta1, t_);
  const double bc2 = 1.0 - std::pow(config_.beta2, t_);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    Tensor& p = params_.at(i);
    if (p.grad.rows() != p.value.rows() || p.grad.cols() != p.value.cols()) {
      throw ShapeMismatch("adam: grad shape != value shape for " + p.name);
    }
    Eigen::MatrixXd& m = m_[i];
    Eigen::MatrixXd& v = v_[i];
    m = config_.beta1 * m + (1.0 - config_.beta1) * p.grad;
    v = config_.beta2 * v + (1.0 - config_.beta2) * p.grad.cwiseProduct(p.grad);
    const Eigen::MatrixXd m_hat = m / bc1;
    const Eigen::MatrixXd v_hat = v / bc2;
    if (config_.weight_decay != 0.0) {
      p.value -= config_.lr * config_.weight_decay * p.value;
    }
    p.value.array() -=
        config_.lr * m_hat.array() / (v_hat.array().sqrt() + config_.eps);
  }
}

}  // namespace coolant::nn
