//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/nn/mlp.hpp"

#include <stdexcept>

namespace coolant::nn {

Mlp Mlp::create(ParamStore& params, const std::string& prefix,
                const std::vector<int>& dims, std::uint64_t seed, double slope) {
  if (dims.size() < 2) throw std::invalid_argument("mlp needs >= 2 dims");
  Mlp mlp;
  mlp.slope = slope;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const std::string tag = std::to_string(k);
    Tensor& w = params.create(prefix + ".w" + tag, dims[k + 1], dims[k]);
    Tensor& b = params.create(prefix + ".b" + tag, dims[k + 1], 1);
    xavier_uniform(w, seed);
    mlp.weights.push_back(&w);
    mlp.biases.push_back(&b);
  }
  return mlp;
}

Mlp Mlp::attach(ParamStore& params, const std::string& prefix,
                std::size_t layers, double slope) {
  Mlp mlp;
  mlp.slope = slope;
  for (std::size_t k = 0; k < layers; ++k) {
    const std::string tag = std::to_string(k);
    Tensor* w = params.find(prefix + ".w" + tag);
    Tensor* b = params.find(prefix + ".b" + tag);
    if (w == nullptr || b == nullptr) {
      throw std::runtime_error("missing mlp tensors for " + prefix);
    }
    mlp.weights.push_back(w);
    mlp.biases.push_back(b);
  }
  return mlp;
}

Var Mlp::forward(Tape& tape, Var x) const {
  Var h = x;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    h = tape.affine(h, tape.param(*weights[k]), tape.param(*biases[k]));
    if (k + 1 < weights.size()) h = tape.leaky_relu(h, slope);
  }
  return h;
}

Eigen::MatrixXd Mlp::infer(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd h = x;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    h = h * weights[k]->value.transpose();
    h.rowwise() += biases[k]->value.col(0).transpose();
    if (k + 1 < weights.size()) {
      const double s = slope;
      h = h.unaryExpr([s](double v) { return v > 0.0 ? v : s * v; });
    }
  }
  return h;
}

}  // namespace coolant::nn
