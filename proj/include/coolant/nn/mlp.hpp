//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "coolant/nn/tape.hpp"

namespace coolant::nn {

/// Fully connected stack with LeakyReLU between layers and a linear output.
/// Tensors are named `<prefix>.w<k>` / `<prefix>.b<k>` and initialized from
/// streams keyed by those names. `dims` = {in, hidden..., out}; a two-entry
/// dims list is a single affine map.
struct Mlp {
  std::vector<Tensor*> weights;
  std::vector<Tensor*> biases;
  double slope = 0.01;

  static Mlp create(ParamStore& params, const std::string& prefix,
                    const std::vector<int>& dims, std::uint64_t seed,
                    double slope = 0.01);

  /// Attaches to tensors previously created (e.g. loaded from a file).
  static Mlp attach(ParamStore& params, const std::string& prefix,
                    std::size_t layers, double slope = 0.01);

  Var forward(Tape& tape, Var x) const;

  /// Tape-free forward for the screening hot path; identical arithmetic.
  Eigen::MatrixXd infer(const Eigen::MatrixXd& x) const;
};

}  // namespace coolant::nn
