//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Core>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "coolant/core/rng.hpp"

namespace coolant::nn {

struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StaleTape : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Named trainable parameter. The tape accumulates adjoints into `grad`.
struct Tensor {
  std::string name;
  Eigen::MatrixXd value;
  Eigen::MatrixXd grad;

  void zero_grad() { grad.setZero(value.rows(), value.cols()); }
};

/// Ordered parameter collection. Creation order is the optimizer's iteration
/// order, so it is part of the determinism contract.
class ParamStore {
public:
  Tensor& create(const std::string& name, Eigen::Index rows, Eigen::Index cols);
  Tensor* find(const std::string& name);
  const Tensor* find(const std::string& name) const;

  std::size_t size() const { return slots_.size(); }
  Tensor& at(std::size_t i) { return *slots_[i]; }
  const Tensor& at(std::size_t i) const { return *slots_[i]; }

  void zero_grads();

private:
  std::vector<std::unique_ptr<Tensor>> slots_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Xavier-uniform fill from an RNG stream derived from (seed, tensor name),
/// so a tensor's initial values depend only on its name and the run seed,
/// never on what else was created around it.
void xavier_uniform(Tensor& t, std::uint64_t seed);

class Tape;

/// Handle to a tape node.
struct Var {
  Tape* tape = nullptr;
  int id = -1;
};

/// Reverse-mode autodiff over a static tape of Eigen matrices, rebuilt for
/// every training step. Convention: rows = batch, cols = features.
class Tape {
public:
  Var param(Tensor& t);
  Var constant(Eigen::MatrixXd v);

  /// y = x * w' + 1 * b'; w is (out x in), b is (out x 1).
  Var affine(Var x, Var w, Var b);
  Var leaky_relu(Var x, double slope);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var scale(Var a, double c);
  /// Sum of squared entries, as a 1x1 node.
  Var sum_sq(Var a);
  Var concat_cols(Var a, Var b);
  /// out.row(k) = x.row(rows[k]); duplicate indices allowed.
  Var gather_rows(Var x, std::vector<int> rows);
  /// out.row(k) = sum of x.row(i) over i in groups[k]; empty group = zeros.
  Var row_sums(Var x, std::vector<std::vector<int>> groups);
  /// out.row(k) = factors[k] * x.row(k).
  Var scale_rows(Var x, std::vector<double> factors);
  /// sum_sq(a - b) / rows(a): MSE for column vectors, mean squared row norm
  /// for matrices.
  Var mse(Var a, Var b);

  const Eigen::MatrixXd& value(Var v) const;
  const Eigen::MatrixXd& grad(Var v) const;

  /// Seeds the 1x1 loss with adjoint 1, sweeps the tape in reverse, and adds
  /// parameter adjoints into their Tensor::grad. A second call without
  /// clear() throws StaleTape.
  void backward(Var loss);
  void clear();

  int node_count() const { return static_cast<int>(nodes_.size()); }

private:
  enum class Op {
    Param, Const, Affine, LeakyRelu, Add, Sub, Scale, SumSq, ConcatCols,
    GatherRows, RowSums, ScaleRows,
  };

  struct Node {
    Op op;
    std::vector<int> parents;
    Eigen::MatrixXd value;
    Eigen::MatrixXd adjoint;
    Tensor* tensor = nullptr;       // Param
    double scalar = 0.0;            // LeakyRelu slope / Scale factor
    std::vector<int> rows;          // GatherRows
    std::vector<std::vector<int>> groups;  // RowSums
    std::vector<double> factors;    // ScaleRows
  };

  int push(Node n);
  const Node& node_of(Var v) const;
  void check_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        const char* who) const;

  std::vector<Node> nodes_;
  bool swept_ = false;
};

}  // namespace coolant::nn
