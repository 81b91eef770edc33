//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/nn/tape.hpp"

#include <cmath>
#include <utility>

namespace coolant::nn {

Tensor& ParamStore::create(const std::string& name, Eigen::Index rows,
                           Eigen::Index cols) {
  if (index_.count(name)) throw NumericError("duplicate tensor name: " + name);
  auto t = std::make_unique<Tensor>();
  t->name = name;
  t->value.setZero(rows, cols);
  t->grad.setZero(rows, cols);
  index_[name] = slots_.size();
  slots_.push_back(std::move(t));
  return *slots_.back();
}

Tensor* ParamStore::find(const std::string& name) {
  const auto it = index_.find(name);
  return it == index_.end() ? nullptr : slots_[it->second].get();
}

const Tensor* ParamStore::find(const std::string& name) const {
  const auto it = index_.find(name);
  return it == index_.end() ? nullptr : slots_[it->second].get();
}

void ParamStore::zero_grads() {
  for (auto& t : slots_) t->zero_grad();
}

void xavier_uniform(Tensor& t, std::uint64_t seed) {
  Rng rng = Rng::derived(seed, "init." + t.name);
  const double fan_in = static_cast<double>(t.value.cols());
  const double fan_out = static_cast<double>(t.value.rows());
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  for (Eigen::Index r = 0; r < t.value.rows(); ++r) {
    for (Eigen::Index c = 0; c < t.value.cols(); ++c) {
      t.value(r, c) = (2.0 * rng.uniform() - 1.0) * limit;
    }
  }
}

namespace {

void check_finite(const Eigen::MatrixXd& m, const char* who) {
#ifndef NDEBUG
  if (!m.allFinite()) {
    throw NumericError(std::string("non-finite values in ") + who);
  }
#else
  (void)m;
  (void)who;
#endif
}

}  // namespace

int Tape::push(Node n) {
  check_finite(n.value, "forward op");
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

const Tape::Node& Tape::node_of(Var v) const {
  if (v.tape != this || v.id < 0 || v.id >= static_cast<int>(nodes_.size())) {
    throw StaleTape("Var does not belong to this tape");
  }
  return nodes_[static_cast<std::size_t>(v.id)];
}

void Tape::check_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                            const char* who) const {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch(std::string(who) + ": " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

Var Tape::param(Tensor& t) {
  Node n;
  n.op = Op::Param;
  n.value = t.value;
  n.tensor = &t;
  return Var{this, push(std::move(n))};
}

Var Tape::constant(Eigen::MatrixXd v) {
  Node n;
  n.op = Op::Const;
  n.value = std::move(v);
  return Var{this, push(std::move(n))};
}

Var Tape::affine(Var x, Var w, Var b) {
  const Node& nx = node_of(x);
  const Node& nw = node_of(w);
  const Node& nb = node_of(b);
  if (nx.value.cols() != nw.value.cols()) {
    throw ShapeMismatch("affine: x cols != w cols");
  }
  if (nb.value.rows() != nw.value.rows() || nb.value.cols() != 1) {
    throw ShapeMismatch("affine: b must be (out x 1)");
  }
  Node n;
  n.op = Op::Affine;
  n.parents = {x.id, w.id, b.id};
  n.value = nx.value * nw.value.transpose();
  n.value.rowwise() += nb.value.col(0).transpose();
  return Var{this, push(std::move(n))};
}

Var Tape::leaky_relu(Var x, double slope) {
  const Node& nx = node_of(x);
  Node n;
  n.op = Op::LeakyRelu;
  n.parents = {x.id};
  n.scalar = slope;
  n.value = nx.value.unaryExpr(
      [slope](double v) { return v > 0.0 ? v : slope * v; });
  return Var{this, push(std::move(n))};
}

Var Tape::add(Var a, Var b) {
  const Node& na = node_of(a);
  const Node& nb = node_of(b);
  check_same_shape(na.value, nb.value, "add");
  Node n;
  n.op = Op::Add;
  n.parents = {a.id, b.id};
  n.value = na.value + nb.value;
  return Var{this, push(std::move(n))};
}

Var Tape::sub(Var a, Var b) {
  const Node& na = node_of(a);
  const Node& nb = node_of(b);
  check_same_shape(na.value, nb.value, "sub");
  Node n;
  n.op = Op::Sub;
  n.parents = {a.id, b.id};
  n.value = na.value - nb.value;
  return Var{this, push(std::move(n))};
}

Var Tape::scale(Var a, double c) {
  const Node& na = node_of(a);
  Node n;
  n.op = Op::Scale;
  n.parents = {a.id};
  n.scalar = c;
  n.value = c * na.value;
  return Var{this, push(std::move(n))};
}

Var Tape::sum_sq(Var a) {
  const Node& na = node_of(a);
  Node n;
  n.op = Op::SumSq;
  n.parents = {a.id};
  n.value.setConstant(1, 1, na.value.squaredNorm());
  return Var{this, push(std::move(n))};
}

Var Tape::concat_cols(Var a, Var b) {
  const Node& na = node_of(a);
  const Node& nb = node_of(b);
  if (na.value.rows() != nb.value.rows()) {
    throw ShapeMismatch("concat_cols: row mismatch");
  }
  Node n;
  n.op = Op::ConcatCols;
  n.parents = {a.id, b.id};
  n.value.resize(na.value.rows(), na.value.cols() + nb.value.cols());
  n.value << na.value, nb.value;
  return Var{this, push(std::move(n))};
}

Var Tape::gather_rows(Var x, std::vector<int> rows) {
  const Node& nx = node_of(x);
  Node n;
  n.op = Op::GatherRows;
  n.parents = {x.id};
  n.value.resize(static_cast<Eigen::Index>(rows.size()), nx.value.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] < 0 || rows[k] >= nx.value.rows()) {
      throw ShapeMismatch("gather_rows: index out of range");
    }
    n.value.row(static_cast<Eigen::Index>(k)) = nx.value.row(rows[k]);
  }
  n.rows = std::move(rows);
  return Var{this, push(std::move(n))};
}

Var Tape::row_sums(Var x, std::vector<std::vector<int>> groups) {
  const Node& nx = node_of(x);
  Node n;
  n.op = Op::RowSums;
  n.parents = {x.id};
  n.value.setZero(static_cast<Eigen::Index>(groups.size()), nx.value.cols());
  for (std::size_t k = 0; k < groups.size(); ++k) {
    for (int i : groups[k]) {
      if (i < 0 || i >= nx.value.rows()) {
        throw ShapeMismatch("row_sums: index out of range");
      }
      n.value.row(static_cast<Eigen::Index>(k)) += nx.value.row(i);
    }
  }
  n.groups = std::move(groups);
  return Var{this, push(std::move(n))};
}

Var Tape::scale_rows(Var x, std::vector<double> factors) {
  const Node& nx = node_of(x);
  if (static_cast<Eigen::Index>(factors.size()) != nx.value.rows()) {
    throw ShapeMismatch("scale_rows: factor count != rows");
  }
  Node n;
  n.op = Op::ScaleRows;
  n.parents = {x.id};
  n.value = nx.value;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    n.value.row(static_cast<Eigen::Index>(k)) *= factors[k];
  }
  n.factors = std::move(factors);
  return Var{this, push(std::move(n))};
}

Var Tape::mse(Var a, Var b) {
  const Node& na = node_of(a);
  if (na.value.rows() == 0) throw ShapeMismatch("mse: empty batch");
  const double inv_n = 1.0 / static_cast<double>(na.value.rows());
  return scale(sum_sq(sub(a, b)), inv_n);
}

const Eigen::MatrixXd& Tape::value(Var v) const { return node_of(v).value; }

const Eigen::MatrixXd& Tape::grad(Var v) const { return node_of(v).adjoint; }

void Tape::backward(Var loss) {
  if (swept_) throw StaleTape("backward called twice on one tape");
  const Node& top = node_of(loss);
  if (top.value.rows() != 1 || top.value.cols() != 1) {
    throw ShapeMismatch("backward: loss must be 1x1");
  }
  swept_ = true;
  for (auto& n : nodes_) n.adjoint.setZero(n.value.rows(), n.value.cols());
  nodes_[static_cast<std::size_t>(loss.id)].adjoint(0, 0) = 1.0;

  for (int id = loss.id; id >= 0; --id) {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.adjoint.isZero(0.0)) continue;
    const Eigen::MatrixXd& g = n.adjoint;
    switch (n.op) {
      case Op::Param:
        n.tensor->grad += g;
        break;
      case Op::Const:
        break;
      case Op::Affine: {
        Node& nx = nodes_[static_cast<std::size_t>(n.parents[0])];
        Node& nw = nodes_[static_cast<std::size_t>(n.parents[1])];
        Node& nb = nodes_[static_cast<std::size_t>(n.parents[2])];
        nx.adjoint += g * nw.value;
        nw.adjoint += g.transpose() * nx.value;
        nb.adjoint += g.colwise().sum().transpose();
        break;
      }
      case Op::LeakyRelu: {
        Node& nx = nodes_[static_cast<std::size_t>(n.parents[0])];
        const double slope = n.scalar;
        nx.adjoint += g.binaryExpr(nx.value, [slope](double gv, double xv) {
          return xv > 0.0 ? gv : slope * gv;
        });
        break;
      }
      case Op::Add:
        nodes_[static_cast<std::size_t>(n.parents[0])].adjoint += g;
        nodes_[static_cast<std::size_t>(n.parents[1])].adjoint += g;
        break;
      case Op::Sub:
        nodes_[static_cast<std::size_t>(n.parents[0])].adjoint += g;
        nodes_[static_cast<std::size_t>(n.parents[1])].adjoint -= g;
        break;
      case Op::Scale:
        nodes_[static_cast<std::size_t>(n.parents[0])].adjoint += n.scalar * g;
        break;
      case Op::SumSq:
        nodes_[static_cast<std::size_t>(n.parents[0])].adjoint +=
            2.0 * g(0, 0) * nodes_[static_cast<std::size_t>(n.parents[0])].value;
        break;
      case Op::ConcatCols: {
        Node& na = nodes_[static_cast<std::size_t>(n.parents[0])];
        Node& nb = nodes_[static_cast<std::size_t>(n.parents[1])];
        na.adjoint += g.leftCols(na.value.cols());
        nb.adjoint += g.rightCols(nb.value.cols());
        break;
      }
      case Op::GatherRows: {
        Node& nx = nodes_[static_cast<std::size_t>(n.parents[0])];
        for (std::size_t k = 0; k < n.rows.size(); ++k) {
          nx.adjoint.row(n.rows[k]) += g.row(static_cast<Eigen::Index>(k));
        }
        break;
      }
      case Op::RowSums: {
        Node& nx = nodes_[static_cast<std::size_t>(n.parents[0])];
        for (std::size_t k = 0; k < n.groups.size(); ++k) {
          for (int i : n.groups[k]) {
            nx.adjoint.row(i) += g.row(static_cast<Eigen::Index>(k));
          }
        }
        break;
      }
      case Op::ScaleRows: {
        Node& nx = nodes_[static_cast<std::size_t>(n.parents[0])];
        for (std::size_t k = 0; k < n.factors.size(); ++k) {
          nx.adjoint.row(static_cast<Eigen::Index>(k)) +=
              n.factors[k] * g.row(static_cast<Eigen::Index>(k));
        }
        break;
      }
    }
  }
}

void Tape::clear() {
  nodes_.clear();
  swept_ = false;
}

}  // namespace coolant::nn
