//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "coolant/encoder/encoder.hpp"
#include "coolant/nn/mlp.hpp"
#include "coolant/nn/tape.hpp"

namespace coolant::gate {

struct GateConfig {
  encoder::EncoderConfig enc;
  int head_hidden = 32;  // per-task head d -> 32 -> 1
  int epochs = 600;
  int batch = 512;  // clipped to dataset size when smaller
  double lr = 5e-5;
  double weight_decay = 1e-2;  // AdamW decoupled decay
  int perturbations = 10;      // M in the displacement loss
  double sigma = 0.05;         // latent perturbation scale
  double alpha = 1.0;          // L_auto weight
  double beta = 1.0;           // L_cons weight
  double gamma = 1.0;          // L_map weight
  double delta = 1.0;          // L_dis weight
  double val_fraction = 0.1;   // 90/10 train/validation split
  int ensemble_size = 1;       // reserved; a single model is trained
  std::uint64_t seed = 0;
};

/// Shared encoder, per-task transfer nets h_t and inverse nets g_t (single
/// affine d -> d each), and per-task heads. When every alignment weight is
/// zero no transfer stack exists and heads read the encoder latent directly
/// — exactly the single-task topology, so the zero-weight model *is* an STL
/// model rather than merely behaving like one.
class GateModel {
 public:
  static GateModel create(const GateConfig& config, int n_tasks);

  /// Reads the CFW1 container at `path` plus its JSON sidecar.
  static GateModel load(const std::string& path);
  void save(const std::string& path) const;

  int n_tasks() const { return n_tasks_; }
  bool has_transfer() const { return has_transfer_; }
  const GateConfig& config() const { return config_; }
  nn::ParamStore& params() { return params_; }
  const nn::ParamStore& params() const { return params_; }
  const encoder::EncoderParams& enc() const { return enc_; }
  const nn::Mlp& transfer(int t) const { return transfer_[static_cast<std::size_t>(t)]; }
  const nn::Mlp& inverse(int t) const { return inverse_[static_cast<std::size_t>(t)]; }
  const nn::Mlp& head(int t) const { return heads_[static_cast<std::size_t>(t)]; }

  std::vector<double>& label_mean() { return label_mean_; }
  std::vector<double>& label_std() { return label_std_; }
  const std::vector<double>& label_mean() const { return label_mean_; }
  const std::vector<double>& label_std() const { return label_std_; }

  /// Encoder latent z. Every call that runs the encoder bumps the embed
  /// counter; screening audits rely on it to prove the O(n+m) property.
  Eigen::VectorXd embed(const chem::MolGraph& g) const;
  Eigen::MatrixXd embed_batch(const std::vector<const chem::MolGraph*>& graphs) const;

  /// Task-coordinate point m = h_t(z); z itself when no transfer stack.
  Eigen::VectorXd manifold_embed(const chem::MolGraph& g, int task) const;

  /// Per-task predictions in label units (de-standardized).
  std::vector<double> predict(const chem::MolGraph& g) const;
  std::vector<double> predict_from_latent(const Eigen::VectorXd& z) const;

  std::uint64_t embed_calls() const { return embed_calls_; }
  void reset_embed_calls() const { embed_calls_ = 0; }

 private:
  GateConfig config_;
  int n_tasks_ = 0;
  bool has_transfer_ = false;
  nn::ParamStore params_;
  encoder::EncoderParams enc_;
  std::vector<nn::Mlp> transfer_;
  std::vector<nn::Mlp> inverse_;
  std::vector<nn::Mlp> heads_;
  std::vector<double> label_mean_;
  std::vector<double> label_std_;
  mutable std::uint64_t embed_calls_ = 0;
};

}  // namespace coolant::gate
