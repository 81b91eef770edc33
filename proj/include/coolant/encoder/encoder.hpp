//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "coolant/encoder/featurize.hpp"
#include "coolant/nn/tape.hpp"

namespace coolant::encoder {

struct EncoderConfig {
  int hidden = 64;   // directed-edge message width h
  int latent = 16;   // bottleneck width d
  int depth = 2;     // message-passing rounds; 0 = pooled atom features only
  double slope = 0.01;
};

/// Directed message passing (reverse edge excluded, skip connection to the
/// initial edge state) followed by atom readout, mean pooling and an affine
/// bottleneck z = W_enc * pooled + b. The decoder half of the bottleneck
/// reconstructs the pooled hidden state for autoencoder-style checks.
struct EncoderParams {
  EncoderConfig config;
  nn::Tensor* w_init = nullptr;  // h x 21
  nn::Tensor* b_init = nullptr;
  nn::Tensor* w_msg = nullptr;   // h x h
  nn::Tensor* b_msg = nullptr;
  nn::Tensor* w_read = nullptr;  // h x (17 + h)
  nn::Tensor* b_read = nullptr;
  nn::Tensor* w_enc = nullptr;   // d x h
  nn::Tensor* b_enc = nullptr;
  nn::Tensor* w_dec = nullptr;   // h x d
  nn::Tensor* b_dec = nullptr;

  static EncoderParams create(nn::ParamStore& params, const EncoderConfig& config,
                              std::uint64_t seed);
  static EncoderParams attach(nn::ParamStore& params, const EncoderConfig& config);
};

/// Batched tape forward; returns a (molecules x d) latent matrix node.
nn::Var encode_batch(nn::Tape& tape, const FeaturizedBatch& batch,
                     const EncoderParams& p);

/// Tape-free forward with identical arithmetic (screening hot path).
Eigen::MatrixXd encode_batch_infer(const FeaturizedBatch& batch,
                                   const EncoderParams& p);

Eigen::VectorXd encode_one(const chem::MolGraph& g, const EncoderParams& p);

/// Decoder half: pooled-state reconstruction from latents (rows = molecules).
Eigen::MatrixXd reconstruct(const Eigen::MatrixXd& z, const EncoderParams& p);

}  // namespace coolant::encoder
