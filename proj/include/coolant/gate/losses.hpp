//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "coolant/nn/tape.hpp"

namespace coolant::gate {

/// Squared-error regression loss: (1/N) * sum_i (y_i - yhat_i)^2.
/// `pred` and `target` are N x 1 column vectors on the same tape.
nn::Var loss_reg(nn::Tape& tape, nn::Var pred, nn::Var target);

/// Autoencoder round-trip loss: (1/N) * sum_i ||z_i - zhat_i||^2 where
/// `zhat` is the reconstruction g(h(z)) of the latent rows `z`.
nn::Var loss_auto(nn::Tape& tape, nn::Var z, nn::Var z_hat);

/// Manifold consistency loss: (1/N) * sum_i ||m_s_i - m_t_i||^2 between
/// the source- and target-manifold images of the same molecules.
nn::Var loss_cons(nn::Tape& tape, nn::Var m_source, nn::Var m_target);

/// Cross-manifold mapping loss: squared error between target labels and
/// predictions produced by routing latents through the source manifold
/// and back.  Same shape contract as loss_reg.
nn::Var loss_map(nn::Tape& tape, nn::Var pred_via_source, nn::Var target);

/// Displacement-consistency loss over perturbation fans.
///
/// `m_pivot_*` holds the manifold image of each pivot row repeated once per
/// perturbation (N*M rows), and `m_pert_*` the images of the perturbed
/// latents in the same order.  The loss is
///   (1/(N*M)) * sum ||(m_i - m_ij)_s - (m_i - m_ij)_t||^2.
nn::Var loss_dis(nn::Tape& tape, nn::Var m_pivot_s, nn::Var m_pert_s,
                 nn::Var m_pivot_t, nn::Var m_pert_t);

}  // namespace coolant::gate
