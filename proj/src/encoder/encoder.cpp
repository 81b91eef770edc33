//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/encoder/encoder.hpp"

#include <stdexcept>

namespace coolant::encoder {

EncoderParams EncoderParams::create(nn::ParamStore& params,
                                    const EncoderConfig& config,
                                    std::uint64_t seed) {
  if (config.latent >= config.hidden) {
    throw std::invalid_argument("bottleneck requires latent < hidden");
  }
  EncoderParams p;
  p.config = config;
  const int h = config.hidden;
  const int d = config.latent;
  const auto make = [&](const char* name, int rows, int cols, bool init) {
    nn::Tensor& t = params.create(name, rows, cols);
    if (init) nn::xavier_uniform(t, seed);
    return &t;
  };
  p.w_init = make("enc.init.w", h, kEdgeFeatureDim, true);
  p.b_init = make("enc.init.b", h, 1, false);
  p.w_msg = make("enc.msg.w", h, h, true);
  p.b_msg = make("enc.msg.b", h, 1, false);
  p.w_read = make("enc.read.w", h, kAtomFeatureDim + h, true);
  p.b_read = make("enc.read.b", h, 1, false);
  p.w_enc = make("enc.bottleneck.w", d, h, true);
  p.b_enc = make("enc.bottleneck.b", d, 1, false);
  p.w_dec = make("enc.expand.w", h, d, true);
  p.b_dec = make("enc.expand.b", h, 1, false);
  return p;
}

EncoderParams EncoderParams::attach(nn::ParamStore& params,
                                    const EncoderConfig& config) {
  EncoderParams p;
  p.config = config;
  const auto need = [&](const char* name) {
    nn::Tensor* t = params.find(name);
    if (t == nullptr) {
      throw std::runtime_error(std::string("missing encoder tensor ") + name);
    }
    return t;
  };
  p.w_init = need("enc.init.w");
  p.b_init = need("enc.init.b");
  p.w_msg = need("enc.msg.w");
  p.b_msg = need("enc.msg.b");
  p.w_read = need("enc.read.w");
  p.b_read = need("enc.read.b");
  p.w_enc = need("enc.bottleneck.w");
  p.b_enc = need("enc.bottleneck.b");
  p.w_dec = need("enc.expand.w");
  p.b_dec = need("enc.expand.b");
  return p;
}

nn::Var encode_batch(nn::Tape& tape, const FeaturizedBatch& batch,
                     const EncoderParams& p) {
  const FeaturizedGraph& g = batch.merged;
  const double slope = p.config.slope;
  const Eigen::Index n_atoms = g.atom_features.rows();

  nn::Var atom_x = tape.constant(g.atom_features);
  nn::Var incoming;
  if (p.config.depth > 0) {
    nn::Var edge_x = tape.constant(g.edge_features);
    nn::Var h0 = tape.leaky_relu(
        tape.affine(edge_x, tape.param(*p.w_init), tape.param(*p.b_init)), slope);
    nn::Var h = h0;
    for (int t = 0; t < p.config.depth; ++t) {
      nn::Var m = tape.row_sums(h, g.incoming_excl_reverse);
      nn::Var upd = tape.affine(m, tape.param(*p.w_msg), tape.param(*p.b_msg));
      h = tape.leaky_relu(tape.add(h0, upd), slope);
    }
    incoming = tape.row_sums(h, g.incoming_at_atom);
  } else {
    incoming = tape.constant(Eigen::MatrixXd::Zero(n_atoms, p.config.hidden));
  }
  nn::Var atom_state = tape.leaky_relu(
      tape.affine(tape.concat_cols(atom_x, incoming), tape.param(*p.w_read),
                  tape.param(*p.b_read)),
      slope);
  nn::Var pooled = tape.scale_rows(tape.row_sums(atom_state, batch.molecule_atoms),
                                   batch.inv_atom_counts);
  return tape.affine(pooled, tape.param(*p.w_enc), tape.param(*p.b_enc));
}

Eigen::MatrixXd encode_batch_infer(const FeaturizedBatch& batch,
                                   const EncoderParams& p) {
  const FeaturizedGraph& g = batch.merged;
  const double slope = p.config.slope;
  const auto act = [slope](Eigen::MatrixXd m) {
    return m.unaryExpr([slope](double v) { return v > 0.0 ? v : slope * v; });
  };
  const auto affine = [](const Eigen::MatrixXd& x, const nn::Tensor& w,
                         const nn::Tensor& b) {
    Eigen::MatrixXd y = x * w.value.transpose();
    y.rowwise() += b.value.col(0).transpose();
    return y;
  };
  const auto row_sums = [](const Eigen::MatrixXd& x,
                           const std::vector<std::vector<int>>& groups,
                           Eigen::Index cols) {
    Eigen::MatrixXd out =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(groups.size()), cols);
    for (std::size_t k = 0; k < groups.size(); ++k) {
      for (int i : groups[k]) out.row(static_cast<Eigen::Index>(k)) += x.row(i);
    }
    return out;
  };

  Eigen::MatrixXd incoming;
  if (p.config.depth > 0) {
    Eigen::MatrixXd h0 = act(affine(g.edge_features, *p.w_init, *p.b_init));
    Eigen::MatrixXd h = h0;
    for (int t = 0; t < p.config.depth; ++t) {
      Eigen::MatrixXd m = row_sums(h, g.incoming_excl_reverse, h.cols());
      h = act(h0 + affine(m, *p.w_msg, *p.b_msg));
    }
    incoming = row_sums(h, g.incoming_at_atom, h.cols());
  } else {
    incoming = Eigen::MatrixXd::Zero(g.atom_features.rows(), p.config.hidden);
  }
  Eigen::MatrixXd readin(g.atom_features.rows(),
                         g.atom_features.cols() + incoming.cols());
  readin << g.atom_features, incoming;
  Eigen::MatrixXd atom_state = act(affine(readin, *p.w_read, *p.b_read));
  Eigen::MatrixXd pooled =
      row_sums(atom_state, batch.molecule_atoms, atom_state.cols());
  for (std::size_t k = 0; k < batch.inv_atom_counts.size(); ++k) {
    pooled.row(static_cast<Eigen::Index>(k)) *= batch.inv_atom_counts[k];
  }
  return affine(pooled, *p.w_enc, *p.b_enc);
}

Eigen::VectorXd encode_one(const chem::MolGraph& g, const EncoderParams& p) {
  const FeaturizedGraph f = featurize(g);
  const FeaturizedBatch batch = featurize_batch({&f});
  return encode_batch_infer(batch, p).row(0).transpose();
}

Eigen::MatrixXd reconstruct(const Eigen::MatrixXd& z, const EncoderParams& p) {
  Eigen::MatrixXd y = z * p.w_dec->value.transpose();
  y.rowwise() += p.b_dec->value.col(0).transpose();
  return y;
}

}  // namespace coolant::encoder
