//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/gate/model.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <utility>

#include "coolant/nn/weights.hpp"

namespace coolant::gate {

namespace {

std::string task_name(const char* stem, int t) {
  return std::string(stem) + std::to_string(t);
}

nlohmann::json config_to_json(const GateConfig& c) {
  return nlohmann::json{
      {"enc",
       {{"hidden", c.enc.hidden},
        {"latent", c.enc.latent},
        {"depth", c.enc.depth},
        {"slope", c.enc.slope}}},
      {"head_hidden", c.head_hidden},
      {"epochs", c.epochs},
      {"batch", c.batch},
      {"lr", c.lr},
      {"weight_decay", c.weight_decay},
      {"perturbations", c.perturbations},
      {"sigma", c.sigma},
      {"alpha", c.alpha},
      {"beta", c.beta},
      {"gamma", c.gamma},
      {"delta", c.delta},
      {"val_fraction", c.val_fraction},
      {"ensemble_size", c.ensemble_size},
      {"seed", c.seed}};
}

GateConfig config_from_json(const nlohmann::json& j) {
  GateConfig c;
  const auto& e = j.at("enc");
  c.enc.hidden = e.at("hidden").get<int>();
  c.enc.latent = e.at("latent").get<int>();
  c.enc.depth = e.at("depth").get<int>();
  c.enc.slope = e.at("slope").get<double>();
  c.head_hidden = j.at("head_hidden").get<int>();
  c.epochs = j.at("epochs").get<int>();
  c.batch = j.at("batch").get<int>();
  c.lr = j.at("lr").get<double>();
  c.weight_decay = j.at("weight_decay").get<double>();
  c.perturbations = j.at("perturbations").get<int>();
  c.sigma = j.at("sigma").get<double>();
  c.alpha = j.at("alpha").get<double>();
  c.beta = j.at("beta").get<double>();
  c.gamma = j.at("gamma").get<double>();
  c.delta = j.at("delta").get<double>();
  c.val_fraction = j.at("val_fraction").get<double>();
  c.ensemble_size = j.at("ensemble_size").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

GateModel GateModel::create(const GateConfig& config, int n_tasks) {
  if (n_tasks < 1) throw std::invalid_argument("GateModel: n_tasks must be >= 1");
  GateModel m;
  m.config_ = config;
  m.n_tasks_ = n_tasks;
  m.has_transfer_ = config.alpha > 0.0 || config.beta > 0.0 ||
                    config.gamma > 0.0 || config.delta > 0.0;
  m.enc_ = encoder::EncoderParams::create(m.params_, config.enc, config.seed);
  const int d = config.enc.latent;
  if (m.has_transfer_) {
    for (int t = 0; t < n_tasks; ++t) {
      m.transfer_.push_back(nn::Mlp::create(m.params_, task_name("transfer", t),
                                            {d, d}, config.seed, config.enc.slope));
      m.inverse_.push_back(nn::Mlp::create(m.params_, task_name("inverse", t),
                                           {d, d}, config.seed, config.enc.slope));
    }
  }
  for (int t = 0; t < n_tasks; ++t) {
    m.heads_.push_back(nn::Mlp::create(m.params_, task_name("head", t),
                                       {d, config.head_hidden, 1}, config.seed,
                                       config.enc.slope));
  }
  m.label_mean_.assign(static_cast<std::size_t>(n_tasks), 0.0);
  m.label_std_.assign(static_cast<std::size_t>(n_tasks), 1.0);
  return m;
}

void GateModel::save(const std::string& path) const {
  nlohmann::json j{{"format", "coolant-gate-1"},
                   {"n_tasks", n_tasks_},
                   {"has_transfer", has_transfer_},
                   {"config", config_to_json(config_)},
                   {"label_mean", label_mean_},
                   {"label_std", label_std_}};
  nn::save_weights(path, params_, j.dump(2));
}

GateModel GateModel::load(const std::string& path) {
  const std::string sidecar = nn::load_weights_sidecar(path);
  if (sidecar.empty())
    throw std::runtime_error("GateModel: missing sidecar for " + path);
  nlohmann::json j = nlohmann::json::parse(sidecar);
  if (j.at("format").get<std::string>() != "coolant-gate-1")
    throw std::runtime_error("GateModel: unrecognized sidecar format");

  GateModel m;
  m.config_ = config_from_json(j.at("config"));
  m.n_tasks_ = j.at("n_tasks").get<int>();
  m.has_transfer_ = j.at("has_transfer").get<bool>();
  m.label_mean_ = j.at("label_mean").get<std::vector<double>>();
  m.label_std_ = j.at("label_std").get<std::vector<double>>();
  nn::load_weights(path, m.params_);
  m.enc_ = encoder::EncoderParams::attach(m.params_, m.config_.enc);
  const double slope = m.config_.enc.slope;
  for (int t = 0; t < m.n_tasks_; ++t) {
    if (m.has_transfer_) {
      m.transfer_.push_back(
          nn::Mlp::attach(m.params_, task_name("transfer", t), 1, slope));
      m.inverse_.push_back(
          nn::Mlp::attach(m.params_, task_name("inverse", t), 1, slope));
    }
    m.heads_.push_back(nn::Mlp::attach(m.params_, task_name("head", t), 2, slope));
  }
  return m;
}

Eigen::VectorXd GateModel::embed(const chem::MolGraph& g) const {
  ++embed_calls_;
  return encoder::encode_one(g, enc_);
}

Eigen::MatrixXd GateModel::embed_batch(
    const std::vector<const chem::MolGraph*>& graphs) const {
  embed_calls_ += graphs.size();
  std::vector<encoder::FeaturizedGraph> parts;
  parts.reserve(graphs.size());
  for (const chem::MolGraph* g : graphs) parts.push_back(encoder::featurize(*g));
  std::vector<const encoder::FeaturizedGraph*> ptrs;
  ptrs.reserve(parts.size());
  for (const auto& p : parts) ptrs.push_back(&p);
  const encoder::FeaturizedBatch batch = encoder::featurize_batch(ptrs);
  return encoder::encode_batch_infer(batch, enc_);
}

Eigen::VectorXd GateModel::manifold_embed(const chem::MolGraph& g, int task) const {
  Eigen::VectorXd z = embed(g);
  if (!has_transfer_) return z;
  Eigen::MatrixXd m = transfer_[static_cast<std::size_t>(task)].infer(z.transpose());
  return m.row(0).transpose();
}

std::vector<double> GateModel::predict(const chem::MolGraph& g) const {
  return predict_from_latent(embed(g));
}

std::vector<double> GateModel::predict_from_latent(const Eigen::VectorXd& z) const {
  std::vector<double> out(static_cast<std::size_t>(n_tasks_));
  const Eigen::MatrixXd row = z.transpose();
  for (int t = 0; t < n_tasks_; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    const Eigen::MatrixXd m = has_transfer_ ? transfer_[ti].infer(row) : row;
    const double standardized = heads_[ti].infer(m)(0, 0);
    out[ti] = standardized * label_std_[ti] + label_mean_[ti];
  }
  return out;
}

}  // namespace coolant::gate
