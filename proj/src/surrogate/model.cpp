//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "coolant/nn/weights.hpp"
#include "coolant/surrogate/surrogate.hpp"

namespace coolant::surrogate {

namespace {

Eigen::MatrixXd leaky(const Eigen::MatrixXd& x, double slope) {
  return x.unaryExpr([slope](double v) { return v > 0.0 ? v : slope * v; });
}

std::string tower_name(int t) { return "tower" + std::to_string(t); }

}  // namespace

SurrogateModel SurrogateModel::create(const SurrogateConfig& config) {
  SurrogateModel m;
  m.config_ = config;
  const int in = 2 * config.latent;
  m.trunk_ = nn::Mlp::create(m.params_, "trunk", {in, 64, 50}, config.seed,
                             config.slope);
  for (int t = 0; t < kTaskCount; ++t) {
    m.towers_.push_back(nn::Mlp::create(m.params_, tower_name(t),
                                        {50, 32, 16, 1}, config.seed,
                                        config.slope));
  }
  m.label_mean_.assign(kTaskCount, 0.0);
  m.label_std_.assign(kTaskCount, 1.0);
  return m;
}

void SurrogateModel::save(const std::string& path) const {
  nlohmann::json j{{"format", "coolant-surrogate-1"},
                   {"config",
                    {{"latent", config_.latent},
                     {"epochs", config_.epochs},
                     {"batch", config_.batch},
                     {"lr", config_.lr},
                     {"val_fraction", config_.val_fraction},
                     {"sample_fraction", config_.sample_fraction},
                     {"slope", config_.slope},
                     {"seed", config_.seed}}},
                   {"label_mean", label_mean_},
                   {"label_std", label_std_}};
  nn::save_weights(path, params_, j.dump(2));
}

SurrogateModel SurrogateModel::load(const std::string& path) {
  const std::string sidecar = nn::load_weights_sidecar(path);
  if (sidecar.empty())
    throw std::runtime_error("SurrogateModel: missing sidecar for " + path);
  nlohmann::json j = nlohmann::json::parse(sidecar);
  if (j.at("format").get<std::string>() != "coolant-surrogate-1")
    throw std::runtime_error("SurrogateModel: unrecognized sidecar format");

  SurrogateModel m;
  const auto& c = j.at("config");
  m.config_.latent = c.at("latent").get<int>();
  m.config_.epochs = c.at("epochs").get<int>();
  m.config_.batch = c.at("batch").get<int>();
  m.config_.lr = c.at("lr").get<double>();
  m.config_.val_fraction = c.at("val_fraction").get<double>();
  m.config_.sample_fraction = c.at("sample_fraction").get<double>();
  m.config_.slope = c.at("slope").get<double>();
  m.config_.seed = c.at("seed").get<std::uint64_t>();
  m.label_mean_ = j.at("label_mean").get<std::vector<double>>();
  m.label_std_ = j.at("label_std").get<std::vector<double>>();

  nn::load_weights(path, m.params_);
  m.trunk_ = nn::Mlp::attach(m.params_, "trunk", 2, m.config_.slope);
  for (int t = 0; t < kTaskCount; ++t) {
    m.towers_.push_back(
        nn::Mlp::attach(m.params_, tower_name(t), 3, m.config_.slope));
  }
  return m;
}

Eigen::MatrixXd SurrogateModel::predict_rows(const Eigen::MatrixXd& inputs) const {
  if (inputs.cols() != 2 * config_.latent) {
    throw std::invalid_argument("surrogate input width mismatch");
  }
  const Eigen::MatrixXd h = leaky(trunk_.infer(inputs), config_.slope);
  Eigen::MatrixXd out(inputs.rows(), kTaskCount);
  for (int t = 0; t < kTaskCount; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    out.col(t) = towers_[ti].infer(h).col(0).array() * label_std_[ti] +
                 label_mean_[ti];
  }
  return out;
}

std::vector<double> SurrogateModel::predict_one(const Eigen::VectorXd& input) const {
  const Eigen::MatrixXd row = predict_rows(input.transpose());
  std::vector<double> out(kTaskCount);
  for (int t = 0; t < kTaskCount; ++t) out[static_cast<std::size_t>(t)] = row(0, t);
  return out;
}

std::vector<double> predict_pair(const std::string& first,
                                 const std::string& second,
                                 const SurrogateModel& model,
                                 const EmbeddingTable& table) {
  return model.predict_one(surrogate_input(first, second, table));
}

}  // namespace coolant::surrogate
