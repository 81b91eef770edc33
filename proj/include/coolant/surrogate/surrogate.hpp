//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coolant/gate/model.hpp"
#include "coolant/nn/mlp.hpp"
#include "coolant/reactor/reactor.hpp"

namespace coolant::surrogate {

/// The surrogate always carries one tower per screened property.
inline constexpr int kTaskCount = 10;

struct MissingEmbedding : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TeacherUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ProvenanceMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Precomputed reactant embeddings keyed by canonical SMILES. `provenance`
/// is the hash of the teacher parameters the embeddings came from; consumers
/// must refuse tables whose provenance disagrees with the teacher in hand.
class EmbeddingTable {
 public:
  void insert(const std::string& id, Eigen::VectorXd embedding);
  const Eigen::VectorXd& at(const std::string& id) const;  // MissingEmbedding
  bool contains(const std::string& id) const;
  std::size_t size() const { return ids_.size(); }
  int dim() const { return dim_; }
  const std::vector<std::string>& ids() const { return ids_; }

  std::uint64_t provenance = 0;

 private:
  int dim_ = 0;
  std::vector<std::string> ids_;  // insertion order; the file order
  std::vector<Eigen::VectorXd> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One teacher embedding call per reactant, however many pairs follow.
EmbeddingTable build_lookup(const std::vector<std::string>& ids,
                            const std::vector<const chem::MolGraph*>& graphs,
                            const gate::GateModel& teacher);

/// Binary `EMB1` container: magic, provenance hash, dim, count, then
/// (id, dim doubles) per entry in insertion order. Round trips bit-exact.
void save_table(const std::string& path, const EmbeddingTable& table);
EmbeddingTable load_table(const std::string& path);

/// Order-sensitive concatenation [e(first); e(second)].
Eigen::VectorXd surrogate_input(const std::string& first,
                                const std::string& second,
                                const EmbeddingTable& table);

struct SurrogateConfig {
  int latent = 16;  // d; the trunk reads 2d
  int epochs = 500;
  int batch = 256;
  double lr = 1e-3;
  double val_fraction = 0.1;        // 90/10 train/validation split
  double sample_fraction = 0.005;   // 0.5% of the pair grid
  double slope = 0.01;
  std::uint64_t seed = 0;
};

/// Distilled pair scorer: trunk 2d -> 64 -> 50 (LeakyReLU after each hidden
/// layer) feeding ten towers 50 -> 32 -> 16 -> 1.
class SurrogateModel {
 public:
  static SurrogateModel create(const SurrogateConfig& config);
  static SurrogateModel load(const std::string& path);
  void save(const std::string& path) const;

  const SurrogateConfig& config() const { return config_; }
  nn::ParamStore& params() { return params_; }
  const nn::ParamStore& params() const { return params_; }
  const nn::Mlp& trunk() const { return trunk_; }
  const nn::Mlp& tower(int t) const { return towers_[static_cast<std::size_t>(t)]; }
  std::vector<double>& label_mean() { return label_mean_; }
  std::vector<double>& label_std() { return label_std_; }
  const std::vector<double>& label_mean() const { return label_mean_; }
  const std::vector<double>& label_std() const { return label_std_; }

  /// Rows of 2d-wide inputs to rows of ten de-standardized predictions.
  Eigen::MatrixXd predict_rows(const Eigen::MatrixXd& inputs) const;
  std::vector<double> predict_one(const Eigen::VectorXd& input) const;

 private:
  SurrogateConfig config_;
  nn::ParamStore params_;
  nn::Mlp trunk_;
  std::vector<nn::Mlp> towers_;
  std::vector<double> label_mean_;
  std::vector<double> label_std_;
};

std::vector<double> predict_pair(const std::string& first,
                                 const std::string& second,
                                 const SurrogateModel& model,
                                 const EmbeddingTable& table);

/// Distillation set: concatenated-embedding inputs and the teacher's
/// predictions on the corresponding products, raw label units.
struct PairSample {
  std::vector<std::pair<int, int>> pairs;  // grid coordinates, bookkeeping
  Eigen::MatrixXd inputs;                  // n x 2d
  Eigen::MatrixXd targets;                 // n x 10
};

/// Uniform sample without replacement over the n x m pair grid; draw order
/// is the row order. fraction of the grid, at least one pair.
std::vector<std::pair<int, int>> sample_pairs(std::size_t n, std::size_t m,
                                              double fraction,
                                              std::uint64_t seed);

/// Materialize distillation rows for grid pairs (i, j): alcohol i against
/// the combined partner axis [chlorides | acids]. Each row pairs the table
/// embeddings of the two reactants with the teacher's predictions on the
/// reacted product.
PairSample build_distillation(const reactor::ReactantSets& sets,
                              const EmbeddingTable& table,
                              const gate::GateModel& teacher,
                              const std::vector<std::pair<int, int>>& pairs);

struct SurrogateTrainOutcome {
  SurrogateModel model;
  std::vector<double> epoch_loss;  // sum of task-wise MSEs, train portion
  std::vector<double> val_r;       // per task, final model
  std::vector<double> val_mae;
};

/// Adam on the unweighted sum of task-wise MSEs over standardized targets.
SurrogateTrainOutcome train_surrogate(const PairSample& sample,
                                      const SurrogateConfig& config);

struct FidelityReport {
  std::vector<double> pearson;  // per task
  std::vector<double> mae;      // per task, raw label units
};

/// Surrogate-vs-teacher agreement on held-out pairs.
FidelityReport fidelity_report(const SurrogateModel& model,
                               const PairSample& holdout);
void write_fidelity_csv(const std::string& path, const FidelityReport& report,
                        const std::vector<std::string>& task_names);

}  // namespace coolant::surrogate
