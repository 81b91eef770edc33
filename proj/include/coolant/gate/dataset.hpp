//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::gate {

/// Multi-task regression set over unique molecules. Labels are sparse: each
/// task lists (molecule index, value) pairs. The optional eval block holds
/// molecules labeled on every task, kept out of training entirely, for
/// stable cross-model comparisons.
struct Dataset {
  std::vector<std::string> smiles;  // canonical
  std::vector<chem::MolGraph> graphs;
  int n_tasks = 0;
  std::vector<std::vector<std::pair<int, double>>> labels;
  std::vector<int> eval_molecules;
  std::vector<std::vector<double>> eval_labels;  // [task][k]

  /// Single-task view: task `t` becomes task 0; molecules are shared.
  Dataset task_view(int t) const;
};

/// Random acyclic molecules over {C, N, O, Si}, unique canonical SMILES,
/// heavy-atom counts in [min_atoms, max_atoms]. All pass the prefilter.
std::vector<std::string> random_molecules(int count, int min_atoms, int max_atoms,
                                          std::uint64_t seed);

/// Role-bearing libraries for reactor/screening experiments: an alkyl/ether
/// skeleton plus the group that defines the role.
std::vector<std::string> random_alcohols(int count, std::uint64_t seed);
std::vector<std::string> random_chlorides(int count, std::uint64_t seed);
std::vector<std::string> random_acids(int count, std::uint64_t seed);

/// Correlated synthetic tasks. Task 0 reads a shared descriptor factor u
/// (standardized over the set); task k >= 1 reads rho*u plus an independent
/// per-molecule component, so corr(task 0, task k) ~ rho. Per-molecule draws
/// are keyed by (seed, task, canonical SMILES): labels do not depend on set
/// ordering. labels_per_task empty = every molecule labeled.
struct SyntheticSpec {
  int n_tasks = 2;
  double rho = 0.9;
  double noise = 0.1;
  std::vector<int> labels_per_task;
  int eval_count = 0;
  int min_atoms = 4;
  int max_atoms = 8;
};

Dataset make_synthetic_tasks(int n_mols, const SyntheticSpec& spec,
                             std::uint64_t seed);

/// Ten immersion-property labels in PropertyVector units, synthesized from
/// descriptor factors (size, branching, oxygen fraction) plus a per-molecule
/// latent draw. Every molecule gets all ten labels. Task order matches
/// screen::Property.
Dataset make_property_tasks(const std::vector<std::string>& smiles, double noise,
                            std::uint64_t seed);

/// CSV `smiles,task_id,value`; molecules deduplicated by canonical SMILES.
Dataset load_dataset_csv(const std::string& path);
void save_dataset_csv(const std::string& path, const Dataset& ds);

}  // namespace coolant::gate
