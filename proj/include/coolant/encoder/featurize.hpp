//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::encoder {

inline constexpr int kAtomFeatureDim = 17;  // 11 element + 5 degree + aromatic
inline constexpr int kBondFeatureDim = 4;   // bond-order one-hot
inline constexpr int kEdgeFeatureDim = kAtomFeatureDim + kBondFeatureDim;

/// Directed-edge view of a molecule (or a disjoint union of molecules):
/// every bond contributes two directed edges u->v and v->u.
struct FeaturizedGraph {
  Eigen::MatrixXd atom_features;              // n x 17
  Eigen::MatrixXd edge_features;              // E x 21: source atom + bond
  std::vector<std::pair<int, int>> edges;     // directed (u, v)
  /// Per edge (u -> v): edges (w -> u) with w != v.
  std::vector<std::vector<int>> incoming_excl_reverse;
  /// Per atom v: edges (* -> v).
  std::vector<std::vector<int>> incoming_at_atom;
};

FeaturizedGraph featurize(const chem::MolGraph& g);

/// Disjoint union of prefeaturized molecules plus per-molecule pooling
/// groups. Message passing never crosses molecule boundaries, so one batch
/// behaves exactly like its molecules encoded separately.
struct FeaturizedBatch {
  FeaturizedGraph merged;
  std::vector<std::vector<int>> molecule_atoms;  // pooling groups
  std::vector<double> inv_atom_counts;           // 1/n per molecule
};

FeaturizedBatch featurize_batch(const std::vector<const FeaturizedGraph*>& parts);

}  // namespace coolant::encoder
