//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/encoder/featurize.hpp"

#include <algorithm>

namespace coolant::encoder {

namespace {

int bond_order_slot(chem::BondOrder o) {
  switch (o) {
    case chem::BondOrder::Single: return 0;
    case chem::BondOrder::Double: return 1;
    case chem::BondOrder::Triple: return 2;
    case chem::BondOrder::Aromatic: return 3;
  }
  return 0;
}

}  // namespace

FeaturizedGraph featurize(const chem::MolGraph& g) {
  FeaturizedGraph f;
  const int n = g.atom_count();
  f.atom_features.setZero(n, kAtomFeatureDim);
  for (int i = 0; i < n; ++i) {
    const chem::Atom& a = g.atom(i);
    f.atom_features(i, static_cast<int>(a.element)) = 1.0;
    f.atom_features(i, 11 + std::min(g.degree(i), 4)) = 1.0;
    if (a.aromatic) f.atom_features(i, 16) = 1.0;
  }

  const int e_count = 2 * g.bond_count();
  f.edge_features.setZero(e_count, kEdgeFeatureDim);
  f.edges.reserve(static_cast<std::size_t>(e_count));
  std::vector<int> edge_id(static_cast<std::size_t>(e_count));
  for (int bi = 0; bi < g.bond_count(); ++bi) {
    const chem::Bond& b = g.bond(bi);
    // Edge 2*bi is a->b, edge 2*bi+1 is b->a; reverse(e) = e ^ 1.
    f.edges.emplace_back(b.a, b.b);
    f.edges.emplace_back(b.b, b.a);
    for (int dir = 0; dir < 2; ++dir) {
      const int e = 2 * bi + dir;
      const int src = dir == 0 ? b.a : b.b;
      f.edge_features.row(e).head(kAtomFeatureDim) = f.atom_features.row(src);
      f.edge_features(e, kAtomFeatureDim + bond_order_slot(b.order)) = 1.0;
    }
  }

  f.incoming_at_atom.assign(static_cast<std::size_t>(n), {});
  for (int e = 0; e < e_count; ++e) {
    f.incoming_at_atom[static_cast<std::size_t>(f.edges[static_cast<std::size_t>(e)].second)]
        .push_back(e);
  }
  f.incoming_excl_reverse.assign(static_cast<std::size_t>(e_count), {});
  for (int e = 0; e < e_count; ++e) {
    const int u = f.edges[static_cast<std::size_t>(e)].first;
    for (int in_edge : f.incoming_at_atom[static_cast<std::size_t>(u)]) {
      if (in_edge != (e ^ 1)) {
        f.incoming_excl_reverse[static_cast<std::size_t>(e)].push_back(in_edge);
      }
    }
  }
  return f;
}

FeaturizedBatch featurize_batch(const std::vector<const FeaturizedGraph*>& parts) {
  FeaturizedBatch batch;
  Eigen::Index total_atoms = 0;
  Eigen::Index total_edges = 0;
  for (const auto* p : parts) {
    total_atoms += p->atom_features.rows();
    total_edges += p->edge_features.rows();
  }
  FeaturizedGraph& m = batch.merged;
  m.atom_features.resize(total_atoms, kAtomFeatureDim);
  m.edge_features.resize(total_edges, kEdgeFeatureDim);
  m.edges.reserve(static_cast<std::size_t>(total_edges));
  m.incoming_at_atom.reserve(static_cast<std::size_t>(total_atoms));
  m.incoming_excl_reverse.reserve(static_cast<std::size_t>(total_edges));
  batch.molecule_atoms.reserve(parts.size());
  batch.inv_atom_counts.reserve(parts.size());

  int atom_off = 0;
  int edge_off = 0;
  for (const auto* p : parts) {
    const int na = static_cast<int>(p->atom_features.rows());
    const int ne = static_cast<int>(p->edge_features.rows());
    m.atom_features.middleRows(atom_off, na) = p->atom_features;
    m.edge_features.middleRows(edge_off, ne) = p->edge_features;
    for (const auto& [u, v] : p->edges) {
      m.edges.emplace_back(u + atom_off, v + atom_off);
    }
    for (const auto& group : p->incoming_at_atom) {
      auto& out = m.incoming_at_atom.emplace_back();
      out.reserve(group.size());
      for (int e : group) out.push_back(e + edge_off);
    }
    for (const auto& group : p->incoming_excl_reverse) {
      auto& out = m.incoming_excl_reverse.emplace_back();
      out.reserve(group.size());
      for (int e : group) out.push_back(e + edge_off);
    }
    auto& atoms = batch.molecule_atoms.emplace_back();
    atoms.reserve(static_cast<std::size_t>(na));
    for (int i = 0; i < na; ++i) atoms.push_back(atom_off + i);
    batch.inv_atom_counts.push_back(na > 0 ? 1.0 / na : 0.0);
    atom_off += na;
    edge_off += ne;
  }
  return batch;
}

}  // namespace coolant::encoder
