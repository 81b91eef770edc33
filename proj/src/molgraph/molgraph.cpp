//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/molgraph/molgraph.hpp"

#include <cmath>
#include <vector>

#include "coolant/molgraph/rings.hpp"

namespace coolant::chem {

bool MolGraph::connected() const {
  if (atoms_.empty()) return true;
  std::vector<bool> seen(atoms_.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int bi : adjacency_[static_cast<std::size_t>(v)]) {
      const int w = bonds_[static_cast<std::size_t>(bi)].other(v);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == atom_count();
}

double MolGraph::valence_order_sum(int i) const {
  const Atom& a = atoms_[static_cast<std::size_t>(i)];
  const double limit = static_cast<double>(default_valence(a.element)) + 0.5;
  double sum = bond_order_sum(i);
  if (a.aromatic && sum > limit + 1e-9) {
    sum = 0.0;
    for (int bi : adjacency_[static_cast<std::size_t>(i)]) {
      const Bond& b = bonds_[static_cast<std::size_t>(bi)];
      sum += b.order == BondOrder::Aromatic ? 1.0 : bond_order_value(b.order);
    }
  }
  return sum;
}

void MolGraph::assign_implicit_hydrogens() {
  for (int i = 0; i < atom_count(); ++i) {
    Atom& a = atoms_[static_cast<std::size_t>(i)];
    const int valence = default_valence(a.element);
    const double sum = valence_order_sum(i);
    // Aromatic junction atoms may carry a half-bond over the default valence.
    if (sum > static_cast<double>(valence) + 0.5 + 1e-9) {
      throw MolGraphError("valence exceeded on atom " + std::to_string(i));
    }
    const int used = static_cast<int>(std::ceil(sum - 1e-9));
    a.implicit_h = valence > used ? valence - used : 0;
  }
  rings_computed_ = false;
}

const std::vector<std::vector<int>>& MolGraph::ring_info() const {
  if (!rings_computed_) {
    rings_ = chordless_cycles(*this);
    rings_computed_ = true;
  }
  return rings_;
}

bool MolGraph::ring_is_aromatic(const std::vector<int>& cycle) const {
  const int n = static_cast<int>(cycle.size());
  for (int k = 0; k < n; ++k) {
    const int bi = find_bond(cycle[static_cast<std::size_t>(k)],
                             cycle[static_cast<std::size_t>((k + 1) % n)]);
    if (bi < 0 || bonds_[static_cast<std::size_t>(bi)].order != BondOrder::Aromatic) {
      return false;
    }
  }
  return true;
}

}  // namespace coolant::chem
