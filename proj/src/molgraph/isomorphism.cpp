//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/molgraph/isomorphism.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

namespace coolant::chem {

namespace {

using AtomKey = std::tuple<Element, bool, int, int>;  // element, aromatic, H, degree

AtomKey atom_key(const MolGraph& g, int i) {
  const Atom& a = g.atom(i);
  return {a.element, a.aromatic, a.implicit_h, g.degree(i)};
}

bool compatible(const MolGraph& a, const MolGraph& b, int ia, int ib) {
  return atom_key(a, ia) == atom_key(b, ib);
}

// Try to extend the partial map a->b at position ia.
bool extend(const MolGraph& a, const MolGraph& b, std::vector<int>& map_ab,
            std::vector<bool>& used_b, int ia) {
  if (ia == a.atom_count()) return true;
  for (int ib = 0; ib < b.atom_count(); ++ib) {
    if (used_b[static_cast<std::size_t>(ib)] || !compatible(a, b, ia, ib)) continue;
    bool ok = true;
    for (int bi : a.incident_bonds(ia)) {
      const Bond& bond_a = a.bond(bi);
      const int ja = bond_a.other(ia);
      if (ja >= ia) continue;  // neighbor not yet mapped
      const int jb = map_ab[static_cast<std::size_t>(ja)];
      const int bond_b = b.find_bond(ib, jb);
      if (bond_b < 0 || b.bond(bond_b).order != bond_a.order) {
        ok = false;
        break;
      }
    }
    if (ok) {
      // Reject mappings that would invent bonds absent from a.
      int mapped_neighbors_b = 0;
      for (int bj : b.incident_bonds(ib)) {
        const int jb = b.bond(bj).other(ib);
        for (int ja = 0; ja < ia; ++ja) {
          if (map_ab[static_cast<std::size_t>(ja)] == jb) ++mapped_neighbors_b;
        }
      }
      int mapped_neighbors_a = 0;
      for (int bi : a.incident_bonds(ia)) {
        if (a.bond(bi).other(ia) < ia) ++mapped_neighbors_a;
      }
      if (mapped_neighbors_a != mapped_neighbors_b) ok = false;
    }
    if (!ok) continue;
    map_ab[static_cast<std::size_t>(ia)] = ib;
    used_b[static_cast<std::size_t>(ib)] = true;
    if (extend(a, b, map_ab, used_b, ia + 1)) return true;
    used_b[static_cast<std::size_t>(ib)] = false;
    map_ab[static_cast<std::size_t>(ia)] = -1;
  }
  return false;
}

}  // namespace

bool isomorphic(const MolGraph& a, const MolGraph& b) {
  if (a.atom_count() != b.atom_count() || a.bond_count() != b.bond_count()) {
    return false;
  }
  std::vector<AtomKey> keys_a, keys_b;
  for (int i = 0; i < a.atom_count(); ++i) keys_a.push_back(atom_key(a, i));
  for (int i = 0; i < b.atom_count(); ++i) keys_b.push_back(atom_key(b, i));
  std::sort(keys_a.begin(), keys_a.end());
  std::sort(keys_b.begin(), keys_b.end());
  if (keys_a != keys_b) return false;

  std::vector<int> map_ab(static_cast<std::size_t>(a.atom_count()), -1);
  std::vector<bool> used_b(static_cast<std::size_t>(b.atom_count()), false);
  return extend(a, b, map_ab, used_b, 0);
}

}  // namespace coolant::chem
