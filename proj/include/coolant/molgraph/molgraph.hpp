//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "coolant/molgraph/element.hpp"

namespace coolant::chem {

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

/// Order contribution for valence accounting; aromatic counts as 1.5.
constexpr double bond_order_value(BondOrder o) {
  switch (o) {
    case BondOrder::Single: return 1.0;
    case BondOrder::Double: return 2.0;
    case BondOrder::Triple: return 3.0;
    case BondOrder::Aromatic: return 1.5;
  }
  return 0.0;
}

struct Atom {
  Element element = Element::C;
  bool aromatic = false;
  int implicit_h = 0;
};

struct Bond {
  int a = -1;  // endpoints, a < b not required but both in range and distinct
  int b = -1;
  BondOrder order = BondOrder::Single;

  int other(int idx) const { return idx == a ? b : a; }
};

struct MolGraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Connected molecular graph over heavy atoms. Hydrogens are implicit.
/// Value type: copying copies the whole graph.
class MolGraph {
public:
  MolGraph() = default;

  int add_atom(Element e, bool aromatic = false) {
    atoms_.push_back(Atom{e, aromatic, 0});
    adjacency_.emplace_back();
    return static_cast<int>(atoms_.size()) - 1;
  }

  int add_bond(int a, int b, BondOrder order) {
    if (a == b) throw MolGraphError("bond endpoints must be distinct");
    check_index(a);
    check_index(b);
    for (int bi : adjacency_[static_cast<std::size_t>(a)]) {
      const Bond& existing = bonds_[static_cast<std::size_t>(bi)];
      if (existing.other(a) == b) throw MolGraphError("parallel bond");
    }
    bonds_.push_back(Bond{a, b, order});
    const int bi = static_cast<int>(bonds_.size()) - 1;
    adjacency_[static_cast<std::size_t>(a)].push_back(bi);
    adjacency_[static_cast<std::size_t>(b)].push_back(bi);
    return bi;
  }

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }

  const Atom& atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  Atom& atom(int i) { return atoms_[static_cast<std::size_t>(i)]; }
  const Bond& bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  /// Bond indices incident to atom i.
  const std::vector<int>& incident_bonds(int i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }

  int degree(int i) const {
    return static_cast<int>(adjacency_[static_cast<std::size_t>(i)].size());
  }

  std::vector<int> neighbors(int i) const {
    std::vector<int> out;
    out.reserve(adjacency_[static_cast<std::size_t>(i)].size());
    for (int bi : adjacency_[static_cast<std::size_t>(i)]) {
      out.push_back(bonds_[static_cast<std::size_t>(bi)].other(i));
    }
    return out;
  }

  /// Bond index between a and b, or -1.
  int find_bond(int a, int b) const {
    for (int bi : adjacency_[static_cast<std::size_t>(a)]) {
      if (bonds_[static_cast<std::size_t>(bi)].other(a) == b) return bi;
    }
    return -1;
  }

  /// Sum of bond order values incident to atom i (aromatic = 1.5).
  double bond_order_sum(int i) const {
    double s = 0.0;
    for (int bi : adjacency_[static_cast<std::size_t>(i)]) {
      s += bond_order_value(bonds_[static_cast<std::size_t>(bi)].order);
    }
    return s;
  }

  /// Order consumed at atom i for valence accounting. Aromatic bonds count
  /// 1.5, except that an aromatic atom whose 1.5-count alone would overflow
  /// the default valence plus the half-bond slack is a lone-pair donor
  /// (thiophene S, furan O): its aromatic bonds are sigma-only and count 1.
  double valence_order_sum(int i) const;

  bool connected() const;

  /// Recompute implicit hydrogen counts from default valences.
  /// Throws MolGraphError if any atom's explicit bond orders exceed its
  /// valence (aromatic junctions get half-bond slack).
  void assign_implicit_hydrogens();

  /// Chordless simple cycles up to size 8, each as an atom-index list.
  /// Computed on demand and cached; see rings.hpp for the enumeration.
  const std::vector<std::vector<int>>& ring_info() const;

  /// True if every bond along the cycle is aromatic.
  bool ring_is_aromatic(const std::vector<int>& cycle) const;

private:
  void check_index(int i) const {
    if (i < 0 || i >= atom_count()) throw MolGraphError("atom index out of range");
  }

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<int>> adjacency_;

  mutable bool rings_computed_ = false;
  mutable std::vector<std::vector<int>> rings_;
};

}  // namespace coolant::chem
