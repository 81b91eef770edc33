//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <set>
#include <vector>

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::chem {

struct Descriptors {
  double molecular_weight = 0.0;  // amu, implicit hydrogens included
  int heavy_atom_count = 0;
  int longest_chain = 0;          // longest simple path in the heavy-atom graph
  double branching_degree = 0.0;  // fraction of heavy atoms with >= 3 heavy neighbors
  std::map<Element, double> element_fractions;  // over heavy atoms, sums to 1
};

Descriptors descriptors(const MolGraph& g);

/// Structural motifs used by the filters and the reaction templates.
/// Site indices are atom indices into the source graph:
///   alcohol            the hydroxyl O (C-OH outside a carboxyl group)
///   carboxylic_acid    the carboxyl C of C(=O)OH
///   alkyl_chloride     the Cl bonded to an sp3 carbon
///   ether              the bridging O of C-O-C (ester linkages excluded)
///   ester              the carbonyl C of C(=O)O-C
///   siloxane           the Si of an Si-O bond
struct FunctionalGroupProfile {
  std::vector<int> alcohol_sites;
  std::vector<int> carboxylic_acid_sites;
  std::vector<int> alkyl_chloride_sites;
  std::vector<int> ether_sites;
  std::vector<int> ester_sites;
  std::vector<int> siloxane_sites;
  bool aromatic_ring = false;
  std::set<Element> contains;

  bool alcohol() const { return !alcohol_sites.empty(); }
  bool carboxylic_acid() const { return !carboxylic_acid_sites.empty(); }
  bool alkyl_chloride() const { return !alkyl_chloride_sites.empty(); }
  bool ether() const { return !ether_sites.empty(); }
  bool ester() const { return !ester_sites.empty(); }
  bool siloxane() const { return !siloxane_sites.empty(); }
};

/// Explicit subgraph matching on element / bond order / implicit-H counts.
FunctionalGroupProfile detect_groups(const MolGraph& g);

/// Ring system of the graph: chordless cycles up to size 8 plus per-ring
/// aromaticity flags.
struct RingReport {
  std::vector<std::vector<int>> cycles;
  std::vector<bool> aromatic;
};

RingReport ring_atoms(const MolGraph& g);

}  // namespace coolant::chem
