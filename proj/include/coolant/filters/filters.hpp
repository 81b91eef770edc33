//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <vector>

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::filters {

enum class Violation {
  HalogenFBrI,   // any F, Br or I atom
  Sulfur,        // any S atom
  AromaticRing,  // any aromatic ring (or stray aromatic atom)
  StrainedRing,  // any ring of four or fewer atoms
  Chlorine,      // any Cl atom (post-stage only)
};

struct FilterVerdict {
  bool passed = true;
  std::vector<Violation> violations;  // every triggered rule, in enum order
};

/// Reactant-stage rules: F/Br/I, sulfur, aromatic rings and strained rings
/// are rejected; chlorine is allowed (alkyl chlorides are reactants).
FilterVerdict prefilter(const chem::MolGraph& g);

/// Product-stage rules: everything prefilter rejects plus any chlorine.
FilterVerdict postfilter(const chem::MolGraph& g);

}  // namespace coolant::filters
