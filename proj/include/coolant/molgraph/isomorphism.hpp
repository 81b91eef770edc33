//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::chem {

/// Exact graph isomorphism by backtracking over atom assignments, matching
/// element, aromaticity, implicit-H count and bond orders. Exponential worst
/// case; intended for the small molecules handled here. Independent of the
/// canonical-SMILES machinery, so it can serve as its oracle.
bool isomorphic(const MolGraph& a, const MolGraph& b);

}  // namespace coolant::chem
