//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <vector>

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::chem {

/// All chordless simple cycles of length 3..max_size, deduplicated and in a
/// canonical rotation (smallest atom first, smaller second neighbor next).
/// Molecule graphs here are sparse (max degree 4), so bounded DFS is cheap.
std::vector<std::vector<int>> chordless_cycles(const MolGraph& g,
                                               int max_size = 8);

}  // namespace coolant::chem
