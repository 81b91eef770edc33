//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::chem {

enum class SmilesErrorKind {
  UnsupportedToken,
  UnclosedBranch,
  UnmatchedRingBond,
  ValenceViolation,
  DisconnectedInput,
};

/// Parse failure; `offset` is the byte position in the input string.
class SmilesError : public std::runtime_error {
public:
  SmilesError(SmilesErrorKind kind, std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at byte " + std::to_string(offset)),
        kind_(kind),
        offset_(offset) {}

  SmilesErrorKind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

private:
  SmilesErrorKind kind_;
  std::size_t offset_;
};

/// Supported grammar: element symbols B C N O F P S Cl Br I, bracket [Si],
/// aromatic c n o s, branches (...), ring closures 1-9 and %nn, bond symbols
/// - = #. No stereo, charges, isotopes, or explicit hydrogens.
MolGraph parse_smiles(const std::string& text);

/// Deterministic canonical output: atom order from Morgan-style iterative
/// refinement with input-index tie-break. parse(write(g)) is isomorphic to g.
std::string write_smiles(const MolGraph& g);

/// Canonical atom ranks used by write_smiles; rank 0 is emitted first.
/// Also used by the reactor to pick a single reaction site per molecule.
std::vector<int> canonical_ranks(const MolGraph& g);

}  // namespace coolant::chem
