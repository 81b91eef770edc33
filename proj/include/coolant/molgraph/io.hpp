//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::chem {

/// One SMILES per line; '#' comment lines and blank lines ignored.
std::vector<std::string> read_smiles_lines(std::istream& in);
std::vector<std::string> read_smiles_file(const std::string& path);

void write_smiles_file(const std::string& path,
                       const std::vector<std::string>& smiles);

/// Header: smiles,mw,heavy,longest_chain,branching,frac_C,frac_O,frac_Si,frac_other
void write_descriptor_csv(std::ostream& out,
                          const std::vector<std::string>& smiles);

}  // namespace coolant::chem
