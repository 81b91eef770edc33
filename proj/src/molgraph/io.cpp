//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/molgraph/io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coolant/molgraph/descriptors.hpp"
#include "coolant/molgraph/smiles.hpp"

namespace coolant::chem {

std::vector<std::string> read_smiles_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    const std::size_t end = line.find_last_not_of(" \t");
    out.push_back(line.substr(start, end - start + 1));
  }
  return out;
}

std::vector<std::string> read_smiles_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_smiles_lines(in);
}

void write_smiles_file(const std::string& path,
                       const std::vector<std::string>& smiles) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& s : smiles) out << s << '\n';
}

void write_descriptor_csv(std::ostream& out,
                          const std::vector<std::string>& smiles) {
  out << "smiles,mw,heavy,longest_chain,branching,frac_C,frac_O,frac_Si,frac_other\n";
  for (const auto& s : smiles) {
    const MolGraph g = parse_smiles(s);
    const Descriptors d = descriptors(g);
    const auto fraction = [&](Element e) {
      const auto it = d.element_fractions.find(e);
      return it == d.element_fractions.end() ? 0.0 : it->second;
    };
    const double frac_c = fraction(Element::C);
    const double frac_o = fraction(Element::O);
    const double frac_si = fraction(Element::Si);
    std::ostringstream row;
    row << s << ',' << std::setprecision(10) << d.molecular_weight << ','
        << d.heavy_atom_count << ',' << d.longest_chain << ','
        << std::setprecision(10) << d.branching_degree << ',' << frac_c << ','
        << frac_o << ',' << frac_si << ','
        << 1.0 - frac_c - frac_o - frac_si;
    out << row.str() << '\n';
  }
}

}  // namespace coolant::chem
