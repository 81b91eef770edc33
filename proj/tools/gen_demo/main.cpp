//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "coolant/gate/dataset.hpp"
#include "coolant/molgraph/descriptors.hpp"
#include "coolant/molgraph/smiles.hpp"
#include "coolant/screen/criteria.hpp"

// Writes the committed demo inputs: a mixed parse/filter library, role-tagged
// reactants, a purchasable shortlist, and the criteria file. Rerunning with
// the same seed reproduces the files byte for byte.

namespace {

void write_lines(const std::string& path, const std::string& header,
                 const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (!header.empty()) out << header << "\n";
  for (const std::string& l : lines) out << l << "\n";
}

// Joining two reactants roughly sums their weights, and the heavy-molecule
// end of the property model fails the viscosity line; keeping the lightest
// generator output keeps the product grid inside the interesting band.
std::vector<std::string> lightest(std::vector<std::string> smiles, int keep) {
  std::stable_sort(smiles.begin(), smiles.end(),
                   [](const std::string& a, const std::string& b) {
                     return coolant::chem::descriptors(coolant::chem::parse_smiles(a))
                                .molecular_weight <
                            coolant::chem::descriptors(coolant::chem::parse_smiles(b))
                                .molecular_weight;
                   });
  if (static_cast<int>(smiles.size()) > keep) {
    smiles.resize(static_cast<std::size_t>(keep));
  }
  return smiles;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the demo input files"};
  std::string dir = "demo";
  std::uint64_t seed = 20260825;
  int alcohols = 20, chlorides = 12, acids = 8, extras = 24;
  app.add_option("--dir", dir, "Output directory");
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--alcohols", alcohols, "Alcohol count");
  app.add_option("--chlorides", chlorides, "Chloride count");
  app.add_option("--acids", acids, "Acid count");
  app.add_option("--extras", extras, "Extra library molecules");
  CLI11_PARSE(app, argc, argv);

  namespace gate = coolant::gate;
  std::filesystem::create_directories(dir);

  const std::vector<std::string> a =
      lightest(gate::random_alcohols(3 * alcohols, seed), alcohols);
  const std::vector<std::string> c =
      lightest(gate::random_chlorides(3 * chlorides, seed + 1), chlorides);
  const std::vector<std::string> x =
      lightest(gate::random_acids(3 * acids, seed + 2), acids);

  std::vector<std::string> reactant_rows;
  for (const auto& s : a) reactant_rows.push_back(s + ",alcohol");
  for (const auto& s : c) reactant_rows.push_back(s + ",chloride");
  for (const auto& s : x) reactant_rows.push_back(s + ",acid");
  write_lines(dir + "/reactants.csv", "smiles,role", reactant_rows);

  // Library: the reactants plus neutral molecules plus a few that trip each
  // structure rule, so the filter stage has something to reject.
  std::vector<std::string> library;
  for (const auto& s : a) library.push_back(s);
  for (const auto& s : c) library.push_back(s);
  for (const auto& s : x) library.push_back(s);
  for (const auto& s : gate::random_molecules(extras, 5, 9, seed + 3)) {
    library.push_back(s);
  }
  library.push_back("c1ccccc1");        // aromatic ring
  library.push_back("C1CCC1");          // strained ring
  library.push_back("CCSCC");           // sulfur
  library.push_back("FC(F)(F)CC");      // fluorine
  library.push_back("CCBr");            // bromine
  write_lines(dir + "/library.csv", "smiles", library);

  // Purchasable shortlist: catalogue skeletons the screen rescans with the
  // teacher only. Mixed on purpose: the light linear ones sit inside every
  // threshold, the heavier ones trip the viscosity line.
  write_lines(dir + "/purchasables.csv", "smiles",
              {"CCCCOCCC", "CCCCOC(C)=O", "CCCCCOCCCC", "CCCCCC(=O)OCCC",
               "CCC(C)COC(C)C"});

  coolant::screen::save_criteria(dir + "/criteria.json",
                                 coolant::screen::default_criteria());

  std::cout << "wrote " << dir << "/reactants.csv library.csv purchasables.csv"
            << " criteria.json (seed " << seed << ")\n";
  return 0;
}
