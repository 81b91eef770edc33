//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coolant/molgraph/descriptors.hpp"
#include "coolant/molgraph/io.hpp"
#include "coolant/molgraph/isomorphism.hpp"
#include "coolant/molgraph/molgraph.hpp"
#include "coolant/molgraph/rings.hpp"
#include "coolant/molgraph/smiles.hpp"
#include "doctest.h"

namespace {

using coolant::chem::BondOrder;
using coolant::chem::Element;
using coolant::chem::MolGraph;

MolGraph parsed(const std::string& s) { return coolant::chem::parse_smiles(s); }

std::string canonical(const std::string& s) {
  return coolant::chem::write_smiles(parsed(s));
}

/// Ethyl acetate assembled atom by atom, the oracle for parser and reactor
/// comparisons: CH3-C(=O)-O-CH2-CH3.
MolGraph hand_built_ethyl_acetate() {
  MolGraph g;
  const int methyl = g.add_atom(Element::C);
  const int carbonyl = g.add_atom(Element::C);
  const int oxo = g.add_atom(Element::O);
  const int bridge = g.add_atom(Element::O);
  const int ch2 = g.add_atom(Element::C);
  const int ch3 = g.add_atom(Element::C);
  g.add_bond(methyl, carbonyl, BondOrder::Single);
  g.add_bond(carbonyl, oxo, BondOrder::Double);
  g.add_bond(carbonyl, bridge, BondOrder::Single);
  g.add_bond(bridge, ch2, BondOrder::Single);
  g.add_bond(ch2, ch3, BondOrder::Single);
  g.assign_implicit_hydrogens();
  return g;
}

}  // namespace

TEST_SUITE("molgraph") {

TEST_CASE("ethanol parses to the expected graph") {
  const MolGraph g = parsed("CCO");
  REQUIRE(g.atom_count() == 3);
  REQUIRE(g.bond_count() == 2);
  CHECK(g.atom(0).element == Element::C);
  CHECK(g.atom(1).element == Element::C);
  CHECK(g.atom(2).element == Element::O);
  CHECK(g.atom(0).implicit_h == 3);
  CHECK(g.atom(1).implicit_h == 2);
  CHECK(g.atom(2).implicit_h == 1);
  CHECK(g.connected());
}

TEST_CASE("molecular weights match standard atomic masses") {
  // Hand sums over CODATA standard weights (implicit hydrogens included).
  CHECK(coolant::chem::descriptors(parsed("CCO")).molecular_weight ==
        doctest::Approx(46.069).epsilon(1e-9));
  CHECK(coolant::chem::descriptors(parsed("CCOCC")).molecular_weight ==
        doctest::Approx(74.123).epsilon(1e-9));
  CHECK(coolant::chem::descriptors(parsed("CCOC(C)=O")).molecular_weight ==
        doctest::Approx(88.106).epsilon(1e-9));
  CHECK(coolant::chem::descriptors(parsed("CC(C)(C)C")).molecular_weight ==
        doctest::Approx(72.151).epsilon(1e-9));
  CHECK(coolant::chem::descriptors(parsed("C[Si](C)(C)O[Si](C)(C)C"))
            .molecular_weight == doctest::Approx(162.381).epsilon(1e-9));
}

TEST_CASE("hand-built ethyl acetate matches both SMILES spellings") {
  const MolGraph oracle = hand_built_ethyl_acetate();
  CHECK(coolant::chem::isomorphic(oracle, parsed("CCOC(C)=O")));
  CHECK(coolant::chem::isomorphic(oracle, parsed("CC(=O)OCC")));
  CHECK(coolant::chem::write_smiles(oracle) == canonical("CCOC(C)=O"));
}

TEST_CASE("canonical SMILES is spelling-invariant and reparse-stable") {
  const std::vector<std::pair<std::string, std::string>> spellings = {
      {"CCO", "OCC"},
      {"CC(C)C", "C(C)(C)C"},
      {"CCOC(C)=O", "O=C(C)OCC"},
      {"C1CCCCC1", "C2CCCCC2"},
      {"CCCCCCC(CCCC)CO", "OCC(CCCCCC)CCCC"},
  };
  for (const auto& [a, b] : spellings) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(canonical(a) == canonical(b));
    const std::string c = canonical(a);
    CHECK(canonical(c) == c);  // idempotent on its own output
    CHECK(coolant::chem::isomorphic(parsed(a), parsed(c)));
  }
}

TEST_CASE("canonical ranks are a permutation") {
  const MolGraph g = parsed("CCC(C)CO");
  const std::vector<int> ranks = coolant::chem::canonical_ranks(g);
  REQUIRE(static_cast<int>(ranks.size()) == g.atom_count());
  std::vector<int> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < g.atom_count(); ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("isomorphism distinguishes constitutional isomers and bond orders") {
  CHECK(coolant::chem::isomorphic(parsed("CCO"), parsed("OCC")));
  CHECK_FALSE(coolant::chem::isomorphic(parsed("CCO"), parsed("CCC")));
  CHECK_FALSE(coolant::chem::isomorphic(parsed("CC(C)O"), parsed("CCCO")));
  CHECK_FALSE(coolant::chem::isomorphic(parsed("C=CCC"), parsed("CC=CC")));
}

TEST_CASE("functional group detection") {
  SUBCASE("alcohol") {
    const auto p = coolant::chem::detect_groups(parsed("CCO"));
    CHECK(p.alcohol());
    CHECK(p.alcohol_sites == std::vector<int>{2});
    CHECK_FALSE(p.carboxylic_acid());
    CHECK(p.contains == std::set<Element>{Element::C, Element::O});
  }
  SUBCASE("carboxylic acid is not an alcohol") {
    const auto p = coolant::chem::detect_groups(parsed("CC(=O)O"));
    CHECK(p.carboxylic_acid());
    CHECK(p.carboxylic_acid_sites == std::vector<int>{1});
    CHECK_FALSE(p.alcohol());
  }
  SUBCASE("hydroxy acid carries both groups") {
    const auto p = coolant::chem::detect_groups(parsed("OCC(=O)O"));
    CHECK(p.alcohol());
    CHECK(p.carboxylic_acid());
  }
  SUBCASE("ester linkage is not an ether") {
    const auto p = coolant::chem::detect_groups(parsed("CCOC(C)=O"));
    CHECK(p.ester());
    CHECK_FALSE(p.ether());
    CHECK_FALSE(p.carboxylic_acid());
  }
  SUBCASE("ether bridge") {
    const auto p = coolant::chem::detect_groups(parsed("CCOCC"));
    CHECK(p.ether());
    CHECK(p.ether_sites == std::vector<int>{2});
    CHECK_FALSE(p.ester());
  }
  SUBCASE("alkyl chloride requires an sp3 carbon") {
    CHECK(coolant::chem::detect_groups(parsed("CCCl")).alkyl_chloride());
    CHECK_FALSE(coolant::chem::detect_groups(parsed("ClC=C")).alkyl_chloride());
  }
  SUBCASE("siloxane") {
    const auto p = coolant::chem::detect_groups(parsed("C[Si](C)(C)O[Si](C)(C)C"));
    CHECK(p.siloxane());
    CHECK(p.siloxane_sites.size() == 2);
  }
}

TEST_CASE("ring perception") {
  SUBCASE("cyclohexane has one non-aromatic six-ring") {
    const auto report = coolant::chem::ring_atoms(parsed("C1CCCCC1"));
    REQUIRE(report.cycles.size() == 1);
    CHECK(report.cycles[0].size() == 6);
    CHECK_FALSE(report.aromatic[0]);
  }
  SUBCASE("benzene ring is aromatic") {
    const auto report = coolant::chem::ring_atoms(parsed("c1ccccc1"));
    REQUIRE(report.cycles.size() == 1);
    CHECK(report.aromatic[0]);
  }
  SUBCASE("five-membered lone-pair-donor heteroaromatics parse") {
    // The S and O carry two sigma ring bonds and no hydrogens.
    const MolGraph thiophene = parsed("c1ccsc1");
    const MolGraph furan = parsed("c1ccoc1");
    CHECK(thiophene.atom(3).implicit_h == 0);
    CHECK(furan.atom(3).implicit_h == 0);
    CHECK(coolant::chem::ring_atoms(thiophene).aromatic[0]);
  }
  SUBCASE("decalin decomposes into its two chordless six-rings") {
    const auto cycles = coolant::chem::chordless_cycles(parsed("C1CCC2CCCCC2C1"));
    REQUIRE(cycles.size() == 2);
    CHECK(cycles[0].size() == 6);
    CHECK(cycles[1].size() == 6);
  }
  SUBCASE("acyclic molecules report no rings") {
    CHECK(coolant::chem::ring_atoms(parsed("CCCCC")).cycles.empty());
  }
}

TEST_CASE("descriptor values on known skeletons") {
  const auto hexane = coolant::chem::descriptors(parsed("CCCCCC"));
  CHECK(hexane.heavy_atom_count == 6);
  CHECK(hexane.longest_chain == 6);
  CHECK(hexane.branching_degree == doctest::Approx(0.0));

  const auto isohexane = coolant::chem::descriptors(parsed("CCCC(C)C"));
  CHECK(isohexane.longest_chain == 5);
  CHECK(isohexane.branching_degree == doctest::Approx(1.0 / 6.0));

  double total = 0.0;
  for (const auto& [e, f] : isohexane.element_fractions) total += f;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parse errors carry kind and offset") {
  using coolant::chem::SmilesError;
  using coolant::chem::SmilesErrorKind;
  const auto kind_of = [](const std::string& s) {
    try {
      parsed(s);
    } catch (const SmilesError& e) {
      return e.kind();
    }
    FAIL("expected SmilesError for ", s);
    return SmilesErrorKind::UnsupportedToken;
  };
  CHECK(kind_of("CC(C") == SmilesErrorKind::UnclosedBranch);
  CHECK(kind_of("C1CC") == SmilesErrorKind::UnmatchedRingBond);
  CHECK(kind_of("C(C)(C)(C)(C)C") == SmilesErrorKind::ValenceViolation);
  CHECK(kind_of("C.C") == SmilesErrorKind::DisconnectedInput);
  CHECK(kind_of("[Xe]CC") == SmilesErrorKind::UnsupportedToken);
  CHECK(kind_of("CC@") == SmilesErrorKind::UnsupportedToken);
}

TEST_CASE("graph construction rejects malformed bonds") {
  MolGraph g;
  const int a = g.add_atom(Element::C);
  const int b = g.add_atom(Element::C);
  g.add_bond(a, b, BondOrder::Single);
  CHECK_THROWS_AS(g.add_bond(a, a, BondOrder::Single), coolant::chem::MolGraphError);
  CHECK_THROWS_AS(g.add_bond(a, b, BondOrder::Single), coolant::chem::MolGraphError);
  CHECK_THROWS_AS(g.add_bond(a, 7, BondOrder::Single), coolant::chem::MolGraphError);
  CHECK(g.find_bond(a, b) == 0);
  CHECK(g.neighbors(a) == std::vector<int>{b});
  CHECK(g.bond_order_sum(a) == doctest::Approx(1.0));
}

TEST_CASE("smiles line reader skips blanks and comments") {
  std::istringstream in("CCO\n\n# a comment\nCCC\n");
  const auto lines = coolant::chem::read_smiles_lines(in);
  CHECK(lines == std::vector<std::string>{"CCO", "CCC"});
}

TEST_CASE("descriptor CSV header is stable") {
  std::ostringstream out;
  coolant::chem::write_descriptor_csv(out, {"CCO"});
  const std::string text = out.str();
  CHECK(text.rfind("smiles,mw,heavy,longest_chain,branching,frac_C,frac_O,"
                   "frac_Si,frac_other",
                   0) == 0);
}

}  // TEST_SUITE("molgraph")
