//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <string>
#include <vector>

#include "coolant/filters/filters.hpp"
#include "coolant/molgraph/smiles.hpp"
#include "doctest.h"

namespace {

using coolant::filters::Violation;

coolant::filters::FilterVerdict pre(const std::string& s) {
  return coolant::filters::prefilter(coolant::chem::parse_smiles(s));
}
coolant::filters::FilterVerdict post(const std::string& s) {
  return coolant::filters::postfilter(coolant::chem::parse_smiles(s));
}

}  // namespace

TEST_SUITE("filters") {

TEST_CASE("reactant-stage rejections carry the exact violation sets") {
  SUBCASE("benzene: aromatic ring") {
    const auto v = pre("c1ccccc1");
    CHECK_FALSE(v.passed);
    CHECK(v.violations == std::vector<Violation>{Violation::AromaticRing});
  }
  SUBCASE("thiophene: sulfur and aromatic ring, in enum order") {
    const auto v = pre("c1ccsc1");
    CHECK_FALSE(v.passed);
    CHECK(v.violations ==
          std::vector<Violation>{Violation::Sulfur, Violation::AromaticRing});
  }
  SUBCASE("cyclobutane: strained ring") {
    const auto v = pre("C1CCC1");
    CHECK_FALSE(v.passed);
    CHECK(v.violations == std::vector<Violation>{Violation::StrainedRing});
  }
  SUBCASE("cyclopropane: strained ring") {
    const auto v = pre("C1CC1");
    CHECK_FALSE(v.passed);
    CHECK(v.violations == std::vector<Violation>{Violation::StrainedRing});
  }
  SUBCASE("perfluorohexane: fluorine") {
    const auto v = pre("FC(F)(F)C(F)(F)C(F)(F)C(F)(F)C(F)(F)C(F)(F)F");
    CHECK_FALSE(v.passed);
    CHECK(v.violations == std::vector<Violation>{Violation::HalogenFBrI});
  }
  SUBCASE("bromide and iodide trip the same halogen rule") {
    CHECK(pre("CCBr").violations == std::vector<Violation>{Violation::HalogenFBrI});
    CHECK(pre("CCI").violations == std::vector<Violation>{Violation::HalogenFBrI});
  }
  SUBCASE("dialkyl sulfide: sulfur without a ring") {
    const auto v = pre("CCSCC");
    CHECK_FALSE(v.passed);
    CHECK(v.violations == std::vector<Violation>{Violation::Sulfur});
  }
}

TEST_CASE("acceptable structures pass the reactant stage") {
  CHECK(pre("CCCCCC").passed);
  CHECK(pre("C[Si](C)(C)O[Si](C)(C)C").passed);  // linear siloxane
  CHECK(pre("C1CCCC1").passed);                  // five-ring is not strained
  CHECK(pre("C1CCCCC1").passed);                 // saturated six-ring
  CHECK(pre("CCO").passed);
  CHECK(pre("CC(=O)O").passed);
}

TEST_CASE("chlorine is a reactant handle but a product defect") {
  const auto before = pre("CCCl");
  CHECK(before.passed);
  CHECK(before.violations.empty());

  const auto after = post("CCCl");
  CHECK_FALSE(after.passed);
  CHECK(after.violations == std::vector<Violation>{Violation::Chlorine});
}

TEST_CASE("product stage keeps every reactant-stage rule") {
  const auto v = post("FC(F)(F)CC");
  CHECK_FALSE(v.passed);
  CHECK(v.violations == std::vector<Violation>{Violation::HalogenFBrI});
  CHECK(post("CCCCOCCC").passed);
  CHECK(post("CCOC(C)=O").passed);
}

TEST_CASE("multiple rule hits are reported together") {
  // Chlorofluorocarbon with a strained ring: three rules at once post-stage.
  const auto v = post("FC1CC1Cl");
  CHECK_FALSE(v.passed);
  CHECK(v.violations == std::vector<Violation>{Violation::HalogenFBrI,
                                               Violation::StrainedRing,
                                               Violation::Chlorine});
}

}  // TEST_SUITE("filters")
