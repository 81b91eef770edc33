//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/filters/filters.hpp"

namespace coolant::filters {

namespace {

using chem::Element;
using chem::MolGraph;

FilterVerdict evaluate(const MolGraph& g, bool reject_chlorine) {
  bool halogen_fbri = false;
  bool sulfur = false;
  bool aromatic = false;
  bool chlorine = false;
  for (const auto& a : g.atoms()) {
    switch (a.element) {
      case Element::F:
      case Element::Br:
      case Element::I: halogen_fbri = true; break;
      case Element::S: sulfur = true; break;
      case Element::Cl: chlorine = true; break;
      default: break;
    }
    if (a.aromatic) aromatic = true;
  }
  bool strained = false;
  for (const auto& cycle : g.ring_info()) {
    if (cycle.size() <= 4) strained = true;
  }

  FilterVerdict v;
  if (halogen_fbri) v.violations.push_back(Violation::HalogenFBrI);
  if (sulfur) v.violations.push_back(Violation::Sulfur);
  if (aromatic) v.violations.push_back(Violation::AromaticRing);
  if (strained) v.violations.push_back(Violation::StrainedRing);
  if (reject_chlorine && chlorine) v.violations.push_back(Violation::Chlorine);
  v.passed = v.violations.empty();
  return v;
}

}  // namespace

FilterVerdict prefilter(const MolGraph& g) { return evaluate(g, false); }

FilterVerdict postfilter(const MolGraph& g) { return evaluate(g, true); }

}  // namespace coolant::filters
