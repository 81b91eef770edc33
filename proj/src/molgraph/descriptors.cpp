//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/molgraph/descriptors.hpp"

#include <algorithm>
#include <vector>

namespace coolant::chem {

namespace {

int longest_path_from(const MolGraph& g, int v, std::vector<bool>& on_path) {
  on_path[static_cast<std::size_t>(v)] = true;
  int best = 1;
  for (int bi : g.incident_bonds(v)) {
    const int w = g.bond(bi).other(v);
    if (!on_path[static_cast<std::size_t>(w)]) {
      best = std::max(best, 1 + longest_path_from(g, w, on_path));
    }
  }
  on_path[static_cast<std::size_t>(v)] = false;
  return best;
}

}  // namespace

Descriptors descriptors(const MolGraph& g) {
  Descriptors d;
  d.heavy_atom_count = g.atom_count();

  std::map<Element, int> counts;
  int branch_points = 0;
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom& a = g.atom(i);
    d.molecular_weight +=
        atomic_mass(a.element) + a.implicit_h * kHydrogenMass;
    ++counts[a.element];
    if (g.degree(i) >= 3) ++branch_points;
  }
  if (g.atom_count() > 0) {
    d.branching_degree =
        static_cast<double>(branch_points) / static_cast<double>(g.atom_count());
    for (const auto& [e, c] : counts) {
      d.element_fractions[e] =
          static_cast<double>(c) / static_cast<double>(g.atom_count());
    }
  }

  std::vector<bool> on_path(static_cast<std::size_t>(g.atom_count()), false);
  for (int i = 0; i < g.atom_count(); ++i) {
    d.longest_chain = std::max(d.longest_chain, longest_path_from(g, i, on_path));
  }
  return d;
}

namespace {

bool has_double_bond_to_oxygen(const MolGraph& g, int c) {
  for (int bi : g.incident_bonds(c)) {
    const Bond& b = g.bond(bi);
    if (b.order == BondOrder::Double && g.atom(b.other(c)).element == Element::O) {
      return true;
    }
  }
  return false;
}

bool sp3_carbon(const MolGraph& g, int c) {
  if (g.atom(c).element != Element::C || g.atom(c).aromatic) return false;
  for (int bi : g.incident_bonds(c)) {
    if (g.bond(bi).order != BondOrder::Single) return false;
  }
  return true;
}

}  // namespace

FunctionalGroupProfile detect_groups(const MolGraph& g) {
  FunctionalGroupProfile p;
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom& a = g.atom(i);
    p.contains.insert(a.element);

    if (a.element == Element::O && !a.aromatic) {
      if (g.degree(i) == 1 && a.implicit_h == 1) {
        const Bond& b = g.bond(g.incident_bonds(i)[0]);
        const int nbr = b.other(i);
        // Hydroxyl on carbon; the O-H of a carboxyl group is not an alcohol.
        if (b.order == BondOrder::Single && g.atom(nbr).element == Element::C &&
            !has_double_bond_to_oxygen(g, nbr)) {
          p.alcohol_sites.push_back(i);
        }
      } else if (g.degree(i) == 2) {
        bool ether_like = true;
        for (int bi : g.incident_bonds(i)) {
          const Bond& b = g.bond(bi);
          const int nbr = b.other(i);
          if (b.order != BondOrder::Single ||
              g.atom(nbr).element != Element::C ||
              has_double_bond_to_oxygen(g, nbr)) {
            ether_like = false;  // ester/anhydride linkage or hetero neighbor
          }
        }
        if (ether_like) p.ether_sites.push_back(i);
      }
    }

    if (a.element == Element::C && !a.aromatic) {
      bool carbonyl = false;
      bool acid_oh = false;
      bool ester_link = false;
      for (int bi : g.incident_bonds(i)) {
        const Bond& b = g.bond(bi);
        const int nbr = b.other(i);
        if (g.atom(nbr).element != Element::O) continue;
        if (b.order == BondOrder::Double) {
          carbonyl = true;
        } else if (b.order == BondOrder::Single) {
          if (g.degree(nbr) == 1 && g.atom(nbr).implicit_h == 1) acid_oh = true;
          if (g.degree(nbr) == 2) {
            for (int bj : g.incident_bonds(nbr)) {
              const int far = g.bond(bj).other(nbr);
              if (far != i && g.atom(far).element == Element::C) ester_link = true;
            }
          }
        }
      }
      if (carbonyl && acid_oh) p.carboxylic_acid_sites.push_back(i);
      if (carbonyl && ester_link) p.ester_sites.push_back(i);
    }

    if (a.element == Element::Cl && g.degree(i) == 1) {
      const int nbr = g.bond(g.incident_bonds(i)[0]).other(i);
      if (sp3_carbon(g, nbr)) p.alkyl_chloride_sites.push_back(i);
    }

    if (a.element == Element::Si) {
      for (int bi : g.incident_bonds(i)) {
        const Bond& b = g.bond(bi);
        if (b.order == BondOrder::Single &&
            g.atom(b.other(i)).element == Element::O) {
          p.siloxane_sites.push_back(i);
          break;
        }
      }
    }
  }

  for (const auto& cycle : g.ring_info()) {
    if (g.ring_is_aromatic(cycle)) {
      p.aromatic_ring = true;
      break;
    }
  }
  return p;
}

RingReport ring_atoms(const MolGraph& g) {
  RingReport r;
  r.cycles = g.ring_info();
  r.aromatic.reserve(r.cycles.size());
  for (const auto& cycle : r.cycles) {
    r.aromatic.push_back(g.ring_is_aromatic(cycle));
  }
  return r;
}

}  // namespace coolant::chem
