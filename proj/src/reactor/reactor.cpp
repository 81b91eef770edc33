//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/reactor/reactor.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "coolant/filters/filters.hpp"
#include "coolant/molgraph/descriptors.hpp"
#include "coolant/molgraph/smiles.hpp"

namespace coolant::reactor {

namespace {

using chem::BondOrder;
using chem::Element;
using chem::MolGraph;

// Site with the lowest canonical rank, for one-product-per-pair determinism.
int lowest_rank_site(const MolGraph& g, const std::vector<int>& sites) {
  const std::vector<int> ranks = chem::canonical_ranks(g);
  int best = -1;
  for (int s : sites) {
    if (best < 0 || ranks[static_cast<std::size_t>(s)] <
                        ranks[static_cast<std::size_t>(best)]) {
      best = s;
    }
  }
  return best;
}

// Copy `src` into `dst` skipping `omit`; returns old->new index map (-1 for
// the omitted atom).
std::vector<int> graft(MolGraph& dst, const MolGraph& src, int omit) {
  std::vector<int> map(static_cast<std::size_t>(src.atom_count()), -1);
  for (int i = 0; i < src.atom_count(); ++i) {
    if (i == omit) continue;
    map[static_cast<std::size_t>(i)] =
        dst.add_atom(src.atom(i).element, src.atom(i).aromatic);
  }
  for (const auto& b : src.bonds()) {
    if (b.a == omit || b.b == omit) continue;
    dst.add_bond(map[static_cast<std::size_t>(b.a)],
                 map[static_cast<std::size_t>(b.b)], b.order);
  }
  return map;
}

MolGraph copy_all(const MolGraph& src) {
  MolGraph g;
  graft(g, src, -1);
  return g;
}

}  // namespace

std::set<Role> classify_reactant(const MolGraph& g) {
  const chem::FunctionalGroupProfile p = chem::detect_groups(g);
  std::set<Role> roles;
  if (p.alcohol()) roles.insert(Role::Alcohol);
  if (p.alkyl_chloride()) roles.insert(Role::Chloride);
  if (p.carboxylic_acid()) roles.insert(Role::Acid);
  return roles;
}

ReactantSets build_reactant_sets(const std::vector<std::string>& alcohols,
                                 const std::vector<std::string>& chlorides,
                                 const std::vector<std::string>& acids) {
  ReactantSets sets;
  const auto admit = [](const std::vector<std::string>& smiles, Role role,
                        std::vector<Reactant>& out) {
    std::unordered_set<std::string> seen;
    for (const auto& s : smiles) {
      MolGraph g = chem::parse_smiles(s);
      if (!filters::prefilter(g).passed) continue;
      if (!classify_reactant(g).count(role)) continue;
      std::string canonical = chem::write_smiles(g);
      if (!seen.insert(canonical).second) continue;
      out.push_back(Reactant{std::move(g), std::move(canonical)});
    }
  };
  admit(alcohols, Role::Alcohol, sets.alcohols);
  admit(chlorides, Role::Chloride, sets.chlorides);
  admit(acids, Role::Acid, sets.acids);
  return sets;
}

ProductRecord williamson(const MolGraph& alcohol, const MolGraph& chloride) {
  const auto pa = chem::detect_groups(alcohol);
  const auto pc = chem::detect_groups(chloride);
  if (pa.alcohol_sites.empty()) throw ReactorError("alcohol has no C-OH site");
  if (pc.alkyl_chloride_sites.empty()) throw ReactorError("chloride has no sp3 C-Cl site");

  const int o_site = lowest_rank_site(alcohol, pa.alcohol_sites);
  const int cl_site = lowest_rank_site(chloride, pc.alkyl_chloride_sites);
  const int c_site = chloride.bond(chloride.incident_bonds(cl_site)[0]).other(cl_site);

  ProductRecord rec;
  rec.reaction = Reaction::Ether;
  rec.site_a = o_site;
  rec.site_b = cl_site;
  MolGraph p = copy_all(alcohol);
  const std::vector<int> map = graft(p, chloride, cl_site);
  p.add_bond(o_site, map[static_cast<std::size_t>(c_site)], BondOrder::Single);
  p.assign_implicit_hydrogens();
  rec.product = std::move(p);
  return rec;
}

ProductRecord esterify(const MolGraph& alcohol, const MolGraph& acid) {
  const auto pa = chem::detect_groups(alcohol);
  const auto px = chem::detect_groups(acid);
  if (pa.alcohol_sites.empty()) throw ReactorError("alcohol has no C-OH site");
  if (px.carboxylic_acid_sites.empty()) throw ReactorError("acid has no C(=O)OH site");

  const int o_site = lowest_rank_site(alcohol, pa.alcohol_sites);
  const int acid_c = lowest_rank_site(acid, px.carboxylic_acid_sites);

  // The leaving hydroxyl O of the chosen carboxyl group.
  int oh_site = -1;
  for (int bi : acid.incident_bonds(acid_c)) {
    const auto& b = acid.bond(bi);
    const int nbr = b.other(acid_c);
    if (b.order == BondOrder::Single && acid.atom(nbr).element == Element::O &&
        acid.degree(nbr) == 1 && acid.atom(nbr).implicit_h == 1) {
      oh_site = nbr;
      break;
    }
  }
  if (oh_site < 0) throw ReactorError("carboxyl group lost its hydroxyl");

  ProductRecord rec;
  rec.reaction = Reaction::Ester;
  rec.site_a = o_site;
  rec.site_b = acid_c;
  MolGraph p = copy_all(alcohol);
  const std::vector<int> map = graft(p, acid, oh_site);
  p.add_bond(o_site, map[static_cast<std::size_t>(acid_c)], BondOrder::Single);
  p.assign_implicit_hydrogens();
  rec.product = std::move(p);
  return rec;
}

EnumerationCounts count_products(const ReactantSets& sets) {
  EnumerationCounts c;
  c.ethers = static_cast<std::uint64_t>(sets.alcohols.size()) *
             static_cast<std::uint64_t>(sets.chlorides.size());
  c.esters = static_cast<std::uint64_t>(sets.alcohols.size()) *
             static_cast<std::uint64_t>(sets.acids.size());
  c.total = c.ethers + c.esters;
  return c;
}

namespace {

// [begin, end) of the alcohol axis for a contiguous shard.
std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t n, Shard shard) {
  if (shard.count < 1 || shard.index < 0 || shard.index >= shard.count) {
    throw ReactorError("invalid shard spec");
  }
  const auto k = static_cast<std::uint64_t>(shard.index);
  const auto c = static_cast<std::uint64_t>(shard.count);
  return {n * k / c, n * (k + 1) / c};
}

}  // namespace

EnumerationCounts stream_products(const ReactantSets& sets,
                                  const std::function<bool(const ProductRecord&)>& sink,
                                  Shard shard, const Checkpoint* resume) {
  EnumerationCounts delivered;
  const auto [i_begin, i_end] =
      shard_range(static_cast<std::uint64_t>(sets.alcohols.size()), shard);

  const auto run = [&](Reaction reaction, const std::vector<Reactant>& partners,
                       std::uint64_t& count) -> bool {
    std::uint64_t start_i = i_begin;
    std::uint64_t start_j = 0;
    if (resume) {
      if (static_cast<int>(resume->reaction) > static_cast<int>(reaction)) return true;
      if (resume->reaction == reaction) {
        start_i = std::max(start_i, resume->i);
        start_j = resume->j;
      }
    }
    for (std::uint64_t i = start_i; i < i_end; ++i) {
      const Reactant& a = sets.alcohols[static_cast<std::size_t>(i)];
      for (std::uint64_t j = (i == start_i ? start_j : 0);
           j < partners.size(); ++j) {
        const Reactant& b = partners[static_cast<std::size_t>(j)];
        if (a.smiles == b.smiles) continue;  // same library entry
        ProductRecord rec = reaction == Reaction::Ether
                                ? williamson(a.graph, b.graph)
                                : esterify(a.graph, b.graph);
        rec.parent_a = i;
        rec.parent_b = j;
        bool keep_going = false;
        try {
          keep_going = sink(rec);
        } catch (const std::exception& e) {
          throw SinkFailure(e.what(), Checkpoint{reaction, i, j});
        }
        ++count;
        if (!keep_going) return false;
      }
    }
    return true;
  };

  if (run(Reaction::Ether, sets.chlorides, delivered.ethers)) {
    run(Reaction::Ester, sets.acids, delivered.esters);
  }
  delivered.total = delivered.ethers + delivered.esters;
  return delivered;
}

}  // namespace coolant::reactor
