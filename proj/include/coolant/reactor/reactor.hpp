//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::reactor {

enum class Role { Alcohol, Chloride, Acid };
enum class Reaction { Ether, Ester };

struct ReactorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Library member: graph plus its canonical SMILES (the dedup key).
struct Reactant {
  chem::MolGraph graph;
  std::string smiles;
};

struct ReactantSets {
  std::vector<Reactant> alcohols;
  std::vector<Reactant> chlorides;
  std::vector<Reactant> acids;
};

struct ProductRecord {
  chem::MolGraph product;
  Reaction reaction = Reaction::Ether;
  std::uint64_t parent_a = 0;  // index into alcohols
  std::uint64_t parent_b = 0;  // index into chlorides or acids
  int site_a = -1;             // alcohol O in the alcohol's atom numbering
  int site_b = -1;             // chloride Cl / carboxyl C in the partner's numbering
};

/// Next product position in the fixed stream order (all ethers in (i,j)
/// lexicographic order, then all esters).
struct Checkpoint {
  Reaction reaction = Reaction::Ether;
  std::uint64_t i = 0;
  std::uint64_t j = 0;
};

struct EnumerationCounts {
  std::uint64_t ethers = 0;
  std::uint64_t esters = 0;
  std::uint64_t total = 0;
};

/// Contiguous slice `index` of `count` over the alcohol axis.
struct Shard {
  int index = 0;
  int count = 1;
};

/// Wraps a sink exception; `checkpoint` resumes at the failed product.
class SinkFailure : public std::runtime_error {
public:
  SinkFailure(const std::string& what, Checkpoint at)
      : std::runtime_error(what), checkpoint(at) {}
  Checkpoint checkpoint;
};

/// Roles a prefiltered molecule can play. Alcohol requires a C-OH outside a
/// carboxyl group, chloride an sp3 C-Cl, acid a C(=O)OH.
std::set<Role> classify_reactant(const chem::MolGraph& g);

/// Parse, prefilter, role-check and canonical-dedupe each list.
ReactantSets build_reactant_sets(const std::vector<std::string>& alcohols,
                                 const std::vector<std::string>& chlorides,
                                 const std::vector<std::string>& acids);

/// Williamson ether synthesis: alcohol O bonds to the chloride carbon, Cl
/// leaves. One product per ordered pair: each side reacts at its site with
/// the lowest canonical rank. Throws ReactorError without a reactive site.
ProductRecord williamson(const chem::MolGraph& alcohol, const chem::MolGraph& chloride);

/// Esterification: alcohol O bonds to the carboxyl C, the acid's hydroxyl O
/// leaves as water. Site selection as in williamson.
ProductRecord esterify(const chem::MolGraph& alcohol, const chem::MolGraph& acid);

/// Pure pair arithmetic: |A|x|C| ethers and |A|x|X| esters, no products built.
EnumerationCounts count_products(const ReactantSets& sets);

/// Build every product of the shard in stream order, calling `sink` for each;
/// a false return stops early. Pairs whose two parents are the same library
/// entry (identical canonical SMILES) are skipped — intramolecular chemistry
/// is out of scope. Returns the counts actually delivered.
EnumerationCounts stream_products(const ReactantSets& sets,
                                  const std::function<bool(const ProductRecord&)>& sink,
                                  Shard shard = Shard{},
                                  const Checkpoint* resume = nullptr);

}  // namespace coolant::reactor
