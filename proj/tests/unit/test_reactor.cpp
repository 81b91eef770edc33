//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "coolant/filters/filters.hpp"
#include "coolant/molgraph/isomorphism.hpp"
#include "coolant/molgraph/smiles.hpp"
#include "coolant/reactor/reactor.hpp"
#include "doctest.h"

namespace {

using coolant::chem::MolGraph;
using coolant::reactor::Reaction;
using coolant::reactor::ReactantSets;
using coolant::reactor::Role;

MolGraph parsed(const std::string& s) { return coolant::chem::parse_smiles(s); }

std::string canonical(const std::string& s) {
  return coolant::chem::write_smiles(parsed(s));
}

ReactantSets small_sets() {
  return coolant::reactor::build_reactant_sets(
      {"CCO", "CCCO", "CC(C)O"}, {"CCCl", "CCCCl"}, {"CC(=O)O", "CCC(=O)O"});
}

/// (reaction, parent_a, parent_b) stream for order and resume checks.
using Key = std::tuple<int, std::uint64_t, std::uint64_t>;

std::vector<Key> collect(const ReactantSets& sets,
                         coolant::reactor::Shard shard = {},
                         const coolant::reactor::Checkpoint* resume = nullptr) {
  std::vector<Key> keys;
  coolant::reactor::stream_products(
      sets,
      [&](const coolant::reactor::ProductRecord& rec) {
        keys.emplace_back(static_cast<int>(rec.reaction), rec.parent_a,
                          rec.parent_b);
        return true;
      },
      shard, resume);
  return keys;
}

}  // namespace

TEST_SUITE("reactor") {

TEST_CASE("reactant classification by functional group") {
  const auto roles = [](const std::string& s) {
    return coolant::reactor::classify_reactant(parsed(s));
  };
  CHECK(roles("CCO") == std::set<Role>{Role::Alcohol});
  CHECK(roles("CCCl") == std::set<Role>{Role::Chloride});
  CHECK(roles("CC(=O)O") == std::set<Role>{Role::Acid});
  CHECK(roles("OCCCl") == std::set<Role>{Role::Alcohol, Role::Chloride});
  CHECK(roles("OCC(=O)O") == std::set<Role>{Role::Alcohol, Role::Acid});
  CHECK(roles("CCCCCC").empty());
  CHECK(roles("CCOCC").empty());
}

TEST_CASE("williamson ether synthesis joins O to the chloride carbon") {
  const auto rec = coolant::reactor::williamson(parsed("CCO"), parsed("CCCl"));
  CHECK(rec.reaction == Reaction::Ether);
  CHECK(coolant::chem::isomorphic(rec.product, parsed("CCOCC")));
  CHECK(coolant::chem::write_smiles(rec.product) == canonical("CCOCC"));
  // The leaving chlorine is gone: the product clears the product-stage rules.
  CHECK(coolant::filters::postfilter(rec.product).passed);
}

TEST_CASE("esterification condenses out the acid hydroxyl") {
  const auto rec = coolant::reactor::esterify(parsed("CCO"), parsed("CC(=O)O"));
  CHECK(rec.reaction == Reaction::Ester);
  CHECK(coolant::chem::isomorphic(rec.product, parsed("CCOC(C)=O")));
  CHECK(coolant::filters::postfilter(rec.product).passed);
}

TEST_CASE("branched C18 ester from 2-butyl-1-octanol and 2-methyl-2-pentenoic acid") {
  const auto rec = coolant::reactor::esterify(parsed("CCCCCCC(CCCC)CO"),
                                              parsed("CCC=C(C)C(=O)O"));
  CHECK(coolant::chem::isomorphic(rec.product,
                                  parsed("CCC=C(C)C(=O)OCC(CCCC)CCCCCC")));
}

TEST_CASE("missing reactive sites raise ReactorError") {
  CHECK_THROWS_AS(coolant::reactor::williamson(parsed("CCC"), parsed("CCCl")),
                  coolant::reactor::ReactorError);
  CHECK_THROWS_AS(coolant::reactor::williamson(parsed("CCO"), parsed("CCC")),
                  coolant::reactor::ReactorError);
  CHECK_THROWS_AS(coolant::reactor::esterify(parsed("CCO"), parsed("CCOCC")),
                  coolant::reactor::ReactorError);
}

TEST_CASE("site selection is deterministic on multi-site molecules") {
  // Both hydroxyls of 1,3-propanediol lead to the same ether, so any site
  // policy must produce exactly this product.
  const auto rec = coolant::reactor::williamson(parsed("OCCCO"), parsed("CCCl"));
  CHECK(coolant::chem::write_smiles(rec.product) == canonical("CCOCCCO"));

  // Repeated runs pick the same site on an asymmetric diol.
  const auto a = coolant::reactor::williamson(parsed("OCC(C)CCO"), parsed("CCl"));
  const auto b = coolant::reactor::williamson(parsed("OCC(C)CCO"), parsed("CCl"));
  CHECK(coolant::chem::write_smiles(a.product) ==
        coolant::chem::write_smiles(b.product));
}

TEST_CASE("build_reactant_sets parses, filters, role-checks and dedupes") {
  const auto sets = coolant::reactor::build_reactant_sets(
      {"CCO", "OCC", "Oc1ccccc1", "CCCCCC", "CC(C)O"}, {"CCCl", "ClCC"}, {});
  // "OCC" duplicates "CCO"; phenol fails the prefilter; hexane has no O-H.
  CHECK(sets.alcohols.size() == 2);
  CHECK(sets.chlorides.size() == 1);
  CHECK(sets.acids.empty());
  CHECK(sets.alcohols[0].smiles == canonical("CCO"));
}

TEST_CASE("pair counting is pure arithmetic") {
  ReactantSets sets;
  sets.alcohols.resize(3);
  sets.chlorides.resize(2);
  sets.acids.resize(4);
  const auto counts = coolant::reactor::count_products(sets);
  CHECK(counts.ethers == 6);
  CHECK(counts.esters == 12);
  CHECK(counts.total == 18);
}

TEST_CASE("stream order is ethers then esters, lexicographic in (i, j)") {
  const auto sets = small_sets();
  const auto keys = collect(sets);
  std::vector<Key> expected;
  for (std::uint64_t i = 0; i < 3; ++i) {
    for (std::uint64_t j = 0; j < 2; ++j) expected.emplace_back(0, i, j);
  }
  for (std::uint64_t i = 0; i < 3; ++i) {
    for (std::uint64_t j = 0; j < 2; ++j) expected.emplace_back(1, i, j);
  }
  CHECK(keys == expected);
}

TEST_CASE("early stop counts the product that stopped the stream") {
  const auto sets = small_sets();
  int seen = 0;
  const auto counts = coolant::reactor::stream_products(
      sets, [&](const coolant::reactor::ProductRecord&) { return ++seen < 4; });
  CHECK(seen == 4);
  CHECK(counts.ethers == 4);
  CHECK(counts.esters == 0);
  CHECK(counts.total == 4);
}

TEST_CASE("sink exceptions become SinkFailure with a resume point") {
  const auto sets = small_sets();
  int seen = 0;
  coolant::reactor::Checkpoint at;
  try {
    coolant::reactor::stream_products(
        sets, [&](const coolant::reactor::ProductRecord&) {
          if (++seen == 3) throw std::runtime_error("disk full");
          return true;
        });
    FAIL("expected SinkFailure");
  } catch (const coolant::reactor::SinkFailure& e) {
    CHECK(std::string(e.what()) == "disk full");
    at = e.checkpoint;
  }
  CHECK(at.reaction == Reaction::Ether);
  CHECK(at.i == 1);
  CHECK(at.j == 0);

  // Resuming at the checkpoint retries the failed product and completes the
  // stream: the tail matches the uninterrupted run.
  const auto full = collect(sets);
  const auto tail = collect(sets, {}, &at);
  REQUIRE(tail.size() == full.size() - 2);
  for (std::size_t k = 0; k < tail.size(); ++k) CHECK(tail[k] == full[k + 2]);
}

TEST_CASE("resuming inside the ester block skips every ether") {
  const auto sets = small_sets();
  const coolant::reactor::Checkpoint at{Reaction::Ester, 0, 0};
  const auto tail = collect(sets, {}, &at);
  CHECK(tail.size() == 6);
  for (const auto& key : tail) CHECK(std::get<0>(key) == 1);
}

TEST_CASE("shards partition the alcohol axis exactly") {
  const auto sets = small_sets();
  const auto full = collect(sets);

  std::vector<Key> merged;
  for (int s = 0; s < 2; ++s) {
    const auto part = collect(sets, coolant::reactor::Shard{s, 2});
    merged.insert(merged.end(), part.begin(), part.end());
  }
  // Each shard keeps stream order internally; sorting both sides compares
  // them as sets while still catching duplicates.
  auto a = full;
  std::sort(a.begin(), a.end());
  std::sort(merged.begin(), merged.end());
  CHECK(merged == a);

  // More shards than alcohols: the extras are empty, nothing is lost.
  merged.clear();
  for (int s = 0; s < 5; ++s) {
    const auto part = collect(sets, coolant::reactor::Shard{s, 5});
    merged.insert(merged.end(), part.begin(), part.end());
  }
  std::sort(merged.begin(), merged.end());
  CHECK(merged == a);
}

TEST_CASE("a molecule paired with itself is skipped") {
  // Chloroethanol qualifies as both alcohol and chloride; the (self, self)
  // ether pair must be dropped while cross pairs survive.
  const auto sets = coolant::reactor::build_reactant_sets(
      {"OCCCl", "CCO"}, {"OCCCl", "CCCl"}, {});
  REQUIRE(sets.alcohols.size() == 2);
  REQUIRE(sets.chlorides.size() == 2);
  const auto keys = collect(sets);
  CHECK(keys.size() == 3);
  for (const auto& [r, i, j] : keys) {
    CHECK(sets.alcohols[static_cast<std::size_t>(i)].smiles !=
          sets.chlorides[static_cast<std::size_t>(j)].smiles);
  }
}

TEST_CASE("delivered counts match the label on each stream") {
  const auto sets = small_sets();
  const auto counts =
      coolant::reactor::stream_products(sets, [](const auto&) { return true; });
  CHECK(counts.ethers == 6);
  CHECK(counts.esters == 6);
  CHECK(counts.total == 12);
  const auto expected = coolant::reactor::count_products(sets);
  CHECK(counts.ethers == expected.ethers);
  CHECK(counts.esters == expected.esters);
}

}  // TEST_SUITE("reactor")
