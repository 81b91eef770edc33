//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coolant/core/rng.hpp"
#include "coolant/gate/dataset.hpp"
#include "coolant/gate/train.hpp"
#include "coolant/molgraph/smiles.hpp"
#include "coolant/reactor/reactor.hpp"
#include "coolant/screen/criteria.hpp"
#include "coolant/screen/properties.hpp"
#include "coolant/screen/screening.hpp"
#include "coolant/surrogate/surrogate.hpp"
#include "doctest.h"

namespace {

using coolant::Rng;
using coolant::screen::CriteriaSet;
using coolant::screen::Direction;
using coolant::screen::Property;
using coolant::screen::PropertyVector;

PropertyVector passing_vector() {
  PropertyVector pv;
  pv.boiling_point = 200.0;
  pv.melting_point = -50.0;
  pv.flash_point = 160.0;
  pv.critical_temperature = 200.0;
  pv.decomposition_temperature = 200.0;
  pv.specific_heat = 2.0;
  pv.vapor_pressure = 0.1;
  pv.dynamic_viscosity = 0.005;
  pv.density = 900.0;
  pv.dielectric_constant = 2.0;
  return pv;
}

/// Every gated property sat exactly on its threshold.
PropertyVector boundary_vector() {
  PropertyVector pv = passing_vector();
  pv.boiling_point = 150.0;
  pv.melting_point = -30.0;
  pv.flash_point = 140.0;
  pv.critical_temperature = 155.0;
  pv.decomposition_temperature = 150.0;
  pv.vapor_pressure = 0.8;
  pv.dynamic_viscosity = 0.015;
  pv.density = 2000.0;
  pv.dielectric_constant = 6.0;
  return pv;
}

double threshold_value(const CriteriaSet& set, Property p) {
  const auto* spec = set.find(p);
  REQUIRE(spec != nullptr);
  return spec->value;
}

/// Independent re-derivation of the partition grid, written as plain ifs.
std::optional<int> naive_partition(double eps, double fp) {
  int col = 0;
  if (eps <= 2.3)
    col = 1;
  else if (eps <= 4.0)
    col = 2;
  else if (eps <= 6.0)
    col = 3;
  else
    return std::nullopt;
  if (fp > 150.0) return col;
  if (fp >= 140.0) return col + 3;
  return std::nullopt;
}

const coolant::gate::GateModel& desk_teacher() {
  static const coolant::gate::TrainOutcome outcome = [] {
    const auto mols = coolant::gate::random_molecules(30, 4, 9, 53);
    const auto ds = coolant::gate::make_property_tasks(mols, 0.05, 53);
    coolant::gate::GateConfig cfg;
    cfg.enc.hidden = 8;
    cfg.enc.latent = 4;
    cfg.enc.depth = 1;
    cfg.head_hidden = 6;
    cfg.epochs = 3;
    cfg.batch = 16;
    cfg.lr = 1e-3;
    cfg.perturbations = 2;
    cfg.seed = 99;
    return coolant::gate::train_gate(ds, cfg);
  }();
  return outcome.model;
}

struct DeskRig {
  coolant::reactor::ReactantSets sets;
  std::vector<coolant::reactor::Reactant> purchasables;
  coolant::surrogate::EmbeddingTable table;
  coolant::surrogate::SurrogateModel model;

  DeskRig()
      : sets(coolant::reactor::build_reactant_sets(
            {"CCO", "CCCO", "CC(C)CO"}, {"CCCl", "CCCCl"},
            {"CC(=O)O", "CCC(=O)O"})),
        model(coolant::surrogate::SurrogateModel::create({})) {
    for (const auto& s : {"CCOCC", "CCCOC"}) {
      coolant::reactor::Reactant r;
      r.graph = coolant::chem::parse_smiles(s);
      r.smiles = coolant::chem::write_smiles(r.graph);
      purchasables.push_back(std::move(r));
    }
    std::vector<std::string> ids;
    std::vector<const coolant::chem::MolGraph*> graphs;
    for (const auto* side : {&sets.alcohols, &sets.chlorides, &sets.acids}) {
      for (const auto& r : *side) {
        ids.push_back(r.smiles);
        graphs.push_back(&r.graph);
      }
    }
    table = coolant::surrogate::build_lookup(ids, graphs, desk_teacher());
    const auto pairs = coolant::surrogate::sample_pairs(3, 4, 1.0, 8);
    const auto sample = coolant::surrogate::build_distillation(
        sets, table, desk_teacher(), pairs);
    coolant::surrogate::SurrogateConfig cfg;
    cfg.latent = 4;
    cfg.epochs = 30;
    cfg.batch = 8;
    cfg.lr = 1e-3;
    cfg.seed = 12;
    model = coolant::surrogate::train_surrogate(sample, cfg).model;
  }
};

const DeskRig& desk_rig() {
  static const DeskRig rig;
  return rig;
}

}  // namespace

TEST_SUITE("screening") {

TEST_CASE("property and direction names round trip") {
  for (int t = 0; t < coolant::screen::kPropertyCount; ++t) {
    const auto p = static_cast<Property>(t);
    const auto back = coolant::screen::property_from_name(
        coolant::screen::property_name(p));
    REQUIRE(back.has_value());
    CHECK(*back == p);
  }
  CHECK_FALSE(coolant::screen::property_from_name("frobnication").has_value());
  for (const auto d : {Direction::Greater, Direction::Less, Direction::Leq}) {
    const auto back = coolant::screen::direction_from_name(
        coolant::screen::direction_name(d));
    REQUIRE(back.has_value());
    CHECK(*back == d);
  }
  CHECK_FALSE(coolant::screen::direction_from_name("sideways").has_value());
}

TEST_CASE("property vectors round trip and track finiteness") {
  PropertyVector pv = passing_vector();
  for (int t = 0; t < 10; ++t) {
    const auto p = static_cast<Property>(t);
    pv.set(p, 1.5 * t + 0.25);
    CHECK(pv.get(p) == 1.5 * t + 0.25);
  }
  const auto values = pv.to_vector();
  REQUIRE(values.size() == 10);
  const PropertyVector back = PropertyVector::from_vector(values);
  for (int t = 0; t < 10; ++t) {
    CHECK(back.get(static_cast<Property>(t)) == pv.get(static_cast<Property>(t)));
  }
  CHECK(pv.finite());
  pv.density = std::nan("");
  CHECK_FALSE(pv.finite());
  CHECK_THROWS_AS(PropertyVector::from_vector({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("default criteria pin the acceptance thresholds") {
  const CriteriaSet set = coolant::screen::default_criteria();
  CHECK(set.thresholds.size() == 9);
  set.validate();

  const auto check_one = [&](Property p, Direction d, double v) {
    const auto* spec = set.find(p);
    REQUIRE(spec != nullptr);
    CHECK(spec->direction == d);
    CHECK(spec->value == v);
  };
  check_one(Property::BoilingPoint, Direction::Greater, 150.0);
  check_one(Property::MeltingPoint, Direction::Less, -30.0);
  check_one(Property::FlashPoint, Direction::Greater, 140.0);
  check_one(Property::CriticalTemperature, Direction::Greater, 155.0);
  check_one(Property::DecompositionTemperature, Direction::Greater, 150.0);
  check_one(Property::VaporPressure, Direction::Less, 0.8);
  check_one(Property::DynamicViscosity, Direction::Less, 0.015);
  check_one(Property::Density, Direction::Less, 2000.0);
  check_one(Property::DielectricConstant, Direction::Leq, 6.0);
  // Specific heat is reported, never gated.
  CHECK(set.find(Property::SpecificHeat) == nullptr);
}

TEST_CASE("evaluate applies strict and non-strict comparisons") {
  const CriteriaSet set = coolant::screen::default_criteria();

  SUBCASE("the hand-checked passing vector clears every threshold") {
    const auto res = coolant::screen::evaluate(passing_vector(), set);
    CHECK(res.pass);
    CHECK(std::count(res.passed.begin(), res.passed.end(), 1) == 9);
  }

  SUBCASE("exact boundaries fail strict directions, pass the Leq one") {
    const auto res = coolant::screen::evaluate(boundary_vector(), set);
    CHECK_FALSE(res.pass);
    for (std::size_t k = 0; k < set.thresholds.size(); ++k) {
      const bool is_leq = set.thresholds[k].direction == Direction::Leq;
      CHECK(static_cast<bool>(res.passed[k]) == is_leq);
    }
  }

  SUBCASE("dielectric exactly 6 passes on its own") {
    PropertyVector pv = passing_vector();
    pv.dielectric_constant = 6.0;
    CHECK(coolant::screen::evaluate(pv, set).pass);
    pv.dielectric_constant = 6.0000001;
    CHECK_FALSE(coolant::screen::evaluate(pv, set).pass);
  }

  SUBCASE("improving any property never flips pass to fail") {
    Rng rng(71);
    for (int trial = 0; trial < 200; ++trial) {
      PropertyVector pv = passing_vector();
      // Random perturbation around the passing point, both directions.
      for (int t = 0; t < 10; ++t) {
        const auto p = static_cast<Property>(t);
        pv.set(p, pv.get(p) * rng.uniform(0.4, 1.6));
      }
      const auto before = coolant::screen::evaluate(pv, set);
      for (std::size_t k = 0; k < set.thresholds.size(); ++k) {
        PropertyVector better = pv;
        const auto& spec = set.thresholds[k];
        const double bump = 1.0 + std::abs(spec.value);
        better.set(spec.property, spec.direction == Direction::Greater
                                      ? better.get(spec.property) + bump
                                      : better.get(spec.property) - bump);
        const auto after = coolant::screen::evaluate(better, set);
        if (before.passed[k]) CHECK(after.passed[k]);
      }
    }
  }
}

TEST_CASE("relaxation moves every threshold toward leniency") {
  const CriteriaSet base = coolant::screen::default_criteria();
  const CriteriaSet relaxed = coolant::screen::relax(base, 0.15);
  CHECK(threshold_value(relaxed, Property::BoilingPoint) == doctest::Approx(127.5));
  CHECK(threshold_value(relaxed, Property::MeltingPoint) == doctest::Approx(-25.5));
  CHECK(threshold_value(relaxed, Property::FlashPoint) == doctest::Approx(119.0));
  CHECK(threshold_value(relaxed, Property::CriticalTemperature) ==
        doctest::Approx(131.75));
  CHECK(threshold_value(relaxed, Property::DecompositionTemperature) ==
        doctest::Approx(127.5));
  CHECK(threshold_value(relaxed, Property::VaporPressure) == doctest::Approx(0.92));
  CHECK(threshold_value(relaxed, Property::DynamicViscosity) ==
        doctest::Approx(0.01725));
  CHECK(threshold_value(relaxed, Property::Density) == doctest::Approx(2300.0));
  CHECK(threshold_value(relaxed, Property::DielectricConstant) ==
        doctest::Approx(6.9));

  CHECK(coolant::screen::relax(base, 0.0).thresholds[0].value ==
        base.thresholds[0].value);
  CHECK_THROWS_AS(coolant::screen::relax(base, -0.1), std::invalid_argument);

  coolant::screen::check_relaxation(base, relaxed);  // must not throw
  CHECK_THROWS_AS(coolant::screen::check_relaxation(relaxed, base),
                  coolant::screen::RelaxationInversion);
}

TEST_CASE("duplicate thresholds are rejected") {
  CriteriaSet set;
  set.thresholds.push_back({Property::Density, Direction::Less, 2000.0});
  set.thresholds.push_back({Property::Density, Direction::Less, 1500.0});
  CHECK_THROWS_AS(set.validate(), std::invalid_argument);
}

TEST_CASE("partition assignment matches the published grid") {
  const auto cell = [](double eps, double fp) {
    PropertyVector pv = passing_vector();
    pv.dielectric_constant = eps;
    pv.flash_point = fp;
    return coolant::screen::assign_partition(pv);
  };

  SUBCASE("hand-placed examples") {
    CHECK(cell(2.0, 160.0) == 1);
    CHECK(cell(5.0, 145.0) == 6);
    CHECK_FALSE(cell(6.5, 160.0).has_value());
  }

  SUBCASE("bin edges") {
    CHECK(cell(2.3, 160.0) == 1);   // <= 2.3 stays in the first column
    CHECK(cell(2.31, 160.0) == 2);
    CHECK(cell(4.0, 160.0) == 2);
    CHECK(cell(4.01, 160.0) == 3);
    CHECK(cell(6.0, 160.0) == 3);
    CHECK(cell(2.0, 150.0) == 4);   // flash 150 drops to the second row
    CHECK(cell(2.0, 150.01) == 1);
    CHECK(cell(2.0, 140.0) == 4);
    CHECK_FALSE(cell(2.0, 139.9).has_value());
  }

  SUBCASE("disjoint and exhaustive over the passing region") {
    Rng rng(83);
    int assigned = 0;
    for (int trial = 0; trial < 2000; ++trial) {
      const double eps = rng.uniform(1.0, 7.0);
      const double fp = rng.uniform(130.0, 175.0);
      const auto got = cell(eps, fp);
      const auto want = naive_partition(eps, fp);
      CHECK(got == want);
      if (got) {
        CHECK(*got >= 1);
        CHECK(*got <= 6);
        ++assigned;
      }
    }
    CHECK(assigned > 500);  // the sweep touches the grid interior
  }
}

TEST_CASE("figures of merit follow the table footnotes") {
  coolant::screen::FomInputs in;
  in.k = 0.1;
  in.beta = 1e-3;
  in.rho = 800.0;
  in.c_p = 2000.0;
  in.mu = 0.01;

  const double inner = in.beta * in.c_p * in.rho * in.rho / (in.mu * in.k);
  CHECK(inner == doctest::Approx(1.28e9).epsilon(1e-12));
  CHECK(coolant::screen::fom1(in) ==
        doctest::Approx(0.1 * std::pow(inner, 0.2813)).epsilon(1e-12));
  CHECK(coolant::screen::fom1(in) == doctest::Approx(36.49).epsilon(1e-3));
  CHECK(coolant::screen::fom2(in) == doctest::Approx(1.6e7).epsilon(1e-12));
  CHECK(coolant::screen::fom3(in) == 0.01);

  coolant::screen::FomInputs bad = in;
  bad.mu = 0.0;
  CHECK_THROWS_AS(coolant::screen::fom1(bad), coolant::screen::NonPositiveInput);
  CHECK_THROWS_AS(coolant::screen::fom2(bad), coolant::screen::NonPositiveInput);
  bad = in;
  bad.k = -1.0;
  CHECK_THROWS_AS(coolant::screen::fom1(bad), coolant::screen::NonPositiveInput);
}

TEST_CASE("criteria JSON round trips and rejects malformed input") {
  const CriteriaSet set = coolant::screen::default_criteria();
  const std::string text = coolant::screen::criteria_to_json_text(set);
  const CriteriaSet back = coolant::screen::criteria_from_json_text(text);
  REQUIRE(back.thresholds.size() == set.thresholds.size());
  for (std::size_t k = 0; k < set.thresholds.size(); ++k) {
    CHECK(back.thresholds[k].property == set.thresholds[k].property);
    CHECK(back.thresholds[k].direction == set.thresholds[k].direction);
    CHECK(back.thresholds[k].value == set.thresholds[k].value);
  }

  CHECK_THROWS(coolant::screen::criteria_from_json_text("not json at all"));
  CHECK_THROWS_AS(coolant::screen::criteria_from_json_text(
                      R"({"thresholds":[{"property":"warp","direction":"greater","value":1}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(coolant::screen::criteria_from_json_text(
                      R"({"thresholds":[{"property":"density","direction":"sideways","value":1}]})"),
                  std::invalid_argument);

  const auto path =
      (std::filesystem::temp_directory_path() / "coolant_criteria.json").string();
  coolant::screen::save_criteria(path, set);
  const CriteriaSet from_file = coolant::screen::load_criteria(path);
  CHECK(from_file.thresholds.size() == set.thresholds.size());
  std::filesystem::remove(path);
  CHECK_THROWS(coolant::screen::load_criteria(path));
}

TEST_CASE("bias report matches a hand computation") {
  CriteriaSet set;
  set.thresholds.push_back({Property::BoilingPoint, Direction::Greater, 150.0});
  set.thresholds.push_back({Property::Density, Direction::Less, 2000.0});

  // Four vectors chosen so bp-pass = {0,1}, density-pass = {0,2}.
  std::vector<PropertyVector> pvs(4, passing_vector());
  pvs[0].boiling_point = 200.0;
  pvs[0].density = 900.0;
  pvs[1].boiling_point = 200.0;
  pvs[1].density = 2500.0;
  pvs[2].boiling_point = 100.0;
  pvs[2].density = 900.0;
  pvs[3].boiling_point = 100.0;
  pvs[3].density = 2500.0;

  const auto rep = coolant::screen::bias_report(pvs, set);
  CHECK(rep.population == 4);
  REQUIRE(rep.marginal_rates.size() == 2);
  CHECK(rep.marginal_rates[0] == 0.5);
  CHECK(rep.marginal_rates[1] == 0.5);
  CHECK(rep.joint_rate == 0.25);
  CHECK(rep.product_rate == 0.25);
  CHECK(rep.gap == 0.0);
  REQUIRE(rep.pair_cov.size() == 2);
  CHECK(rep.pair_cov[0][1] == doctest::Approx(0.0));

  // Comonotone pair: both thresholds read the same underlying ranking.
  std::vector<PropertyVector> co(4, passing_vector());
  for (int i = 0; i < 4; ++i) {
    co[static_cast<std::size_t>(i)].boiling_point = i < 2 ? 200.0 : 100.0;
    co[static_cast<std::size_t>(i)].density = i < 2 ? 900.0 : 2500.0;
  }
  const auto co_rep = coolant::screen::bias_report(co, set);
  CHECK(co_rep.joint_rate == 0.5);
  CHECK(co_rep.product_rate == 0.25);
  CHECK(co_rep.gap == -0.25);  // joint exceeds the independence product
  CHECK(co_rep.pair_cov[0][1] == doctest::Approx(0.25));
}

TEST_CASE("two-stage screening keeps exact counters") {
  const DeskRig& rig = desk_rig();
  const CriteriaSet final_set = coolant::screen::default_criteria();
  const CriteriaSet relaxed = coolant::screen::relax(final_set, 0.3);

  desk_teacher().reset_embed_calls();
  const auto outcome = coolant::screen::two_stage_screen(
      rig.sets, rig.purchasables, rig.model, desk_teacher(), relaxed, final_set,
      /*audit_brute_force=*/true);
  const auto& rep = outcome.report;

  CHECK(rep.pairs_total == 12);  // 3 alcohols x (2 chlorides + 2 acids)
  CHECK(rep.pairs_scored == 12);
  CHECK(rep.purchasables_total == 2);
  CHECK(rep.surrogate_pass <= rep.pairs_scored);
  CHECK(rep.teacher_pass <= rep.surrogate_pass);
  CHECK(rep.teacher_embed_calls ==
        7 + rep.surrogate_pass - rep.postfilter_reject + rep.purchasables_total);
  CHECK_FALSE(rep.zero_margin);
  CHECK(rep.missed_candidates >= 0);

  // Candidate bookkeeping: unique SMILES, cells consistent with the counts.
  std::set<std::string> seen;
  std::uint64_t binned = 0;
  for (const auto& c : outcome.candidates) {
    CHECK(seen.insert(c.smiles).second);
    if (c.criterion > 0) {
      REQUIRE(c.criterion <= 6);
      ++binned;
    }
  }
  std::uint64_t cells = 0;
  for (const auto n : rep.criterion_counts) cells += n;
  CHECK(cells == binned);

  // Zero-margin run: same thresholds both stages.
  const auto zm = coolant::screen::two_stage_screen(
      rig.sets, rig.purchasables, rig.model, desk_teacher(), final_set,
      final_set);
  CHECK(zm.report.zero_margin);
  CHECK(zm.report.missed_candidates == -1);

  // Inverted stages must be refused before any scoring happens.
  CHECK_THROWS_AS(
      coolant::screen::two_stage_screen(rig.sets, rig.purchasables, rig.model,
                                        desk_teacher(), final_set, relaxed),
      coolant::screen::RelaxationInversion);
}

TEST_CASE("candidate CSV and report JSON serialize faithfully") {
  std::vector<coolant::screen::Candidate> cands;
  coolant::screen::Candidate c;
  c.smiles = "CCOCC";
  c.source = "ether";
  c.criterion = 1;
  c.pv = passing_vector();
  cands.push_back(c);
  c.smiles = "CCOC(C)=O";
  c.source = "ester";
  c.criterion = 4;
  cands.push_back(c);

  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = (dir / "coolant_cands.csv").string();
  coolant::screen::write_candidates_csv(csv, cands);
  std::ifstream in(csv);
  std::string header, row1;
  std::getline(in, header);
  std::getline(in, row1);
  CHECK(header.rfind("smiles,source,criterion", 0) == 0);
  CHECK(row1.rfind("CCOCC,ether,1,", 0) == 0);
  int lines = 2;
  std::string rest;
  while (std::getline(in, rest)) ++lines;
  CHECK(lines == 3);
  std::filesystem::remove(csv);

  coolant::screen::ScreeningReport rep;
  rep.pairs_total = 12;
  rep.surrogate_pass = 5;
  rep.teacher_embed_calls = 14;
  rep.missed_candidates = 2;
  const auto jpath = (dir / "coolant_report.json").string();
  coolant::screen::write_report_json(jpath, rep);
  std::ifstream jin(jpath);
  const auto j = nlohmann::json::parse(jin);
  CHECK(j["pairs_total"] == 12);
  CHECK(j["surrogate_pass"] == 5);
  CHECK(j["teacher_embed_calls"] == 14);
  CHECK(j["missed_candidates"] == 2);
  std::filesystem::remove(jpath);
}

}  // TEST_SUITE("screening")
