//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/screen/screening.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_set>
#include <utility>

#include "coolant/bias/bias.hpp"
#include "coolant/filters/filters.hpp"
#include "coolant/molgraph/smiles.hpp"

namespace coolant::screen {

BiasSummary bias_report(const std::vector<PropertyVector>& pvs,
                        const CriteriaSet& set) {
  set.validate();
  BiasSummary summary;
  const std::size_t k = set.thresholds.size();
  summary.population = pvs.size();
  for (const ThresholdSpec& t : set.thresholds) {
    summary.threshold_names.push_back(property_name(t.property));
  }
  summary.marginal_rates.assign(k, 0.0);
  summary.pair_cov.assign(k, std::vector<double>(k, 0.0));
  if (pvs.empty()) return summary;

  // Per-threshold pass flags for the whole population.
  std::vector<std::vector<char>> flags(k, std::vector<char>(pvs.size(), 0));
  std::uint64_t joint = 0;
  for (std::size_t i = 0; i < pvs.size(); ++i) {
    const EvalResult res = evaluate(pvs[i], set);
    for (std::size_t t = 0; t < k; ++t) flags[t][i] = res.passed[t];
    if (res.pass) ++joint;
  }

  const double n = static_cast<double>(pvs.size());
  summary.joint_rate = static_cast<double>(joint) / n;
  summary.product_rate = 1.0;
  for (std::size_t t = 0; t < k; ++t) {
    std::uint64_t count = 0;
    for (char f : flags[t]) count += f ? 1 : 0;
    summary.marginal_rates[t] = static_cast<double>(count) / n;
    summary.product_rate *= summary.marginal_rates[t];
  }
  summary.gap = summary.product_rate - summary.joint_rate;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const double cov = bias::indicator_covariance(flags[a], flags[b]);
      summary.pair_cov[a][b] = cov;
      summary.pair_cov[b][a] = cov;
    }
  }
  return summary;
}

namespace {

struct Survivor {
  reactor::Reaction reaction;
  std::size_t i = 0;  // alcohol index
  std::size_t j = 0;  // partner index
};

std::uint64_t pair_key(reactor::Reaction r, std::size_t i, std::size_t j) {
  return (r == reactor::Reaction::Ester ? 1ull << 62 : 0ull) | (i << 31) | j;
}

bool same_thresholds(const CriteriaSet& a, const CriteriaSet& b) {
  if (a.thresholds.size() != b.thresholds.size()) return false;
  for (const ThresholdSpec& t : a.thresholds) {
    const ThresholdSpec* other = b.find(t.property);
    if (other == nullptr || other->direction != t.direction ||
        other->value != t.value) {
      return false;
    }
  }
  return true;
}

reactor::ProductRecord make_product(const reactor::ReactantSets& sets,
                                    const Survivor& s) {
  const reactor::Reactant& a = sets.alcohols[s.i];
  if (s.reaction == reactor::Reaction::Ether) {
    return reactor::williamson(a.graph, sets.chlorides[s.j].graph);
  }
  return reactor::esterify(a.graph, sets.acids[s.j].graph);
}

}  // namespace

ScreenOutcome two_stage_screen(const reactor::ReactantSets& sets,
                               const std::vector<reactor::Reactant>& purchasables,
                               const surrogate::SurrogateModel& surrogate_model,
                               const gate::GateModel& teacher,
                               const CriteriaSet& relaxed,
                               const CriteriaSet& final_set,
                               bool audit_brute_force) {
  check_relaxation(final_set, relaxed);

  ScreenOutcome out;
  ScreeningReport& report = out.report;
  report.zero_margin = same_thresholds(relaxed, final_set);
  teacher.reset_embed_calls();

  // Every distinct reactant gets exactly one teacher embedding.
  std::vector<std::string> ids;
  std::vector<const chem::MolGraph*> graphs;
  std::unordered_set<std::string> seen;
  const auto add_unique = [&](const reactor::Reactant& r) {
    if (seen.insert(r.smiles).second) {
      ids.push_back(r.smiles);
      graphs.push_back(&r.graph);
    }
  };
  for (const auto& r : sets.alcohols) add_unique(r);
  for (const auto& r : sets.chlorides) add_unique(r);
  for (const auto& r : sets.acids) add_unique(r);
  const surrogate::EmbeddingTable table =
      surrogate::build_lookup(ids, graphs, teacher);

  // Stage 1: surrogate scores for the full pair grid, relaxed thresholds.
  std::vector<Survivor> survivors;
  std::vector<PropertyVector> scored;
  const auto scan_pairs = [&](reactor::Reaction reaction,
                              const std::vector<reactor::Reactant>& partners) {
    for (std::size_t i = 0; i < sets.alcohols.size(); ++i) {
      const reactor::Reactant& a = sets.alcohols[i];
      for (std::size_t j = 0; j < partners.size(); ++j) {
        ++report.pairs_total;
        if (a.smiles == partners[j].smiles) continue;
        ++report.pairs_scored;
        const PropertyVector pv = PropertyVector::from_vector(
            surrogate::predict_pair(a.smiles, partners[j].smiles,
                                    surrogate_model, table));
        scored.push_back(pv);
        if (evaluate(pv, relaxed).pass) {
          ++report.surrogate_pass;
          survivors.push_back({reaction, i, j});
        }
      }
    }
  };
  scan_pairs(reactor::Reaction::Ether, sets.chlorides);
  scan_pairs(reactor::Reaction::Ester, sets.acids);
  report.bias = bias_report(scored, relaxed);

  // Stage 2: react the survivors, apply the structural rules, rescore with
  // the teacher against the full-strength criteria.
  std::unordered_set<std::uint64_t> accepted_pairs;
  std::unordered_set<std::string> candidate_smiles;
  const auto admit = [&](const std::string& smiles, const char* source,
                         const PropertyVector& pv) {
    const auto cell = assign_partition(pv);
    if (!cell) return;  // passing vectors always land in a cell
    if (!candidate_smiles.insert(smiles).second) return;
    ++report.criterion_counts[static_cast<std::size_t>(*cell - 1)];
    out.candidates.push_back({smiles, source, *cell, pv});
  };

  for (const Survivor& s : survivors) {
    const reactor::ProductRecord rec = make_product(sets, s);
    if (!filters::postfilter(rec.product).passed) {
      ++report.postfilter_reject;
      continue;
    }
    const PropertyVector pv =
        PropertyVector::from_vector(teacher.predict(rec.product));
    if (!evaluate(pv, final_set).pass) continue;
    ++report.teacher_pass;
    accepted_pairs.insert(pair_key(s.reaction, s.i, s.j));
    admit(chem::write_smiles(rec.product),
          s.reaction == reactor::Reaction::Ether ? "ether" : "ester", pv);
  }

  // Purchasables skip the surrogate stage entirely.
  report.purchasables_total = purchasables.size();
  for (const reactor::Reactant& p : purchasables) {
    if (!filters::postfilter(p.graph).passed) continue;
    const PropertyVector pv =
        PropertyVector::from_vector(teacher.predict(p.graph));
    if (!evaluate(pv, final_set).pass) continue;
    ++report.purchasables_pass;
    admit(p.smiles, "purchasable", pv);
  }

  // The O(n+m) claim: embeds so far = unique reactants + survivors +
  // purchasables. Pinned before the optional brute-force audit.
  report.teacher_embed_calls = teacher.embed_calls();

  if (audit_brute_force) {
    std::int64_t missed = 0;
    const auto audit_pairs = [&](reactor::Reaction reaction,
                                 const std::vector<reactor::Reactant>& partners) {
      for (std::size_t i = 0; i < sets.alcohols.size(); ++i) {
        for (std::size_t j = 0; j < partners.size(); ++j) {
          if (sets.alcohols[i].smiles == partners[j].smiles) continue;
          const reactor::ProductRecord rec =
              make_product(sets, {reaction, i, j});
          if (!filters::postfilter(rec.product).passed) continue;
          const PropertyVector pv =
              PropertyVector::from_vector(teacher.predict(rec.product));
          if (!evaluate(pv, final_set).pass) continue;
          if (accepted_pairs.count(pair_key(reaction, i, j)) == 0) ++missed;
        }
      }
    };
    audit_pairs(reactor::Reaction::Ether, sets.chlorides);
    audit_pairs(reactor::Reaction::Ester, sets.acids);
    report.missed_candidates = missed;
  }

  return out;
}

void write_candidates_csv(const std::string& path,
                          const std::vector<Candidate>& candidates) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "smiles,source,criterion";
  for (int i = 0; i < kPropertyCount; ++i) {
    out << "," << property_name(static_cast<Property>(i));
  }
  out << "\n";
  out.precision(10);
  for (const Candidate& c : candidates) {
    out << c.smiles << "," << c.source << "," << c.criterion;
    for (int i = 0; i < kPropertyCount; ++i) {
      out << "," << c.pv.get(static_cast<Property>(i));
    }
    out << "\n";
  }
}

void write_report_json(const std::string& path, const ScreeningReport& report) {
  nlohmann::json bias{{"threshold_names", report.bias.threshold_names},
                      {"marginal_rates", report.bias.marginal_rates},
                      {"joint_rate", report.bias.joint_rate},
                      {"product_rate", report.bias.product_rate},
                      {"gap", report.bias.gap},
                      {"pair_cov", report.bias.pair_cov},
                      {"population", report.bias.population}};
  nlohmann::json j{{"pairs_total", report.pairs_total},
                   {"pairs_scored", report.pairs_scored},
                   {"surrogate_pass", report.surrogate_pass},
                   {"postfilter_reject", report.postfilter_reject},
                   {"teacher_pass", report.teacher_pass},
                   {"purchasables_total", report.purchasables_total},
                   {"purchasables_pass", report.purchasables_pass},
                   {"criterion_counts", report.criterion_counts},
                   {"teacher_embed_calls", report.teacher_embed_calls},
                   {"zero_margin", report.zero_margin},
                   {"missed_candidates", report.missed_candidates},
                   {"bias", bias}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace coolant::screen
