//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coolant/gate/model.hpp"
#include "coolant/reactor/reactor.hpp"
#include "coolant/screen/criteria.hpp"
#include "coolant/surrogate/surrogate.hpp"

namespace coolant::screen {

/// Disjoint-vs-joint accounting over a screened population: marginal pass
/// rates per threshold, their independence product, the true joint rate,
/// and per-pair indicator covariances.
struct BiasSummary {
  std::vector<std::string> threshold_names;
  std::vector<double> marginal_rates;
  double joint_rate = 0.0;
  double product_rate = 0.0;
  double gap = 0.0;  // product - joint
  std::vector<std::vector<double>> pair_cov;
  std::uint64_t population = 0;
};

BiasSummary bias_report(const std::vector<PropertyVector>& pvs,
                        const CriteriaSet& set);

struct Candidate {
  std::string smiles;
  std::string source;  // "purchasable" | "ether" | "ester"
  int criterion = 0;   // 1..6 partition cell
  PropertyVector pv;   // teacher-scored values
};

struct ScreeningReport {
  std::uint64_t pairs_total = 0;       // full reaction grid
  std::uint64_t pairs_scored = 0;      // minus identical-parent pairs
  std::uint64_t surrogate_pass = 0;    // relaxed criteria on surrogate scores
  std::uint64_t postfilter_reject = 0; // products failing structural rules
  std::uint64_t teacher_pass = 0;      // pairs passing the final criteria
  std::uint64_t purchasables_total = 0;
  std::uint64_t purchasables_pass = 0;
  std::array<std::uint64_t, 6> criterion_counts{};  // unique candidates
  std::uint64_t teacher_embed_calls = 0;  // n + m + survivors + purchasables
  bool zero_margin = false;               // relaxed == final
  std::int64_t missed_candidates = -1;    // vs brute-force teacher; -1 = no audit
  BiasSummary bias;  // surrogate stage vs relaxed thresholds
};

struct ScreenOutcome {
  ScreeningReport report;
  std::vector<Candidate> candidates;  // unique by product SMILES
};

/// Surrogate pre-screen under relaxed thresholds, teacher rescore of the
/// survivors under the final thresholds. Purchasables go straight to the
/// teacher. The teacher's embed counter is reset on entry; the report pins
/// its value before any audit work, which proves the O(n+m) property.
/// audit_brute_force additionally teacher-scores every product to count
/// candidates the surrogate stage missed (desk-scale only).
ScreenOutcome two_stage_screen(const reactor::ReactantSets& sets,
                               const std::vector<reactor::Reactant>& purchasables,
                               const surrogate::SurrogateModel& surrogate_model,
                               const gate::GateModel& teacher,
                               const CriteriaSet& relaxed,
                               const CriteriaSet& final_set,
                               bool audit_brute_force = false);

/// CSV `smiles,source,criterion,<ten property columns>`.
void write_candidates_csv(const std::string& path,
                          const std::vector<Candidate>& candidates);
void write_report_json(const std::string& path, const ScreeningReport& report);

}  // namespace coolant::screen
