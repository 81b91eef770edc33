//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coolant/screen/properties.hpp"

namespace coolant::screen {

enum class Direction { Greater, Less, Leq };

const char* direction_name(Direction d);
std::optional<Direction> direction_from_name(std::string_view name);

struct ThresholdSpec {
  Property property = Property::BoilingPoint;
  Direction direction = Direction::Greater;
  double value = 0.0;
};

/// At most one threshold per property. Structural rules (halogen, sulfur,
/// aromatic, strained-ring, chlorine rejection) are the post-reaction filter
/// and apply to the molecule, not to this vector of value thresholds.
struct CriteriaSet {
  std::vector<ThresholdSpec> thresholds;

  const ThresholdSpec* find(Property p) const;
  void validate() const;  // throws std::invalid_argument on duplicates
};

/// Full-strength acceptance thresholds: boiling > 150, melting < -30,
/// flash > 140, critical > 155, decomposition > 150, vapor pressure < 0.8,
/// viscosity < 0.015, density < 2000, dielectric <= 6. Specific heat is
/// reported but not gated (it enters through the figures of merit).
CriteriaSet default_criteria();

/// Leniency shift for the surrogate pre-screen: each threshold moves by
/// `fraction` of its magnitude in the direction that admits more compounds
/// (greater: down; less/leq: up). fraction 0.15 sends dielectric 6 -> 6.9
/// and flash 140 -> 119.
CriteriaSet relax(const CriteriaSet& set, double fraction);

struct RelaxationInversion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Verifies that anything passing `final_set` also passes `relaxed`
/// (threshold-wise implication); throws RelaxationInversion otherwise.
void check_relaxation(const CriteriaSet& final_set, const CriteriaSet& relaxed);

struct EvalResult {
  std::vector<char> passed;  // aligned with set.thresholds
  bool pass = false;         // conjunction
};

EvalResult evaluate(const PropertyVector& pv, const CriteriaSet& set);

/// Table partition: dielectric {<=2.3, (2.3,4], (4,6]} crossed with flash
/// {>150 -> 1..3, [140,150] -> 4..6}. Empty when dielectric > 6 or
/// flash < 140.
std::optional<int> assign_partition(const PropertyVector& pv);

/// JSON mirror of ThresholdSpec: [{"property": ..., "direction": ...,
/// "value": ...}, ...] under key "thresholds".
CriteriaSet load_criteria(const std::string& path);
void save_criteria(const std::string& path, const CriteriaSet& set);
CriteriaSet criteria_from_json_text(const std::string& text);
std::string criteria_to_json_text(const CriteriaSet& set);

}  // namespace coolant::screen
