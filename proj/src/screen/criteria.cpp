//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/screen/criteria.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace coolant::screen {

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::Greater: return "greater";
    case Direction::Less: return "less";
    case Direction::Leq: return "leq";
  }
  return "";
}

std::optional<Direction> direction_from_name(std::string_view name) {
  if (name == "greater") return Direction::Greater;
  if (name == "less") return Direction::Less;
  if (name == "leq") return Direction::Leq;
  return std::nullopt;
}

const ThresholdSpec* CriteriaSet::find(Property p) const {
  for (const ThresholdSpec& t : thresholds) {
    if (t.property == p) return &t;
  }
  return nullptr;
}

void CriteriaSet::validate() const {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!std::isfinite(thresholds[i].value)) {
      throw std::invalid_argument("threshold value must be finite");
    }
    for (std::size_t j = i + 1; j < thresholds.size(); ++j) {
      if (thresholds[i].property == thresholds[j].property) {
        throw std::invalid_argument(
            std::string("duplicate threshold for ") +
            property_name(thresholds[i].property));
      }
    }
  }
}

CriteriaSet default_criteria() {
  return CriteriaSet{{
      {Property::BoilingPoint, Direction::Greater, 150.0},
      {Property::MeltingPoint, Direction::Less, -30.0},
      {Property::FlashPoint, Direction::Greater, 140.0},
      {Property::CriticalTemperature, Direction::Greater, 155.0},
      {Property::DecompositionTemperature, Direction::Greater, 150.0},
      {Property::VaporPressure, Direction::Less, 0.8},
      {Property::DynamicViscosity, Direction::Less, 0.015},
      {Property::Density, Direction::Less, 2000.0},
      {Property::DielectricConstant, Direction::Leq, 6.0},
  }};
}

CriteriaSet relax(const CriteriaSet& set, double fraction) {
  if (fraction < 0.0) throw std::invalid_argument("relaxation fraction < 0");
  CriteriaSet out = set;
  for (ThresholdSpec& t : out.thresholds) {
    const double shift = fraction * std::abs(t.value);
    t.value += t.direction == Direction::Greater ? -shift : shift;
  }
  return out;
}

void check_relaxation(const CriteriaSet& final_set, const CriteriaSet& relaxed) {
  final_set.validate();
  relaxed.validate();
  for (const ThresholdSpec& r : relaxed.thresholds) {
    const ThresholdSpec* f = final_set.find(r.property);
    if (f == nullptr) {
      throw RelaxationInversion(
          std::string("relaxed set gates ") + property_name(r.property) +
          " which the final set leaves free");
    }
    if (f->direction != r.direction) {
      throw RelaxationInversion(
          std::string("direction mismatch on ") + property_name(r.property));
    }
    const bool ok = r.direction == Direction::Greater ? r.value <= f->value
                                                      : r.value >= f->value;
    if (!ok) {
      throw RelaxationInversion(
          std::string("relaxed threshold tighter than final on ") +
          property_name(r.property));
    }
  }
}

EvalResult evaluate(const PropertyVector& pv, const CriteriaSet& set) {
  EvalResult res;
  res.pass = true;
  res.passed.reserve(set.thresholds.size());
  for (const ThresholdSpec& t : set.thresholds) {
    const double v = pv.get(t.property);
    bool ok = false;
    switch (t.direction) {
      case Direction::Greater: ok = v > t.value; break;
      case Direction::Less: ok = v < t.value; break;
      case Direction::Leq: ok = v <= t.value; break;
    }
    res.passed.push_back(ok ? 1 : 0);
    res.pass = res.pass && ok;
  }
  return res;
}

std::optional<int> assign_partition(const PropertyVector& pv) {
  const double eps = pv.dielectric_constant;
  const double fp = pv.flash_point;
  if (eps > 6.0 || fp < 140.0) return std::nullopt;
  int eps_bin;
  if (eps <= 2.3) {
    eps_bin = 0;
  } else if (eps <= 4.0) {
    eps_bin = 1;
  } else {
    eps_bin = 2;
  }
  const int flash_bin = fp > 150.0 ? 0 : 1;  // [140, 150] is the lower band
  return 1 + eps_bin + 3 * flash_bin;
}

CriteriaSet criteria_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  CriteriaSet set;
  for (const auto& item : j.at("thresholds")) {
    const std::string pname = item.at("property").get<std::string>();
    const std::string dname = item.at("direction").get<std::string>();
    const auto prop = property_from_name(pname);
    if (!prop) throw std::invalid_argument("unknown property: " + pname);
    const auto dir = direction_from_name(dname);
    if (!dir) throw std::invalid_argument("unknown direction: " + dname);
    set.thresholds.push_back({*prop, *dir, item.at("value").get<double>()});
  }
  set.validate();
  return set;
}

std::string criteria_to_json_text(const CriteriaSet& set) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ThresholdSpec& t : set.thresholds) {
    arr.push_back({{"property", property_name(t.property)},
                   {"direction", direction_name(t.direction)},
                   {"value", t.value}});
  }
  return nlohmann::json{{"thresholds", arr}}.dump(2);
}

CriteriaSet load_criteria(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return criteria_from_json_text(ss.str());
}

void save_criteria(const std::string& path, const CriteriaSet& set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << criteria_to_json_text(set) << "\n";
}

}  // namespace coolant::screen
