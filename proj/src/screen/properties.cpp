//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/screen/properties.hpp"

#include <array>
#include <cmath>

namespace coolant::screen {

namespace {

constexpr std::array<const char*, kPropertyCount> kNames = {
    "boiling_point",
    "melting_point",
    "flash_point",
    "critical_temperature",
    "decomposition_temperature",
    "specific_heat",
    "vapor_pressure",
    "dynamic_viscosity",
    "density",
    "dielectric_constant",
};

}  // namespace

const char* property_name(Property p) {
  return kNames[static_cast<std::size_t>(p)];
}

std::optional<Property> property_from_name(std::string_view name) {
  for (int i = 0; i < kPropertyCount; ++i) {
    if (name == kNames[static_cast<std::size_t>(i)]) {
      return static_cast<Property>(i);
    }
  }
  return std::nullopt;
}

double PropertyVector::get(Property p) const {
  switch (p) {
    case Property::BoilingPoint: return boiling_point;
    case Property::MeltingPoint: return melting_point;
    case Property::FlashPoint: return flash_point;
    case Property::CriticalTemperature: return critical_temperature;
    case Property::DecompositionTemperature: return decomposition_temperature;
    case Property::SpecificHeat: return specific_heat;
    case Property::VaporPressure: return vapor_pressure;
    case Property::DynamicViscosity: return dynamic_viscosity;
    case Property::Density: return density;
    case Property::DielectricConstant: return dielectric_constant;
  }
  return 0.0;
}

void PropertyVector::set(Property p, double v) {
  switch (p) {
    case Property::BoilingPoint: boiling_point = v; return;
    case Property::MeltingPoint: melting_point = v; return;
    case Property::FlashPoint: flash_point = v; return;
    case Property::CriticalTemperature: critical_temperature = v; return;
    case Property::DecompositionTemperature: decomposition_temperature = v; return;
    case Property::SpecificHeat: specific_heat = v; return;
    case Property::VaporPressure: vapor_pressure = v; return;
    case Property::DynamicViscosity: dynamic_viscosity = v; return;
    case Property::Density: density = v; return;
    case Property::DielectricConstant: dielectric_constant = v; return;
  }
}

bool PropertyVector::finite() const {
  for (int i = 0; i < kPropertyCount; ++i) {
    if (!std::isfinite(get(static_cast<Property>(i)))) return false;
  }
  return true;
}

std::vector<double> PropertyVector::to_vector() const {
  std::vector<double> out(kPropertyCount);
  for (int i = 0; i < kPropertyCount; ++i) {
    out[static_cast<std::size_t>(i)] = get(static_cast<Property>(i));
  }
  return out;
}

PropertyVector PropertyVector::from_vector(const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != kPropertyCount) {
    throw std::invalid_argument("PropertyVector needs exactly 10 values");
  }
  PropertyVector pv;
  for (int i = 0; i < kPropertyCount; ++i) {
    pv.set(static_cast<Property>(i), values[static_cast<std::size_t>(i)]);
  }
  return pv;
}

namespace {

void require_positive(const FomInputs& in) {
  if (in.k <= 0.0 || in.beta <= 0.0 || in.rho <= 0.0 || in.c_p <= 0.0 ||
      in.mu <= 0.0) {
    throw NonPositiveInput("figure-of-merit inputs must be > 0");
  }
}

}  // namespace

double fom1(const FomInputs& in) {
  require_positive(in);
  return in.k * std::pow(in.beta * in.c_p * in.rho * in.rho / (in.mu * in.k),
                         0.2813);
}

double fom2(const FomInputs& in) {
  require_positive(in);
  return in.k * in.rho * in.c_p / in.mu;
}

double fom3(const FomInputs& in) {
  require_positive(in);
  return in.mu;
}

}  // namespace coolant::screen
