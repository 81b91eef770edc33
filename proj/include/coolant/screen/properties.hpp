//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace coolant::screen {

/// The ten screened properties, in prediction-task order.
enum class Property : int {
  BoilingPoint = 0,             // deg C
  MeltingPoint = 1,             // deg C
  FlashPoint = 2,               // deg C
  CriticalTemperature = 3,      // deg C
  DecompositionTemperature = 4, // deg C
  SpecificHeat = 5,             // J/(g*degC)
  VaporPressure = 6,            // kPa
  DynamicViscosity = 7,         // N*s/m^2
  Density = 8,                  // kg/m^3
  DielectricConstant = 9,       // dimensionless, 1 kHz
};

inline constexpr int kPropertyCount = 10;

const char* property_name(Property p);
std::optional<Property> property_from_name(std::string_view name);

struct PropertyVector {
  double boiling_point = 0.0;
  double melting_point = 0.0;
  double flash_point = 0.0;
  double critical_temperature = 0.0;
  double decomposition_temperature = 0.0;
  double specific_heat = 0.0;
  double vapor_pressure = 0.0;
  double dynamic_viscosity = 0.0;
  double density = 0.0;
  double dielectric_constant = 0.0;

  double get(Property p) const;
  void set(Property p, double v);
  bool finite() const;

  std::vector<double> to_vector() const;
  static PropertyVector from_vector(const std::vector<double>& values);
};

struct NonPositiveInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Figure-of-merit inputs (Table 1 footnote symbols).
struct FomInputs {
  double k = 0.0;     // thermal conductivity, W/(m*K)
  double beta = 0.0;  // thermal expansion, 1/K
  double rho = 0.0;   // density, kg/m^3
  double c_p = 0.0;   // specific heat, J/(g*degC)
  double mu = 0.0;    // dynamic viscosity, N*s/m^2
};

/// FOM1 = k * (beta * c_p * rho^2 / (mu * k))^0.2813
double fom1(const FomInputs& in);
/// FOM2 = k * rho * c_p / mu
double fom2(const FomInputs& in);
/// FOM3 = mu
double fom3(const FomInputs& in);

}  // namespace coolant::screen
