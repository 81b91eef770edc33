//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace coolant::chem {

/// Heavy elements supported by the parser and downstream chemistry.
enum class Element : std::uint8_t {
  B = 0,
  C,
  N,
  O,
  F,
  Si,
  P,
  S,
  Cl,
  Br,
  I,
};

inline constexpr int kNumElements = 11;

struct ElementInfo {
  std::string_view symbol;
  double atomic_mass;  // unified amu, CODATA standard weights to 3 decimals
  int default_valence;
};

inline constexpr std::array<ElementInfo, kNumElements> kElementTable{{
    {"B", 10.811, 3},
    {"C", 12.011, 4},
    {"N", 14.007, 3},
    {"O", 15.999, 2},
    {"F", 18.998, 1},
    {"Si", 28.086, 4},
    {"P", 30.974, 3},
    {"S", 32.066, 2},
    {"Cl", 35.453, 1},
    {"Br", 79.904, 1},
    {"I", 126.904, 1},
}};

inline constexpr double kHydrogenMass = 1.008;

constexpr const ElementInfo& info(Element e) {
  return kElementTable[static_cast<std::size_t>(e)];
}

constexpr std::string_view symbol(Element e) { return info(e).symbol; }
constexpr double atomic_mass(Element e) { return info(e).atomic_mass; }
constexpr int default_valence(Element e) { return info(e).default_valence; }

/// Aromatic forms exist only for C, N, O, S in the supported grammar.
constexpr bool aromatic_allowed(Element e) {
  return e == Element::C || e == Element::N || e == Element::O ||
         e == Element::S;
}

inline std::optional<Element> element_from_symbol(std::string_view s) {
  for (std::size_t i = 0; i < kElementTable.size(); ++i) {
    if (kElementTable[i].symbol == s) return static_cast<Element>(i);
  }
  return std::nullopt;
}

}  // namespace coolant::chem
