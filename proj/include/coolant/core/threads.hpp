//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace coolant {

/// Worker cap: COOLANT_THREADS when set (minimum 1), otherwise the hardware
/// concurrency. Work is always split into fixed deterministic chunks, so the
/// worker count changes wall time, never results.
inline unsigned worker_count() {
  if (const char* env = std::getenv("COOLANT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace coolant
