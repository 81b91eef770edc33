//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <functional>

#include "coolant/nn/tape.hpp"

namespace coolant::nn {

/// Central-difference verification of reverse-mode gradients.
///
/// `f` must zero the grads, rebuild its graph from the current parameter
/// values, run forward + backward, and return the loss. Returns the maximum
/// over all parameter entries of
///   |analytic - central| / max(1e-8, |analytic| + |central|).
double grad_check(const std::function<double()>& f, ParamStore& params,
                  double eps = 1e-5);

}  // namespace coolant::nn
