//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace coolant::nn {

double grad_check(const std::function<double()>& f, ParamStore& params,
                  double eps) {
  f();
  std::vector<Eigen::MatrixXd> analytic;
  analytic.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    analytic.push_back(params.at(i).grad);
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& t = params.at(i);
    for (Eigen::Index r = 0; r < t.value.rows(); ++r) {
      for (Eigen::Index c = 0; c < t.value.cols(); ++c) {
        const double saved = t.value(r, c);
        t.value(r, c) = saved + eps;
        const double plus = f();
        t.value(r, c) = saved - eps;
        const double minus = f();
        t.value(r, c) = saved;
        const double central = (plus - minus) / (2.0 * eps);
        const double a = analytic[i](r, c);
        const double rel =
            std::abs(a - central) / std::max(1e-8, std::abs(a) + std::abs(central));
        worst = std::max(worst, rel);
      }
    }
  }
  return worst;
}

}  // namespace coolant::nn
