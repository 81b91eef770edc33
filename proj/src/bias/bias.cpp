//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>

#include "coolant/bias/bias.hpp"

namespace coolant::bias {

namespace {

bool event_holds(const EventSpec& e, const std::pair<double, double>& sample) {
  const double v = e.variable == Coordinate::X ? sample.first : sample.second;
  return e.direction == Tail::Greater ? v > e.threshold : v < e.threshold;
}

}  // namespace

BiasEstimate indicator_cov(std::span<const std::pair<double, double>> samples,
                           const EventSpec& u, const EventSpec& v) {
  if (samples.empty()) throw EmptySample("indicator_cov: no samples");
  const double n = static_cast<double>(samples.size());

  std::size_t cu = 0, cv = 0, cj = 0;
  for (const auto& s : samples) {
    const bool bu = event_holds(u, s);
    const bool bv = event_holds(v, s);
    cu += bu ? 1 : 0;
    cv += bv ? 1 : 0;
    cj += (bu && bv) ? 1 : 0;
  }

  BiasEstimate est;
  est.p_u = static_cast<double>(cu) / n;
  est.p_v = static_cast<double>(cv) / n;
  est.p_joint = static_cast<double>(cj) / n;
  est.product = est.p_u * est.p_v;

  // Second pass, centered: a float path independent of p_joint - product.
  double cov = 0.0;
  for (const auto& s : samples) {
    const double du = (event_holds(u, s) ? 1.0 : 0.0) - est.p_u;
    const double dv = (event_holds(v, s) ? 1.0 : 0.0) - est.p_v;
    cov += du * dv;
  }
  est.cov_indicators = cov / n;

  est.gap = est.product - est.p_joint;
  est.mc_std_err = std::sqrt(est.p_joint * (1.0 - est.p_joint) / n);
  return est;
}

double indicator_covariance(const std::vector<char>& u,
                            const std::vector<char>& v) {
  if (u.empty() || u.size() != v.size()) {
    throw EmptySample("indicator_covariance: empty or mismatched flags");
  }
  const double n = static_cast<double>(u.size());
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i] ? 1.0 : 0.0;
    mv += v[i] ? 1.0 : 0.0;
  }
  mu /= n;
  mv /= n;
  double cov = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cov += ((u[i] ? 1.0 : 0.0) - mu) * ((v[i] ? 1.0 : 0.0) - mv);
  }
  return cov / n;
}

}  // namespace coolant::bias
