//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/gate/losses.hpp"

namespace coolant::gate {

nn::Var loss_reg(nn::Tape& tape, nn::Var pred, nn::Var target) {
  return tape.mse(pred, target);
}

nn::Var loss_auto(nn::Tape& tape, nn::Var z, nn::Var z_hat) {
  return tape.mse(z_hat, z);
}

nn::Var loss_cons(nn::Tape& tape, nn::Var m_source, nn::Var m_target) {
  return tape.mse(m_source, m_target);
}

nn::Var loss_map(nn::Tape& tape, nn::Var pred_via_source, nn::Var target) {
  return tape.mse(pred_via_source, target);
}

nn::Var loss_dis(nn::Tape& tape, nn::Var m_pivot_s, nn::Var m_pert_s,
                 nn::Var m_pivot_t, nn::Var m_pert_t) {
  nn::Var disp_s = tape.sub(m_pivot_s, m_pert_s);
  nn::Var disp_t = tape.sub(m_pivot_t, m_pert_t);
  return tape.mse(disp_s, disp_t);
}

}  // namespace coolant::gate
