#pragma once

#include <cstddef>
#include <string>

#include "sltk/errors.hpp"

namespace sltk::num {

/// Tolerances shared by the ODE integrator, quadrature and root finder.
struct ToleranceBundle {
  double ode_rel = 1e-10;
  double ode_abs = 1e-12;
  double quad_target = 1e-10;
  double root_tol = 1e-9;
  std::size_t max_steps = 1'000'000;

  void validate() const {
    if (!(ode_rel > 0.0) || !(ode_abs > 0.0) || !(quad_target > 0.0) || !(root_tol > 0.0)) {
      throw UsageError("tolerances must be positive");
    }
    if (max_steps < 1000) {
      throw UsageError("max_steps must be at least 1000, got " + std::to_string(max_steps));
    }
  }
};

}  // namespace sltk::num
