#pragma once

#include <functional>

#include "dynkit/common.hpp"

namespace dynkit {

using PhaseFunction = std::function<double(double t, double q)>;

// H = K(t, p) + U(t, x). K and U must be real for real arguments.
struct HamiltonianSpec {
  PhaseFunction K;
  PhaseFunction U;
  double hbar = 1.0;
  double mass = 1.0;
  bool time_independent = true;
};

// K = p^2 / 2m with a static potential.
HamiltonianSpec standard_hamiltonian(std::function<double(double)> U, double mass = 1.0,
                                     double hbar = 1.0);

}  // namespace dynkit
