#pragma once

#include <functional>

#include "dynkit/classical.hpp"
#include "dynkit/grid_spectral.hpp"
#include "dynkit/hamiltonian.hpp"
#include "dynkit/tdse.hpp"
#include "schema.hpp"

namespace dynkit::cli {

// A named built-in and its derivative.
struct ScalarFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

ScalarFunction make_potential(const json& potential, double mass);
ScalarFunction make_kinetic(const json& kinetic, double mass);

// Drive adds -amplitude * x * cos(omega t + phase); absent means static.
struct Drive {
  bool active = false;
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;

  double force(double t) const { return active ? amplitude * std::cos(omega * t + phase) : 0.0; }
};

Drive make_drive(const json& hamiltonian);

UniformGrid make_grid_block(const json& grid);
HamiltonianSpec make_hamiltonian(const json& hamiltonian, double hbar);
ClassicalSpec make_classical_spec(const json& hamiltonian);

// Oscillator eigenfunction in the scaled variable, unit norm over xi.
double hermite_function(int n, double xi);
WaveFunction make_initial(const json& initial, const UniformGrid& grid, double mass);

CMatrix parse_matrix(const json& m);
CVector parse_vector(const json& v);

}  // namespace dynkit::cli
