#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dynkit/hamiltonian.hpp"
#include "dynkit/tdse.hpp"

namespace dynkit {

// Static position-diagonal jump operator A(x).
using StaticPositionJump = std::function<cplx(double x)>;

struct JumpEvent {
  double t = 0.0;
  int channel = 0;
};

struct McwfTrajectory {
  std::vector<double> t;
  std::vector<CVector> states;
  std::vector<JumpEvent> jumps;
};

// Non-hermitian evolution under H - (i hbar/2) sum A^dagger A, renormalized
// each step. Channel k survives with P_k(t+dt) = P_k(t) exp(-[l_k(t+dt) + l_k(t)] dt/2),
// l_k = <A_k^dagger A_k>; it fires when P_k drops below its uniform threshold r_k,
// after which r_k is redrawn and P_k reset to 1.
McwfTrajectory mcwf_trajectory(const WaveFunction& psi0, const HamiltonianSpec& spec,
                               const std::vector<StaticPositionJump>& jumps, double dt, double t_max,
                               std::uint64_t seed, int stride = 1);

McwfTrajectory mcwf_trajectory_levels(const CVector& psi0, const CMatrix& H,
                                      const std::vector<CMatrix>& jumps, double dt, double t_max,
                                      std::uint64_t seed, double hbar = 1.0, int stride = 1);

struct EnsembleDensity {
  std::vector<double> t;
  std::vector<CMatrix> rho;
};

// Trajectory i uses seed base_seed + i. The average is summed in a fixed
// order, so the result does not depend on the thread count.
EnsembleDensity mcwf_ensemble(const WaveFunction& psi0, const HamiltonianSpec& spec,
                              const std::vector<StaticPositionJump>& jumps, double dt, double t_max,
                              int n_traj, std::uint64_t base_seed, int stride = 1, int threads = 1);

EnsembleDensity mcwf_ensemble_levels(const CVector& psi0, const CMatrix& H,
                                     const std::vector<CMatrix>& jumps, double dt, double t_max,
                                     int n_traj, std::uint64_t base_seed, double hbar = 1.0,
                                     int stride = 1, int threads = 1);

}  // namespace dynkit
