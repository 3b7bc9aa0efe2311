#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "dynkit/grid_spectral.hpp"
#include "dynkit/hamiltonian.hpp"

namespace dynkit {

struct WaveFunction {
  UniformGrid grid;
  CVector psi;

  double norm() const;  // sum |psi|^2 dx
  void normalize();
};

struct SpinorWaveFunction {
  UniformGrid grid;
  CVector psi1;
  CVector psi2;

  double norm() const;
};

// H = sum_j [K_j(t,p) + U_j(t,x)] sigma_j, sigma_0 = identity.
struct PauliHamiltonianSpec {
  std::array<PhaseFunction, 4> K;
  std::array<PhaseFunction, 4> U;
  double hbar = 1.0;
};

struct EvolutionTrace {
  std::vector<double> t;
  std::vector<double> x_mean;
  std::vector<double> p_mean;
  std::vector<double> energy;  // empty unless the spec is time independent
  std::vector<double> norm;
};

WaveFunction make_wavefunction(const UniformGrid& grid, const std::function<cplx(double)>& f,
                               bool normalize = true);

// Strang step e^{-i dt U/2hbar} F^{-1} e^{-i dt K/hbar} F e^{-i dt U/2hbar},
// K and U at t + Re(dt)/2. Complex dt is allowed (dt = -i tau: imaginary time).
class SplitOperator {
 public:
  SplitOperator(UniformGrid grid, HamiltonianSpec spec);

  void step(CVector& psi, double t, cplx dt);
  // Fourth order, three Strang steps of length s dt, (1-2s) dt, s dt.
  void step_o4(CVector& psi, double t, cplx dt);

  // Complex potential added to U (e.g. -i hbar/2 sum |A|^2 for trajectories).
  void set_extra_potential(CVector v);

  const UniformGrid& grid() const { return grid_; }
  const HamiltonianSpec& spec() const { return spec_; }

 private:
  struct Phases {
    double t_mid = 0.0;
    cplx dt = 0.0;
    CVector half_u;
    CVector kin;
  };
  const Phases& phases(double t_mid, cplx dt);

  UniformGrid grid_;
  HamiltonianSpec spec_;
  CVector extra_;
  std::vector<Phases> cache_;
};

inline const double kBandraukS =
    std::cbrt(2.0) / 3.0 + std::cbrt(4.0) / 6.0 + 2.0 / 3.0;

WaveFunction split_op_step(const WaveFunction& psi, double t, cplx dt, const HamiltonianSpec& spec);
WaveFunction split_op_step_o4(const WaveFunction& psi, double t, cplx dt,
                              const HamiltonianSpec& spec);

// Observables with dx-weighted sums; momentum moments via the Fourier bridge.
double expect_x(const WaveFunction& psi);
double expect_p(const WaveFunction& psi);
double expect_energy(const WaveFunction& psi, const HamiltonianSpec& spec, double t = 0.0);
CVector apply_hamiltonian(const CVector& psi, const UniformGrid& grid, const HamiltonianSpec& spec,
                          double t = 0.0);
// |g(p)|^2 / (2 pi hbar) on the FFT momentum grid; integrates to the norm with dp.
RVector momentum_density(const WaveFunction& psi);

struct PropagateOptions {
  int order = 2;  // 2 or 4
  int stride = 1;
  std::optional<RVector> mask;  // absorbing mask applied after every step
  std::function<void(double t, const WaveFunction&)> observer;
};

struct PropagationResult {
  WaveFunction psi;
  EvolutionTrace trace;
};

PropagationResult propagate(const WaveFunction& psi0, double t0, double t1, double dt,
                            const HamiltonianSpec& spec, const PropagateOptions& opts = {});

WaveFunction apply_absorbing_boundary(const WaveFunction& psi, const RVector& mask);
// B(x) = -(2 hbar/dt) log w(x)
RVector absorbing_potential(const RVector& mask, double dt, double hbar = 1.0);
// w = exp(-B dt/2hbar) with B(x) = strength * ((|x| - (L - width)) / width)^2 near the edges.
RVector make_absorbing_mask(const UniformGrid& grid, double width, double strength, double dt);

struct ImagTimeResult {
  double energy = 0.0;
  WaveFunction psi;
  int iterations = 0;
  std::vector<double> energy_history;
};

ImagTimeResult imaginary_time_ground(const WaveFunction& guess, double dtau,
                                     const HamiltonianSpec& spec, double tol,
                                     int max_iter = 2000000);
ImagTimeResult imaginary_time_excited(int n_target, const std::vector<WaveFunction>& known,
                                      const WaveFunction& guess, double dtau,
                                      const HamiltonianSpec& spec, double tol,
                                      int max_iter = 2000000);

struct GapEstimate {
  double gap = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> tau;
  std::vector<double> y;  // ln |<[H,O]>|
  int window_begin = 0;   // first sample of the fitted window
};

using GridOperator = std::function<CVector(const CVector&)>;

// gap = -hbar * slope of ln|<psi(tau)|[H,O]|psi(tau)>| under normalized e^{-tau H/hbar}.
GapEstimate spectral_gap_estimate(const WaveFunction& psi0, const GridOperator& O, double dtau,
                                  double tau_max, const HamiltonianSpec& spec);
// Same estimator on a dense Hamiltonian, exact propagator e^{-dtau H/hbar}.
GapEstimate spectral_gap_estimate_dense(const CVector& psi0, const CMatrix& H, const CMatrix& O,
                                        double dtau, double tau_max, double hbar = 1.0);
// Slope fit over the last 40% of the finite prefix; throws if no usable window.
GapEstimate fit_gap_window(std::vector<double> tau, std::vector<double> y, double hbar);

SpinorWaveFunction pauli_split_op_step(const SpinorWaveFunction& psi, double t, double dt,
                                       const PauliHamiltonianSpec& spec);

struct Uncertainty {
  double sigma_x = 0.0;
  double sigma_p = 0.0;
  double product() const { return sigma_x * sigma_p; }
};

Uncertainty compute_uncertainty(const WaveFunction& psi);

}  // namespace dynkit
