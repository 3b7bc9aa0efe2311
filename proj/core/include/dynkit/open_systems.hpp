#pragma once

#include <functional>
#include <vector>

#include "dynkit/grid_spectral.hpp"
#include "dynkit/hamiltonian.hpp"
#include "dynkit/tdse.hpp"

namespace dynkit {

// Grid density matrices are stored as rho_{kl} = rho(x_k, x_l) dx so that
// sum_k rho_kk = 1. Discrete-level density matrices are plain d x d.

CMatrix pure_density(const WaveFunction& psi);

struct DensityDiagnostics {
  double trace_error = 0.0;        // |Tr rho - 1|
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double min_eigenvalue = 0.0;     // only when positivity was checked
  bool positivity_checked = false;
};

// Positivity check costs O(n^3); by default it runs for n <= 128.
DensityDiagnostics check_density(const CMatrix& rho, int positivity_max_dim = 128);

// Sum of singular values.
double trace_norm(const CMatrix& a);

// e^{-beta H} / Tr e^{-beta H}
CMatrix gibbs_density(const CMatrix& H, double beta);

// Strang split of the Liouville-von Neumann equation on a grid.
CMatrix vonneumann_step(const CMatrix& rho, const UniformGrid& grid, double t, double dt,
                        const HamiltonianSpec& spec);

using PositionJump = std::function<cplx(double t, double x)>;

// Position-dependent Lindblad channel A(t, x) next to the unitary part.
CMatrix lindblad_x_step(const CMatrix& rho, const UniformGrid& grid, double t, double dt,
                        const HamiltonianSpec& spec, const PositionJump& A);

// rates(n, j) = gamma_{n->j}; dp_n/dt = sum_j [gamma_{n->j} p_j - gamma_{j->n} p_n].
using RateMatrix = RMatrix;

RMatrix pauli_generator(const RateMatrix& rates);

// Rows: requested times.
RMatrix pauli_master_solve(const RateMatrix& rates, const RVector& p0, const std::vector<double>& t);

// gamma_{n->j} = gamma0 e^{-beta E_n} / Z.
RateMatrix gibbs_rates(const RVector& E, double beta, double gamma0);
// gamma_{n->j} = gamma0 f_n / sum f, f = 1/(e^{beta (E - mu)} + 1).
RateMatrix fermi_dirac_rates(const RVector& E, double beta, double mu, double gamma0);

// e^{G dt/2} e^{D dt} e^{G dt/2}, D[rho] = gamma (rho_beta - rho).
CMatrix random_collision_step(const CMatrix& rho, const UniformGrid& grid, double t, double dt,
                              const HamiltonianSpec& spec, double gamma, const CMatrix& rho_beta);

// Discrete levels with a static Hamiltonian matrix.
CMatrix vonneumann_step_levels(const CMatrix& rho, const CMatrix& H, double dt, double hbar = 1.0);
CMatrix random_collision_step_levels(const CMatrix& rho, const CMatrix& H, double dt, double gamma,
                                     const CMatrix& rho_beta, double hbar = 1.0);

using SuperoperatorAction = std::function<CMatrix(const CMatrix&)>;

// D[rho] = A rho A^dagger - (A^dagger A rho + rho A^dagger A)/2
CMatrix dissipator(const CMatrix& A, const CMatrix& rho);

struct DissipatorSplit {
  SuperoperatorAction dissipative;            // (D + D^dagger)/2
  SuperoperatorAction hamiltonian_correction;  // (D - D^dagger)/2
};

DissipatorSplit dissipator_split(const CMatrix& A);

// Column-stacking vec: vec(A X B) = (B^T kron A) vec(X).
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, Eigen::Index d);

CMatrix lindblad_superoperator(const CMatrix& H, const std::vector<CMatrix>& jumps, double hbar = 1.0);

// rho(t) = unvec(e^{L t} vec(rho0)) at each requested time.
std::vector<CMatrix> lindblad_reference(const CMatrix& rho0, const CMatrix& H,
                                        const std::vector<CMatrix>& jumps,
                                        const std::vector<double>& times, double hbar = 1.0);

// sigma_x, sigma_p from Tr(rho x^n), Tr(rho p^n).
Uncertainty uncertainty_from_density(const CMatrix& rho, const UniformGrid& grid);

}  // namespace dynkit
