#pragma once

#include <functional>
#include <vector>

#include "dynkit/grid_spectral.hpp"
#include "dynkit/hamiltonian.hpp"
#include "dynkit/tdse.hpp"

namespace dynkit {

enum class FdScheme { forward, backward, central };

struct SpectrumResult {
  RVector energies;  // ascending
  CMatrix states;    // columns, sum |psi|^2 dx = 1
};

// Three-point stencils with -hbar^2/(2 m dx^2) prefactor and Dirichlet ends.
// forward uses (k, k+1, k+2), backward (k, k-1, k-2); both are triangular.
CMatrix build_fd_hamiltonian(const UniformGrid& grid, const std::function<double(double)>& U,
                             FdScheme scheme, double mass = 1.0);

// F^{-1} diag(K(t, p_k)) F + diag(U(t, x_k)).
CMatrix build_spectral_hamiltonian(const UniformGrid& grid, const HamiltonianSpec& spec,
                                   double t = 0.0);

SpectrumResult eigensolve(const CMatrix& H, double dx = 1.0);

// Lowest n_bands eigenvalues of H(x, p + hbar k) on one cell [0, a) with n
// points and periodic momenta 2 pi hbar j / a. Rows: k points.
RMatrix band_structure(const HamiltonianSpec& cell, double a, int n, const std::vector<double>& k,
                       int n_bands, int threads = 1);

// k = 2 pi j / (a N), j = -N/2 .. N/2 - 1 (N even) or -(N-1)/2 .. (N-1)/2.
std::vector<double> ring_quasimomenta(double a, int n_cells);

struct SpectralDensity {
  RVector energies;
  RVector density;
  double resolution = 0.0;  // 2 pi hbar / T
};

struct SpectrumOptions {
  int pad_factor = 8;   // zero padding of the autocorrelation record
  bool hann = true;     // window against sinc lobes
  int order = 2;
};

// |F^{-1}_{t->E}[a(t)]| with a(t) = <psi(0)|psi(t)>, t in [0, T).
SpectralDensity spectrum_via_propagation(const WaveFunction& psi0, const HamiltonianSpec& spec,
                                         double T, double dt, const SpectrumOptions& opts = {});

struct SpectralPeak {
  double energy = 0.0;
  double height = 0.0;
};

// Local maxima above rel_threshold of the global maximum, ascending in energy.
std::vector<SpectralPeak> find_spectral_peaks(const SpectralDensity& s, double rel_threshold = 0.05);

}  // namespace dynkit
