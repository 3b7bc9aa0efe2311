#pragma once

#include <functional>

#include "dynkit/grid_spectral.hpp"

namespace dynkit {

// Phase-space grid: x from the UniformGrid, p_m = (m - n/2) dp with
// dp = pi hbar / (2L), conjugate to theta spacing 2 dx / hbar so that
// x +- hbar theta/2 lands on grid points.
struct WignerFunction {
  UniformGrid grid;
  RVector p;
  double dp = 0.0;
  RMatrix values;  // rows x, columns p

  double hbar() const { return grid.hbar; }
};

RVector wigner_momentum_axis(const UniformGrid& grid);
double wigner_momentum_spacing(const UniformGrid& grid);

// W(x,p) = (1/2pi) int <x - hbar theta/2| rho |x + hbar theta/2> e^{i p theta} d theta.
// rho uses the grid convention sum_k rho_kk = 1.
WignerFunction wigner_from_density(const CMatrix& rho, const UniformGrid& grid);

// Inverse transform. Entries with k + l even are exact; the others are
// band-limited interpolations along rows.
CMatrix density_from_wigner(const WignerFunction& W);

struct Marginals {
  RVector coordinate;  // int W dp
  RVector momentum;    // int W dx
};

Marginals wigner_marginals(const WignerFunction& W);
double wigner_norm(const WignerFunction& W);
// Tr rho^2 = 2 pi hbar int W^2
double wigner_purity(const WignerFunction& W);

struct TwoStateWigner {
  UniformGrid grid;
  RVector p;
  double dp = 0.0;
  RMatrix Wg;
  RMatrix We;
  CMatrix Wge;  // the (e,g) block is conj(Wge)
  double imag_residue = 0.0;  // set by the propagator
};

TwoStateWigner make_two_state(const WignerFunction& ground);

struct MoleculeSpec {
  std::function<double(double p)> K;
  std::function<double(double x)> Vg;
  std::function<double(double x)> Ve;
  std::function<double(double x)> mu_eg;
  std::function<double(double t)> E;
  double hbar = 1.0;
};

enum class MoyalSplitting { lie, strang };

TwoStateWigner moyal_two_state_step(const TwoStateWigner& W, double t, double dt,
                                    const MoleculeSpec& spec,
                                    MoyalSplitting splitting = MoyalSplitting::lie);

}  // namespace dynkit
