#pragma once

#include "dynkit/common.hpp"

namespace dynkit {

// n-point grid on [-L, L) with its FFT-conjugate momentum grid.
// x_k = (k - n/2) dx, dx = 2L/n; p_k = (k - n/2) pi hbar / L.
struct UniformGrid {
  int n = 0;
  double L = 0.0;
  double dx = 0.0;
  double hbar = 1.0;
  RVector x;
  RVector p_fft;

  double dp() const { return kPi * hbar / L; }
  double x_at(int k) const { return (k - n / 2) * dx; }
  double p_at(int k) const { return (k - n / 2) * dp(); }
};

UniformGrid make_grid(double L, int n, double hbar = 1.0);

enum class Space { position, momentum };

// unnormalized: g(p) = int f(x) e^{-ixp/hbar} dx.
// unitary: the same times 1/sqrt(2 pi hbar).
enum class FourierNorm { unnormalized, unitary };

struct SpectralSignal {
  CVector values;
  UniformGrid grid;
  Space space = Space::position;
};

SpectralSignal cft_forward(const SpectralSignal& f, FourierNorm norm = FourierNorm::unnormalized);
SpectralSignal cft_inverse(const SpectralSignal& g, FourierNorm norm = FourierNorm::unnormalized);

// y_k = sum_l x_l e^{-2 pi i k l alpha}, O(n log n).
CVector frft(const CVector& x, double alpha);

struct CustomSpectrum {
  RVector p;  // p_k = (k - n/2) dp
  CVector values;
};

// g(p_k) on an arbitrary momentum spacing dp.
CustomSpectrum cft_forward_custom(const SpectralSignal& f, double dp);

// Centered-axis transforms used by every grid propagator. Both axes are
// centered, spacing_a * spacing_b = 2 pi / n, n divisible by 4.
//   forward:  G_k = sum_l g_l e^{-i a_l b_k} spacing
//   backward: G_k = sum_l g_l e^{+i a_l b_k} spacing
// The conjugate-axis spacing does not enter the sums.
void bridge_forward(cplx* data, int n, double spacing);
void bridge_backward(cplx* data, int n, double spacing);

// In-place grid versions: position <-> momentum with the unnormalized kernel.
void to_momentum(CVector& psi, const UniformGrid& grid);
void to_position(CVector& phi, const UniformGrid& grid);

void require_bridge_compatible(int n);

}  // namespace dynkit
