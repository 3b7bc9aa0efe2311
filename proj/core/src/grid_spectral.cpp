#include "dynkit/grid_spectral.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "fft.hpp"

namespace dynkit {

UniformGrid make_grid(double L, int n, double hbar) {
  require(L > 0.0 && std::isfinite(L), "make_grid: L must be positive");
  require(n >= 4 && n % 2 == 0, "make_grid: n must be even and >= 4");
  require(hbar > 0.0, "make_grid: hbar must be positive");
  UniformGrid g;
  g.n = n;
  g.L = L;
  g.hbar = hbar;
  g.dx = 2.0 * L / n;
  g.x.resize(n);
  g.p_fft.resize(n);
  for (int k = 0; k < n; ++k) {
    g.x[k] = g.x_at(k);
    g.p_fft[k] = g.p_at(k);
  }
  return g;
}

void require_bridge_compatible(int n) {
  require(n % 4 == 0, "Fourier bridge: n must be divisible by 4");
}

void bridge_forward(cplx* data, int n, double spacing) {
  require_bridge_compatible(n);
  detail::alternate_signs(data, n);
  detail::fft_inplace(data, n, -1);
  detail::alternate_signs(data, n);
  for (int k = 0; k < n; ++k) data[k] *= spacing;
}

void bridge_backward(cplx* data, int n, double spacing) {
  require_bridge_compatible(n);
  detail::alternate_signs(data, n);
  detail::fft_inplace(data, n, +1);
  detail::alternate_signs(data, n);
  for (int k = 0; k < n; ++k) data[k] *= spacing;
}

void to_momentum(CVector& psi, const UniformGrid& grid) {
  bridge_forward(psi.data(), grid.n, grid.dx);
}

void to_position(CVector& phi, const UniformGrid& grid) {
  // 1/(2 pi hbar) * sum g e^{ixp/hbar} dp, and dp/(2 pi hbar) = 1/(n dx).
  bridge_backward(phi.data(), grid.n, 1.0 / (grid.n * grid.dx));
}

SpectralSignal cft_forward(const SpectralSignal& f, FourierNorm norm) {
  require(f.space == Space::position, "cft_forward: input must be in position space");
  require(f.values.size() == f.grid.n, "cft_forward: length mismatch");
  require_bridge_compatible(f.grid.n);
  SpectralSignal g{f.values, f.grid, Space::momentum};
  to_momentum(g.values, g.grid);
  if (norm == FourierNorm::unitary) g.values /= std::sqrt(2.0 * kPi * f.grid.hbar);
  return g;
}

SpectralSignal cft_inverse(const SpectralSignal& g, FourierNorm norm) {
  require(g.space == Space::momentum, "cft_inverse: input must be in momentum space");
  require(g.values.size() == g.grid.n, "cft_inverse: length mismatch");
  require_bridge_compatible(g.grid.n);
  SpectralSignal f{g.values, g.grid, Space::position};
  to_position(f.values, f.grid);
  if (norm == FourierNorm::unitary) f.values *= std::sqrt(2.0 * kPi * g.grid.hbar);
  return f;
}

namespace {

// a*b mod 2 for an integer-valued a, keeping the rounding error of the product.
double product_mod2(double a, double b) {
  const double prod = a * b;
  const double err = std::fma(a, b, -prod);
  return std::fmod(prod, 2.0) + err;
}

// e^{i pi q alpha} for integer q.
cplx chirp(long long q, double alpha) {
  return std::polar(1.0, kPi * product_mod2(static_cast<double>(q), alpha));
}

}  // namespace

CVector frft(const CVector& x, double alpha) {
  const int n = static_cast<int>(x.size());
  CVector y(n);
  if (n == 0) return y;
  if (n == 1) {
    y[0] = x[0];
    return y;
  }
  // kl = (k^2 + l^2 - (k-l)^2)/2
  const int m = static_cast<int>(std::bit_ceil(static_cast<unsigned>(2 * n - 1)));
  std::vector<cplx> a(m, 0.0), b(m, 0.0);
  for (int l = 0; l < n; ++l) a[l] = x[l] * chirp(-static_cast<long long>(l) * l, alpha);
  b[0] = 1.0;
  for (int q = 1; q < n; ++q) {
    cplx c = chirp(static_cast<long long>(q) * q, alpha);
    b[q] = c;
    b[m - q] = c;
  }
  detail::fft_inplace(a.data(), m, -1);
  detail::fft_inplace(b.data(), m, -1);
  for (int i = 0; i < m; ++i) a[i] *= b[i];
  detail::fft_inplace(a.data(), m, +1);
  const double inv_m = 1.0 / m;
  for (int k = 0; k < n; ++k) y[k] = a[k] * inv_m * chirp(-static_cast<long long>(k) * k, alpha);
  return y;
}

CustomSpectrum cft_forward_custom(const SpectralSignal& f, double dp) {
  require(f.space == Space::position, "cft_forward_custom: input must be in position space");
  require(dp > 0.0, "cft_forward_custom: dp must be positive");
  const UniformGrid& g = f.grid;
  const int n = g.n;
  require(f.values.size() == n, "cft_forward_custom: length mismatch");
  const double delta = g.dx * dp / (2.0 * kPi * g.hbar);
  CVector in(n);
  for (int l = 0; l < n; ++l) in[l] = f.values[l] * std::polar(1.0, kPi * product_mod2(static_cast<double>(l) * n, delta));
  CVector y = frft(in, delta);
  CustomSpectrum out;
  out.p.resize(n);
  out.values.resize(n);
  for (int k = 0; k < n; ++k) {
    out.p[k] = (k - n / 2) * dp;
    out.values[k] = g.dx * std::polar(1.0, kPi * product_mod2(static_cast<double>(k - n / 2) * n, delta)) * y[k];
  }
  return out;
}

}  // namespace dynkit
