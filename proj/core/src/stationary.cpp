#include "dynkit/stationary.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dynkit/matfunc.hpp"
#include "fft.hpp"

namespace dynkit {

CMatrix build_fd_hamiltonian(const UniformGrid& grid, const std::function<double(double)>& U,
                             FdScheme scheme, double mass) {
  require(mass > 0.0, "build_fd_hamiltonian: mass must be positive");
  const int n = grid.n;
  const double c = -grid.hbar * grid.hbar / (2.0 * mass * grid.dx * grid.dx);
  CMatrix H = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double u = U(grid.x[k]);
    switch (scheme) {
      case FdScheme::central:
        H(k, k) = -2.0 * c + u;
        if (k > 0) H(k, k - 1) = c;
        if (k + 1 < n) H(k, k + 1) = c;
        break;
      case FdScheme::forward:
        H(k, k) = c + u;
        if (k + 1 < n) H(k, k + 1) = -2.0 * c;
        if (k + 2 < n) H(k, k + 2) = c;
        break;
      case FdScheme::backward:
        H(k, k) = c + u;
        if (k >= 1) H(k, k - 1) = -2.0 * c;
        if (k >= 2) H(k, k - 2) = c;
        break;
    }
  }
  return H;
}

CMatrix build_spectral_hamiltonian(const UniformGrid& grid, const HamiltonianSpec& spec, double t) {
  require_bridge_compatible(grid.n);
  const int n = grid.n;
  CVector kin(n);
  for (int k = 0; k < n; ++k) kin[k] = spec.K(t, grid.p_fft[k]);
  CMatrix H(n, n);
  CVector col(n);
  for (int j = 0; j < n; ++j) {
    col.setZero();
    col[j] = 1.0;
    to_momentum(col, grid);
    col.array() *= kin.array();
    to_position(col, grid);
    H.col(j) = col;
  }
  H = 0.5 * (H + H.adjoint()).eval();
  for (int k = 0; k < n; ++k) H(k, k) += spec.U(t, grid.x[k]);
  return H;
}

SpectrumResult eigensolve(const CMatrix& H, double dx) {
  require(dx > 0.0, "eigensolve: dx must be positive");
  HermitianEigen e = hermitian_eigen(H);
  return {e.values, e.vectors / std::sqrt(dx)};
}

namespace {

RVector cell_bands(const HamiltonianSpec& cell, double a, int n, double k, int n_bands) {
  const double hbar = cell.hbar;
  const double dx = a / n;
  // Plane-wave matrix V_{l j} = e^{i p_j x_l / hbar} / sqrt(n), p_j = 2 pi hbar j / a.
  CMatrix V(n, n);
  RVector kin(n);
  for (int jj = 0; jj < n; ++jj) {
    const int j = jj - n / 2;
    kin[jj] = cell.K(0.0, 2.0 * kPi * hbar * j / a + hbar * k);
    for (int l = 0; l < n; ++l) {
      // p_j x_l / hbar = 2 pi j l / n, reduced exactly in integers.
      const long long m = ((static_cast<long long>(j) * l) % n + n) % n;
      V(l, jj) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), 2.0 * kPi * m / n);
    }
  }
  CMatrix H = V * kin.cast<cplx>().asDiagonal() * V.adjoint();
  H = 0.5 * (H + H.adjoint()).eval();
  for (int l = 0; l < n; ++l) H(l, l) += cell.U(0.0, l * dx);
  RVector ev = hermitian_eigen(H).values;
  return ev.head(n_bands);
}

}  // namespace

RMatrix band_structure(const HamiltonianSpec& cell, double a, int n, const std::vector<double>& k,
                       int n_bands, int threads) {
  require(a > 0.0, "band_structure: lattice constant must be positive");
  require(n >= 2 && n % 2 == 0, "band_structure: n must be even and >= 2");
  require(n_bands >= 1 && n_bands <= n, "band_structure: n_bands must lie in [1, n]");
  const int nk = static_cast<int>(k.size());
  RMatrix E(nk, n_bands);
  const int workers = std::max(1, std::min(threads, nk));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < nk; i = next++) E.row(i) = cell_bands(cell, a, n, k[i], n_bands).transpose();
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return E;
}

std::vector<double> ring_quasimomenta(double a, int n_cells) {
  require(a > 0.0 && n_cells >= 1, "ring_quasimomenta: need a > 0 and n_cells >= 1");
  std::vector<double> ks;
  const int lo = -(n_cells / 2);
  for (int j = lo; j < lo + n_cells; ++j) ks.push_back(2.0 * kPi * j / (a * n_cells));
  return ks;
}

SpectralDensity spectrum_via_propagation(const WaveFunction& psi0, const HamiltonianSpec& spec,
                                         double T, double dt, const SpectrumOptions& opts) {
  require(T > 0.0 && dt > 0.0 && dt < T, "spectrum_via_propagation: need 0 < dt < T");
  require(opts.pad_factor >= 1, "spectrum_via_propagation: pad_factor must be >= 1");
  require(opts.order == 2 || opts.order == 4, "spectrum_via_propagation: order must be 2 or 4");
  const int m = static_cast<int>(std::round(T / dt));
  require(m >= 4, "spectrum_via_propagation: too few samples");
  SplitOperator op(psi0.grid, spec);
  const double dx = psi0.grid.dx;
  CVector psi = psi0.psi;
  std::vector<cplx> a(static_cast<size_t>(m) * opts.pad_factor, 0.0);
  for (int j = 0; j < m; ++j) {
    if (j > 0) {
      if (opts.order == 2)
        op.step(psi, (j - 1) * dt, dt);
      else
        op.step_o4(psi, (j - 1) * dt, dt);
    }
    const double w = opts.hann ? 0.5 * (1.0 - std::cos(2.0 * kPi * j / m)) : 1.0;
    a[j] = w * psi0.psi.dot(psi) * dx;
  }
  // sum_j a_j e^{+i E t_j / hbar} dt on E_q = 2 pi hbar q / (M dt), q centered.
  const int mm = static_cast<int>(a.size());
  detail::fft_inplace(a.data(), mm, +1);
  SpectralDensity s;
  s.energies.resize(mm);
  s.density.resize(mm);
  s.resolution = 2.0 * kPi * spec.hbar / T;
  const double de = 2.0 * kPi * spec.hbar / (mm * dt);
  const double norm = dt / std::sqrt(2.0 * kPi * spec.hbar);
  for (int q = 0; q < mm; ++q) {
    const int qs = q - mm / 2;
    const int src = (qs % mm + mm) % mm;
    s.energies[q] = qs * de;
    s.density[q] = std::abs(a[src]) * norm;
  }
  return s;
}

std::vector<SpectralPeak> find_spectral_peaks(const SpectralDensity& s, double rel_threshold) {
  std::vector<SpectralPeak> peaks;
  const Eigen::Index n = s.density.size();
  if (n < 3) return peaks;
  const double thr = rel_threshold * s.density.maxCoeff();
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double d = s.density[i];
    if (d > thr && d >= s.density[i - 1] && d > s.density[i + 1]) {
      // Parabolic refinement through the three samples around the maximum.
      const double l = s.density[i - 1], r = s.density[i + 1];
      const double denom = l - 2.0 * d + r;
      const double off = denom != 0.0 ? 0.5 * (l - r) / denom : 0.0;
      const double de = s.energies[i + 1] - s.energies[i];
      peaks.push_back({s.energies[i] + off * de, d - 0.25 * (l - r) * off});
    }
  }
  return peaks;
}

}  // namespace dynkit
