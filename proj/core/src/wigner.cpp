#include "dynkit/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fft.hpp"

namespace dynkit {

double wigner_momentum_spacing(const UniformGrid& grid) { return kPi * grid.hbar / (2.0 * grid.L); }

RVector wigner_momentum_axis(const UniformGrid& grid) {
  const double dp = wigner_momentum_spacing(grid);
  RVector p(grid.n);
  for (int m = 0; m < grid.n; ++m) p[m] = (m - grid.n / 2) * dp;
  return p;
}

namespace {

double theta_spacing(const UniformGrid& g) { return 2.0 * g.dx / g.hbar; }

void row_transform_forward(CMatrix& m, double spacing) {
  CVector row(m.cols());
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    row = m.row(k).transpose();
    bridge_forward(row.data(), static_cast<int>(row.size()), spacing);
    m.row(k) = row.transpose();
  }
}

void row_transform_backward(CMatrix& m, double spacing) {
  CVector row(m.cols());
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    row = m.row(k).transpose();
    bridge_backward(row.data(), static_cast<int>(row.size()), spacing);
    m.row(k) = row.transpose();
  }
}

void col_transform_forward(CMatrix& m, double spacing) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) bridge_forward(m.col(j).data(), static_cast<int>(m.rows()), spacing);
}

void col_transform_backward(CMatrix& m, double spacing) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) bridge_backward(m.col(j).data(), static_cast<int>(m.rows()), spacing);
}

// (x_k, theta_j) <-> kernel(k - s, k + s), s = j - n/2.
CMatrix blokhintsev_from_kernel(const CMatrix& kernel) {
  const int n = static_cast<int>(kernel.rows());
  CMatrix B = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const int s = j - n / 2;
    for (int k = 0; k < n; ++k) {
      const int a = k - s, b = k + s;
      if (a >= 0 && a < n && b >= 0 && b < n) B(k, j) = kernel(a, b);
    }
  }
  return B;
}

// value of the periodic band-limited interpolant of s at m + shift, shift = +-1/2
void half_shift(CVector& s, double shift) {
  const int m = static_cast<int>(s.size());
  detail::fft_inplace(s.data(), m, -1);
  for (int q = 0; q < m; ++q) {
    const int f = q < m / 2 ? q : q - m;
    if (2 * f == -m) {
      s[q] *= std::cos(kPi * shift);
    } else {
      s[q] *= std::polar(1.0, 2.0 * kPi * f * shift / m);
    }
  }
  detail::fft_inplace(s.data(), m, +1);
  s /= static_cast<double>(m);
}

}  // namespace

WignerFunction wigner_from_density(const CMatrix& rho, const UniformGrid& grid) {
  require_bridge_compatible(grid.n);
  require(rho.rows() == grid.n && rho.cols() == grid.n, "wigner_from_density: size mismatch");
  CMatrix B = blokhintsev_from_kernel(rho / grid.dx);
  row_transform_backward(B, theta_spacing(grid));
  B /= 2.0 * kPi;
  const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
  const double residue = B.imag().cwiseAbs().maxCoeff();
  if (residue > 1e-8 * scale)
    throw NumericalError("wigner_from_density: imaginary residue " + std::to_string(residue) +
                         " (density matrix not hermitian)");
  return {grid, wigner_momentum_axis(grid), wigner_momentum_spacing(grid), B.real()};
}

CMatrix density_from_wigner(const WignerFunction& W) {
  const UniformGrid& g = W.grid;
  const int n = g.n;
  require_bridge_compatible(n);
  require(W.values.rows() == n && W.values.cols() == n, "density_from_wigner: size mismatch");
  CMatrix B = W.values.cast<cplx>();
  row_transform_forward(B, W.dp);
  CMatrix K = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const int s = j - n / 2;
    for (int k = 0; k < n; ++k) {
      const int a = k - s, b = k + s;
      if (a >= 0 && a < n && b >= 0 && b < n) K(a, b) = B(k, j);
    }
  }
  // Row a holds exact samples at b = a%2 + 2m; fill the other parity.
  const int half = n / 2;
  CVector s(half);
  for (int a = 0; a < n; ++a) {
    const int b0 = a % 2;
    for (int m = 0; m < half; ++m) s[m] = K(a, b0 + 2 * m);
    half_shift(s, b0 == 0 ? 0.5 : -0.5);
    for (int m = 0; m < half; ++m) K(a, b0 == 0 ? 2 * m + 1 : 2 * m) = s[m];
  }
  CMatrix rho = K * g.dx;
  return 0.5 * (rho + rho.adjoint());
}

Marginals wigner_marginals(const WignerFunction& W) {
  return {W.values.rowwise().sum() * W.dp, W.values.colwise().sum().transpose() * W.grid.dx};
}

double wigner_norm(const WignerFunction& W) { return W.values.sum() * W.dp * W.grid.dx; }

double wigner_purity(const WignerFunction& W) {
  return 2.0 * kPi * W.hbar() * W.values.cwiseAbs2().sum() * W.dp * W.grid.dx;
}

TwoStateWigner make_two_state(const WignerFunction& ground) {
  const int n = ground.grid.n;
  return {ground.grid, ground.p, ground.dp, ground.values, RMatrix::Zero(n, n), CMatrix::Zero(n, n), 0.0};
}

namespace {

using Block = std::array<CMatrix, 4>;  // gg, ge, eg, ee

struct Mat2 {
  cplx a, b, c, d;  // [[a, b], [c, d]]
};

// Potential part on the Blokhintsev grid, step h.
void potential_part(Block& B, const UniformGrid& g, double t_mid, double h, const MoleculeSpec& spec) {
  const int n = g.n;
  const double hbar = spec.hbar;
  const double field = spec.E ? spec.E(t_mid) : 0.0;
  // T[i] sits at x = (i - n) dx, covering every x_{k +- s}.
  std::vector<Mat2> T(2 * n);
  std::vector<double> vsum(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    const double x = (i - n) * g.dx;
    const double vg = spec.Vg(x), ve = spec.Ve(x);
    const double veg = spec.mu_eg ? -spec.mu_eg(x) * field : 0.0;
    const double dlt = 0.5 * (vg - ve);
    const double D = std::sqrt(veg * veg + dlt * dlt);
    const double arg = D * h / hbar;
    const double S = std::abs(arg) < 1e-8 ? (h / hbar) * (1.0 - arg * arg / 6.0) : std::sin(arg) / D;
    const double C = std::cos(arg);
    const double Lc = S * veg, M = S * dlt;
    T[i] = {cplx(C, -M), cplx(0.0, -Lc), cplx(0.0, -Lc), cplx(C, M)};
    vsum[i] = vg + ve;
  }
  for (int j = 0; j < n; ++j) {
    const int s = j - n / 2;
    for (int k = 0; k < n; ++k) {
      const int im = k - s + n / 2;  // x- = x_{k-s}
      const int ip = k + s + n / 2;  // x+ = x_{k+s}
      const Mat2& tm = T[im];
      const Mat2& tp = T[ip];
      const cplx ph = std::polar(1.0, h / (2.0 * hbar) * (vsum[ip] - vsum[im]));
      const cplx b00 = B[0](k, j), b01 = B[1](k, j), b10 = B[2](k, j), b11 = B[3](k, j);
      // X = T(x-) B
      const cplx x00 = tm.a * b00 + tm.b * b10, x01 = tm.a * b01 + tm.b * b11;
      const cplx x10 = tm.c * b00 + tm.d * b10, x11 = tm.c * b01 + tm.d * b11;
      // X T(x+)^dagger
      const cplx pa = std::conj(tp.a), pb = std::conj(tp.b), pc = std::conj(tp.c), pd = std::conj(tp.d);
      B[0](k, j) = ph * (x00 * pa + x01 * pb);
      B[1](k, j) = ph * (x00 * pc + x01 * pd);
      B[2](k, j) = ph * (x10 * pa + x11 * pb);
      B[3](k, j) = ph * (x10 * pc + x11 * pd);
    }
  }
}

void potential_stage(Block& W, const UniformGrid& g, double dp, double t_mid, double h,
                     const MoleculeSpec& spec) {
  const double dth = theta_spacing(g);
  for (auto& b : W) row_transform_forward(b, dp);
  potential_part(W, g, t_mid, h, spec);
  for (auto& b : W) {
    row_transform_backward(b, dth);
    b /= 2.0 * kPi;
  }
}

void kinetic_stage(Block& W, const UniformGrid& g, const RVector& p, double h, const MoleculeSpec& spec) {
  const int n = g.n;
  const double hbar = spec.hbar;
  const double dl = 2.0 * kPi / (n * g.dx);
  CMatrix phase(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      const double lam = (k - n / 2) * dl;
      const double pm = p[m] - 0.5 * hbar * lam, pp = p[m] + 0.5 * hbar * lam;
      phase(k, m) = std::polar(1.0, h / hbar * (spec.K(pm) - spec.K(pp)));
    }
  }
  for (auto& b : W) {
    col_transform_forward(b, g.dx);
    b.array() *= phase.array();
    col_transform_backward(b, dl);
    b /= 2.0 * kPi;
  }
}

}  // namespace

TwoStateWigner moyal_two_state_step(const TwoStateWigner& W, double t, double dt,
                                    const MoleculeSpec& spec, MoyalSplitting splitting) {
  const UniformGrid& g = W.grid;
  require_bridge_compatible(g.n);
  require(W.Wg.rows() == g.n && W.Wg.cols() == g.n && W.We.rows() == g.n && W.We.cols() == g.n &&
              W.Wge.rows() == g.n && W.Wge.cols() == g.n,
          "moyal_two_state_step: block size mismatch");
  require(static_cast<bool>(spec.K) && static_cast<bool>(spec.Vg) && static_cast<bool>(spec.Ve),
          "moyal_two_state_step: K, Vg and Ve required");
  require(spec.hbar == g.hbar, "moyal_two_state_step: spec and grid hbar differ");
  Block B{W.Wg.cast<cplx>(), W.Wge, W.Wge.conjugate(), W.We.cast<cplx>()};
  const double tm = t + 0.5 * dt;
  if (splitting == MoyalSplitting::lie) {
    potential_stage(B, g, W.dp, tm, dt, spec);
    kinetic_stage(B, g, W.p, dt, spec);
  } else {
    potential_stage(B, g, W.dp, tm, 0.5 * dt, spec);
    kinetic_stage(B, g, W.p, dt, spec);
    potential_stage(B, g, W.dp, tm, 0.5 * dt, spec);
  }
  TwoStateWigner out{g, W.p, W.dp, B[0].real(), B[3].real(), B[1], 0.0};
  out.imag_residue = std::max({B[0].imag().cwiseAbs().maxCoeff(), B[3].imag().cwiseAbs().maxCoeff(),
                               (B[1] - B[2].conjugate()).cwiseAbs().maxCoeff()});
  return out;
}

}  // namespace dynkit
