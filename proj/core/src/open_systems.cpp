#include "dynkit/open_systems.hpp"

#include <cmath>

#include "dynkit/matfunc.hpp"

namespace dynkit {

CMatrix pure_density(const WaveFunction& w) { return (w.psi * w.psi.adjoint()) * w.grid.dx; }

DensityDiagnostics check_density(const CMatrix& rho, int positivity_max_dim) {
  require(rho.rows() == rho.cols(), "check_density: matrix must be square");
  DensityDiagnostics d;
  d.trace_error = std::abs(rho.trace() - 1.0);
  d.hermiticity_error = rho.size() ? (rho - rho.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  if (rho.rows() <= positivity_max_dim) {
    const CMatrix h = 0.5 * (rho + rho.adjoint());
    d.min_eigenvalue = hermitian_eigen(h).values.minCoeff();
    d.positivity_checked = true;
  }
  return d;
}

double trace_norm(const CMatrix& a) {
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

CMatrix gibbs_density(const CMatrix& H, double beta) {
  require(beta >= 0.0, "gibbs_density: beta must be nonnegative");
  HermitianEigen e = hermitian_eigen(H);
  const double e0 = e.values.minCoeff();
  CVector w(e.values.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::exp(-beta * (e.values[i] - e0));
  CMatrix rho = e.vectors * w.asDiagonal() * e.vectors.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

namespace {

// rho <- O rho O^dagger with O = F^{-1} e^{-i K h / hbar} F.
void kinetic_sandwich(CMatrix& rho, const UniformGrid& grid, const CVector& kin) {
  const int n = grid.n;
  CVector col(n);
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < n; ++j) {
      col = rho.col(j);
      to_momentum(col, grid);
      col.array() *= kin.array();
      to_position(col, grid);
      rho.col(j) = col;
    }
    // (O (O rho)^dagger)^dagger = O rho O^dagger
    rho.adjointInPlace();
  }
}

CVector kinetic_phase(const UniformGrid& grid, const HamiltonianSpec& spec, double t_mid, double h) {
  CVector kin(grid.n);
  for (int k = 0; k < grid.n; ++k) kin[k] = std::polar(1.0, -h * spec.K(t_mid, grid.p_fft[k]) / spec.hbar);
  return kin;
}

// P(x, x') rho(x, x') with P = e^{(h/2) F(x, x')}; diagonal A optional.
CMatrix position_phase(const UniformGrid& grid, const HamiltonianSpec& spec, double t_mid, double h,
                       const PositionJump* A) {
  const int n = grid.n;
  RVector v(n);
  CVector a(n);
  for (int k = 0; k < n; ++k) {
    v[k] = spec.U(t_mid, grid.x[k]);
    a[k] = A ? (*A)(t_mid, grid.x[k]) : cplx(0.0);
  }
  CMatrix P(n, n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      cplx f = kI * (v[l] - v[k]) / spec.hbar;
      if (A) f += a[k] * std::conj(a[l]) - 0.5 * std::norm(a[l]) - 0.5 * std::norm(a[k]);
      P(k, l) = std::exp(0.5 * h * f);
    }
  }
  return P;
}

void split_apply(CMatrix& rho, const UniformGrid& grid, const HamiltonianSpec& spec, double t_mid,
                 double h, const PositionJump* A) {
  require_bridge_compatible(grid.n);
  require(rho.rows() == grid.n && rho.cols() == grid.n, "density step: size mismatch");
  const CMatrix P = position_phase(grid, spec, t_mid, h, A);
  rho.array() *= P.array();
  kinetic_sandwich(rho, grid, kinetic_phase(grid, spec, t_mid, h));
  rho.array() *= P.array();
}

}  // namespace

CMatrix vonneumann_step(const CMatrix& rho, const UniformGrid& grid, double t, double dt,
                        const HamiltonianSpec& spec) {
  CMatrix out = rho;
  split_apply(out, grid, spec, t + 0.5 * dt, dt, nullptr);
  return out;
}

CMatrix lindblad_x_step(const CMatrix& rho, const UniformGrid& grid, double t, double dt,
                        const HamiltonianSpec& spec, const PositionJump& A) {
  CMatrix out = rho;
  split_apply(out, grid, spec, t + 0.5 * dt, dt, A ? &A : nullptr);
  return out;
}

RMatrix pauli_generator(const RateMatrix& rates) {
  require(rates.rows() == rates.cols(), "pauli_generator: rate matrix must be square");
  require(rates.size() == 0 || rates.minCoeff() >= 0.0, "pauli_generator: rates must be nonnegative");
  RMatrix G = rates;
  G.diagonal().setZero();
  const RVector out = G.colwise().sum().transpose();  // sum_j gamma_{j->n}
  G.diagonal() = -out;
  return G;
}

RMatrix pauli_master_solve(const RateMatrix& rates, const RVector& p0, const std::vector<double>& t) {
  require(p0.size() == rates.rows(), "pauli_master_solve: dimension mismatch");
  require(p0.size() == 0 || p0.minCoeff() >= 0.0, "pauli_master_solve: p0 must be nonnegative");
  require(std::abs(p0.sum() - 1.0) <= 1e-10, "pauli_master_solve: p0 must sum to 1");
  const CMatrix G = pauli_generator(rates).cast<cplx>();
  RMatrix out(static_cast<Eigen::Index>(t.size()), p0.size());
  for (size_t i = 0; i < t.size(); ++i) {
    const CMatrix e = expm_pade(G * t[i]).result;
    out.row(static_cast<Eigen::Index>(i)) = (e * p0.cast<cplx>()).real().transpose();
  }
  return out;
}

RateMatrix gibbs_rates(const RVector& E, double beta, double gamma0) {
  require(beta >= 0.0, "gibbs_rates: beta must be nonnegative");
  require(gamma0 >= 0.0, "gibbs_rates: gamma0 must be nonnegative");
  const Eigen::Index d = E.size();
  const double e0 = d ? E.minCoeff() : 0.0;
  RVector w(d);
  for (Eigen::Index n = 0; n < d; ++n) w[n] = std::exp(-beta * (E[n] - e0));
  w /= w.sum();
  RateMatrix r(d, d);
  for (Eigen::Index n = 0; n < d; ++n)
    for (Eigen::Index j = 0; j < d; ++j) r(n, j) = n == j ? 0.0 : gamma0 * w[n];
  return r;
}

RateMatrix fermi_dirac_rates(const RVector& E, double beta, double mu, double gamma0) {
  require(beta >= 0.0, "fermi_dirac_rates: beta must be nonnegative");
  require(gamma0 >= 0.0, "fermi_dirac_rates: gamma0 must be nonnegative");
  const Eigen::Index d = E.size();
  RVector f(d);
  for (Eigen::Index n = 0; n < d; ++n) {
    const double z = beta * (E[n] - mu);
    f[n] = z > 0.0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (std::exp(z) + 1.0);
  }
  f /= f.sum();
  RateMatrix r(d, d);
  for (Eigen::Index n = 0; n < d; ++n)
    for (Eigen::Index j = 0; j < d; ++j) r(n, j) = n == j ? 0.0 : gamma0 * f[n];
  return r;
}

CMatrix random_collision_step(const CMatrix& rho, const UniformGrid& grid, double t, double dt,
                              const HamiltonianSpec& spec, double gamma, const CMatrix& rho_beta) {
  require(gamma >= 0.0, "random_collision_step: gamma must be nonnegative");
  require(rho_beta.rows() == rho.rows() && rho_beta.cols() == rho.cols(),
          "random_collision_step: rho_beta size mismatch");
  const double tm = t + 0.5 * dt;
  CMatrix out = rho;
  split_apply(out, grid, spec, tm, 0.5 * dt, nullptr);
  out = rho_beta + std::exp(-gamma * dt) * (out - rho_beta);
  split_apply(out, grid, spec, tm, 0.5 * dt, nullptr);
  return out;
}

CMatrix vonneumann_step_levels(const CMatrix& rho, const CMatrix& H, double dt, double hbar) {
  require(H.rows() == rho.rows() && H.cols() == rho.cols(), "vonneumann_step_levels: size mismatch");
  const CMatrix u = expm_pade((-kI * dt / hbar) * H).result;
  return u * rho * u.adjoint();
}

CMatrix random_collision_step_levels(const CMatrix& rho, const CMatrix& H, double dt, double gamma,
                                     const CMatrix& rho_beta, double hbar) {
  require(gamma >= 0.0, "random_collision_step_levels: gamma must be nonnegative");
  const CMatrix u = expm_pade((-kI * (0.5 * dt) / hbar) * H).result;
  CMatrix out = u * rho * u.adjoint();
  out = rho_beta + std::exp(-gamma * dt) * (out - rho_beta);
  return u * out * u.adjoint();
}

CMatrix dissipator(const CMatrix& A, const CMatrix& rho) {
  const CMatrix ada = A.adjoint() * A;
  return A * rho * A.adjoint() - 0.5 * (ada * rho + rho * ada);
}

DissipatorSplit dissipator_split(const CMatrix& A) {
  require(A.rows() == A.cols(), "dissipator_split: A must be square");
  const CMatrix ad = A.adjoint();
  const CMatrix ada = ad * A;
  DissipatorSplit s;
  s.dissipative = [A, ad, ada](const CMatrix& r) -> CMatrix {
    return 0.5 * (A * r * ad + ad * r * A - r * ada - ada * r);
  };
  s.hamiltonian_correction = [A, ad](const CMatrix& r) -> CMatrix {
    return 0.5 * (A * r * ad - ad * r * A);
  };
  return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix unvec(const CVector& v, Eigen::Index d) {
  require(v.size() == d * d, "unvec: size mismatch");
  return Eigen::Map<const CMatrix>(v.data(), d, d);
}

CMatrix lindblad_superoperator(const CMatrix& H, const std::vector<CMatrix>& jumps, double hbar) {
  require(H.rows() == H.cols(), "lindblad_superoperator: H must be square");
  const Eigen::Index d = H.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix L = (-kI / hbar) * (kron(id, H) - kron(H.transpose(), id));
  for (const auto& A : jumps) {
    require(A.rows() == d && A.cols() == d, "lindblad_superoperator: jump operator size mismatch");
    const CMatrix ada = A.adjoint() * A;
    L += kron(A.conjugate(), A) - 0.5 * kron(id, ada) - 0.5 * kron(ada.transpose(), id);
  }
  return L;
}

std::vector<CMatrix> lindblad_reference(const CMatrix& rho0, const CMatrix& H,
                                        const std::vector<CMatrix>& jumps,
                                        const std::vector<double>& times, double hbar) {
  const CMatrix L = lindblad_superoperator(H, jumps, hbar);
  const CVector v0 = vec(rho0);
  std::vector<CMatrix> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(unvec(expm_pade(L * t).result * v0, rho0.rows()));
  return out;
}

Uncertainty uncertainty_from_density(const CMatrix& rho, const UniformGrid& grid) {
  require(rho.rows() == grid.n && rho.cols() == grid.n, "uncertainty_from_density: size mismatch");
  const RVector px = rho.diagonal().real();
  CMatrix m = rho;
  CVector col(grid.n);
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < grid.n; ++j) {
      col = m.col(j);
      to_momentum(col, grid);
      m.col(j) = col;
    }
    m.adjointInPlace();
  }
  const RVector pp = m.diagonal().real();
  const double nx = px.sum(), np = pp.sum();
  const double mx = px.dot(grid.x) / nx;
  const double mp = pp.dot(grid.p_fft) / np;
  const double vx = px.dot(grid.x.cwiseAbs2()) / nx - mx * mx;
  const double vp = pp.dot(grid.p_fft.cwiseAbs2()) / np - mp * mp;
  return {std::sqrt(std::max(vx, 0.0)), std::sqrt(std::max(vp, 0.0))};
}

}  // namespace dynkit
