#include "dynkit/tdse.hpp"

#include <cmath>
#include <utility>

#include "dynkit/matfunc.hpp"

namespace dynkit {

HamiltonianSpec standard_hamiltonian(std::function<double(double)> U, double mass, double hbar) {
  HamiltonianSpec s;
  s.mass = mass;
  s.hbar = hbar;
  s.K = [mass](double, double p) { return p * p / (2.0 * mass); };
  s.U = [U = std::move(U)](double, double x) { return U(x); };
  return s;
}

double WaveFunction::norm() const { return psi.squaredNorm() * grid.dx; }

void WaveFunction::normalize() {
  const double nrm = norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw NumericalError("normalize: zero or non-finite norm");
  psi /= std::sqrt(nrm);
}

double SpinorWaveFunction::norm() const {
  return (psi1.squaredNorm() + psi2.squaredNorm()) * grid.dx;
}

WaveFunction make_wavefunction(const UniformGrid& grid, const std::function<cplx(double)>& f,
                               bool normalize) {
  WaveFunction w{grid, CVector(grid.n)};
  for (int k = 0; k < grid.n; ++k) w.psi[k] = f(grid.x[k]);
  if (normalize) w.normalize();
  return w;
}

SplitOperator::SplitOperator(UniformGrid grid, HamiltonianSpec spec)
    : grid_(std::move(grid)), spec_(std::move(spec)) {
  require_bridge_compatible(grid_.n);
  require(static_cast<bool>(spec_.K) && static_cast<bool>(spec_.U), "SplitOperator: K and U required");
}

void SplitOperator::set_extra_potential(CVector v) {
  require(v.size() == 0 || v.size() == grid_.n, "set_extra_potential: length mismatch");
  extra_ = std::move(v);
  cache_.clear();
}

const SplitOperator::Phases& SplitOperator::phases(double t_mid, cplx dt) {
  for (const auto& ph : cache_)
    if (ph.dt == dt && (spec_.time_independent || ph.t_mid == t_mid)) return ph;
  // Time-independent specs keep every step length in use (three for step_o4).
  if (!spec_.time_independent || cache_.size() >= 4) cache_.clear();
  Phases ph;
  ph.t_mid = t_mid;
  ph.dt = dt;
  ph.half_u.resize(grid_.n);
  ph.kin.resize(grid_.n);
  const cplx a = -kI * dt / (2.0 * spec_.hbar);
  for (int k = 0; k < grid_.n; ++k) {
    cplx u = spec_.U(t_mid, grid_.x[k]);
    if (extra_.size()) u += extra_[k];
    ph.half_u[k] = std::exp(a * u);
    ph.kin[k] = std::exp(2.0 * a * spec_.K(t_mid, grid_.p_fft[k]));
  }
  cache_.push_back(std::move(ph));
  return cache_.back();
}

void SplitOperator::step(CVector& psi, double t, cplx dt) {
  require(psi.size() == grid_.n, "split step: length mismatch");
  const Phases& ph = phases(t + 0.5 * dt.real(), dt);
  psi.array() *= ph.half_u.array();
  to_momentum(psi, grid_);
  psi.array() *= ph.kin.array();
  to_position(psi, grid_);
  psi.array() *= ph.half_u.array();
}

void SplitOperator::step_o4(CVector& psi, double t, cplx dt) {
  const double s = kBandraukS;
  step(psi, t, s * dt);
  step(psi, t + s * dt.real(), (1.0 - 2.0 * s) * dt);
  step(psi, t + (1.0 - s) * dt.real(), s * dt);
}

WaveFunction split_op_step(const WaveFunction& psi, double t, cplx dt, const HamiltonianSpec& spec) {
  SplitOperator op(psi.grid, spec);
  WaveFunction out = psi;
  op.step(out.psi, t, dt);
  return out;
}

WaveFunction split_op_step_o4(const WaveFunction& psi, double t, cplx dt,
                              const HamiltonianSpec& spec) {
  SplitOperator op(psi.grid, spec);
  WaveFunction out = psi;
  op.step_o4(out.psi, t, dt);
  return out;
}

double expect_x(const WaveFunction& w) {
  const RVector prob = w.psi.cwiseAbs2();
  return prob.dot(w.grid.x) / prob.sum();
}

RVector momentum_density(const WaveFunction& w) {
  CVector g = w.psi;
  to_momentum(g, w.grid);
  return g.cwiseAbs2() / (2.0 * kPi * w.grid.hbar);
}

double expect_p(const WaveFunction& w) {
  const RVector rho = momentum_density(w);
  return rho.dot(w.grid.p_fft) / rho.sum();
}

CVector apply_hamiltonian(const CVector& psi, const UniformGrid& grid, const HamiltonianSpec& spec,
                          double t) {
  CVector g = psi;
  to_momentum(g, grid);
  for (int k = 0; k < grid.n; ++k) g[k] *= spec.K(t, grid.p_fft[k]);
  to_position(g, grid);
  for (int k = 0; k < grid.n; ++k) g[k] += spec.U(t, grid.x[k]) * psi[k];
  return g;
}

double expect_energy(const WaveFunction& w, const HamiltonianSpec& spec, double t) {
  const UniformGrid& g = w.grid;
  const RVector px = w.psi.cwiseAbs2();
  const RVector pp = momentum_density(w);
  double eu = 0.0, ek = 0.0;
  for (int k = 0; k < g.n; ++k) {
    eu += spec.U(t, g.x[k]) * px[k];
    ek += spec.K(t, g.p_fft[k]) * pp[k];
  }
  return (eu * g.dx + ek * g.dp()) / (px.sum() * g.dx);
}

namespace {

int step_count(double t0, double t1, double dt) {
  require(dt != 0.0 && std::isfinite(dt), "propagate: dt must be finite and nonzero");
  const double r = (t1 - t0) / dt;
  const double n = std::round(r);
  require(n >= 0.0 && std::abs(r - n) <= 1e-9 * std::max(1.0, std::abs(r)),
          "propagate: (t1 - t0)/dt must be a nonnegative integer");
  return static_cast<int>(n);
}

void record(EvolutionTrace& tr, double t, const WaveFunction& w, const HamiltonianSpec& spec) {
  tr.t.push_back(t);
  tr.x_mean.push_back(expect_x(w));
  tr.p_mean.push_back(expect_p(w));
  if (spec.time_independent) tr.energy.push_back(expect_energy(w, spec, t));
  tr.norm.push_back(w.norm());
}

}  // namespace

PropagationResult propagate(const WaveFunction& psi0, double t0, double t1, double dt,
                            const HamiltonianSpec& spec, const PropagateOptions& opts) {
  require(opts.order == 2 || opts.order == 4, "propagate: order must be 2 or 4");
  require(opts.stride >= 1, "propagate: stride must be >= 1");
  const int steps = step_count(t0, t1, dt);
  if (opts.mask) {
    require(opts.mask->size() == psi0.grid.n, "propagate: mask length mismatch");
    require(opts.mask->minCoeff() >= 0.0 && opts.mask->maxCoeff() <= 1.0,
            "propagate: mask must lie in [0, 1]");
  }
  SplitOperator op(psi0.grid, spec);
  PropagationResult res{psi0, {}};
  record(res.trace, t0, res.psi, spec);
  if (opts.observer) opts.observer(t0, res.psi);
  for (int i = 1; i <= steps; ++i) {
    const double t = t0 + (i - 1) * dt;
    if (opts.order == 2)
      op.step(res.psi.psi, t, dt);
    else
      op.step_o4(res.psi.psi, t, dt);
    if (opts.mask) res.psi.psi.array() *= opts.mask->array().cast<cplx>();
    const double tn = t0 + i * dt;
    if (i % opts.stride == 0 || i == steps) {
      record(res.trace, tn, res.psi, spec);
      if (opts.observer) opts.observer(tn, res.psi);
    }
  }
  return res;
}

WaveFunction apply_absorbing_boundary(const WaveFunction& w, const RVector& mask) {
  require(mask.size() == w.grid.n, "apply_absorbing_boundary: mask length mismatch");
  require(mask.minCoeff() >= 0.0 && mask.maxCoeff() <= 1.0,
          "apply_absorbing_boundary: mask must lie in [0, 1]");
  WaveFunction out = w;
  out.psi.array() *= mask.array().cast<cplx>();
  return out;
}

RVector absorbing_potential(const RVector& mask, double dt, double hbar) {
  require(dt > 0.0, "absorbing_potential: dt must be positive");
  require(mask.size() == 0 || (mask.minCoeff() >= 0.0 && mask.maxCoeff() <= 1.0),
          "absorbing_potential: mask must lie in [0, 1]");
  RVector b(mask.size());
  for (Eigen::Index k = 0; k < mask.size(); ++k) b[k] = -(2.0 * hbar / dt) * std::log(mask[k]);
  return b;
}

RVector make_absorbing_mask(const UniformGrid& grid, double width, double strength, double dt) {
  require(width > 0.0 && width < grid.L, "make_absorbing_mask: width must lie in (0, L)");
  require(strength >= 0.0 && dt > 0.0, "make_absorbing_mask: strength >= 0 and dt > 0 required");
  RVector w(grid.n);
  for (int k = 0; k < grid.n; ++k) {
    const double d = std::abs(grid.x[k]) - (grid.L - width);
    const double b = d > 0.0 ? strength * (d / width) * (d / width) : 0.0;
    w[k] = std::exp(-b * dt / (2.0 * grid.hbar));
  }
  return w;
}

namespace {

void project_out(CVector& psi, const std::vector<WaveFunction>& known, double dx) {
  for (const auto& k : known) psi -= (k.psi.dot(psi) * dx) * k.psi;
}

ImagTimeResult imag_time_loop(const std::vector<WaveFunction>& known, const WaveFunction& guess,
                              double dtau, const HamiltonianSpec& spec, double tol, int max_iter) {
  require(dtau > 0.0, "imaginary time: dtau must be positive");
  require(tol > 0.0, "imaginary time: tol must be positive");
  for (const auto& k : known) require(k.psi.size() == guess.grid.n, "imaginary time: known state size mismatch");
  SplitOperator op(guess.grid, spec);
  ImagTimeResult res{0.0, guess, 0, {}};
  const double dx = guess.grid.dx;
  project_out(res.psi.psi, known, dx);
  res.psi.normalize();
  double e_prev = expect_energy(res.psi, spec);
  res.energy_history.push_back(e_prev);
  const cplx dt(0.0, -dtau);
  for (int it = 1; it <= max_iter; ++it) {
    op.step(res.psi.psi, 0.0, dt);
    project_out(res.psi.psi, known, dx);
    res.psi.normalize();
    const double e = expect_energy(res.psi, spec);
    res.energy_history.push_back(e);
    res.iterations = it;
    if (std::abs(e - e_prev) < tol) {
      res.energy = e;
      return res;
    }
    e_prev = e;
  }
  throw NumericalError("imaginary time: energy did not converge within the iteration cap");
}

}  // namespace

ImagTimeResult imaginary_time_ground(const WaveFunction& guess, double dtau,
                                     const HamiltonianSpec& spec, double tol, int max_iter) {
  return imag_time_loop({}, guess, dtau, spec, tol, max_iter);
}

ImagTimeResult imaginary_time_excited(int n_target, const std::vector<WaveFunction>& known,
                                      const WaveFunction& guess, double dtau,
                                      const HamiltonianSpec& spec, double tol, int max_iter) {
  require(n_target >= 0 && static_cast<size_t>(n_target) == known.size(),
          "imaginary_time_excited: need exactly n_target known states");
  return imag_time_loop(known, guess, dtau, spec, tol, max_iter);
}

GapEstimate fit_gap_window(std::vector<double> tau, std::vector<double> y, double hbar) {
  require(tau.size() == y.size(), "fit_gap_window: length mismatch");
  size_t usable = 0;
  while (usable < y.size() && std::isfinite(y[usable])) ++usable;
  // Below ~1e-12 of the initial magnitude the commutator is rounding noise.
  if (usable > 0) {
    const double floor = y[0] + std::log(1e-12);
    size_t cut = 0;
    while (cut < usable && y[cut] > floor) ++cut;
    usable = cut;
  }
  const size_t width = (usable * 2) / 5;
  if (width < 8)
    throw NumericalError("spectral gap: commutator expectation underflowed before a linear window (" +
                         std::to_string(usable) + " usable samples)");
  const size_t begin = usable - width;
  for (size_t i = begin + 1; i < usable; ++i) {
    if (y[i] > y[i - 1] + 1e-12)
      throw NumericalError("spectral gap: log commutator is not monotone in the fit window at tau = " +
                           std::to_string(tau[i]));
  }
  double mt = 0.0, my = 0.0;
  for (size_t i = begin; i < usable; ++i) {
    mt += tau[i];
    my += y[i];
  }
  mt /= width;
  my /= width;
  double stt = 0.0, sty = 0.0;
  for (size_t i = begin; i < usable; ++i) {
    stt += (tau[i] - mt) * (tau[i] - mt);
    sty += (tau[i] - mt) * (y[i] - my);
  }
  GapEstimate g;
  g.slope = sty / stt;
  g.intercept = my - g.slope * mt;
  g.gap = -hbar * g.slope;
  g.window_begin = static_cast<int>(begin);
  g.tau = std::move(tau);
  g.y = std::move(y);
  return g;
}

GapEstimate spectral_gap_estimate(const WaveFunction& psi0, const GridOperator& O, double dtau,
                                  double tau_max, const HamiltonianSpec& spec) {
  require(dtau > 0.0 && tau_max > dtau, "spectral_gap_estimate: need 0 < dtau < tau_max");
  require(static_cast<bool>(O), "spectral_gap_estimate: observable required");
  const UniformGrid& grid = psi0.grid;
  SplitOperator op(grid, spec);
  WaveFunction w = psi0;
  w.normalize();
  const int steps = static_cast<int>(std::floor(tau_max / dtau + 1e-9));
  std::vector<double> tau, y;
  tau.reserve(steps + 1);
  y.reserve(steps + 1);
  auto sample = [&](double t) {
    const CVector opsi = O(w.psi);
    const CVector hpsi = apply_hamiltonian(w.psi, grid, spec);
    const cplx c = (w.psi.dot(apply_hamiltonian(opsi, grid, spec)) - w.psi.dot(O(hpsi))) * grid.dx;
    tau.push_back(t);
    y.push_back(std::log(std::abs(c)));
  };
  sample(0.0);
  for (int i = 1; i <= steps; ++i) {
    op.step(w.psi, 0.0, cplx(0.0, -dtau));
    w.normalize();
    sample(i * dtau);
  }
  return fit_gap_window(std::move(tau), std::move(y), spec.hbar);
}

GapEstimate spectral_gap_estimate_dense(const CVector& psi0, const CMatrix& H, const CMatrix& O,
                                        double dtau, double tau_max, double hbar) {
  require(H.rows() == H.cols() && O.rows() == H.rows() && O.cols() == H.cols() &&
              psi0.size() == H.rows(),
          "spectral_gap_estimate_dense: dimension mismatch");
  require(dtau > 0.0 && tau_max > dtau, "spectral_gap_estimate_dense: need 0 < dtau < tau_max");
  const CMatrix prop = expm_pade(-(dtau / hbar) * H).result;
  const CMatrix comm = H * O - O * H;
  CVector v = psi0.normalized();
  const int steps = static_cast<int>(std::floor(tau_max / dtau + 1e-9));
  std::vector<double> tau, y;
  for (int i = 0; i <= steps; ++i) {
    if (i > 0) {
      v = prop * v;
      v.normalize();
    }
    tau.push_back(i * dtau);
    y.push_back(std::log(std::abs(v.dot(comm * v))));
  }
  return fit_gap_window(std::move(tau), std::move(y), hbar);
}

namespace {

// P(a; c)(psi1, psi2) = e^{i a c0} [cos(ab) + i sin(ab) (c . sigma)/b] (psi1, psi2)
void pauli_like(cplx& p1, cplx& p2, double a, double c0, double c1, double c2, double c3) {
  const double b = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
  const double ab = a * b;
  const double sb = std::abs(ab) < 1e-8 ? a * (1.0 - ab * ab / 6.0) : std::sin(ab) / b;
  const double co = std::cos(ab);
  const cplx ph = std::polar(1.0, a * c0);
  const cplx q1 = co * p1 + kI * sb * (c3 * p1 + cplx(c1, -c2) * p2);
  const cplx q2 = co * p2 + kI * sb * (cplx(c1, c2) * p1 - c3 * p2);
  p1 = ph * q1;
  p2 = ph * q2;
}

double eval_or_zero(const PhaseFunction& f, double t, double q) { return f ? f(t, q) : 0.0; }

}  // namespace

SpinorWaveFunction pauli_split_op_step(const SpinorWaveFunction& psi, double t, double dt,
                                       const PauliHamiltonianSpec& spec) {
  const UniformGrid& g = psi.grid;
  require_bridge_compatible(g.n);
  require(psi.psi1.size() == g.n && psi.psi2.size() == g.n, "pauli step: length mismatch");
  const double tm = t + 0.5 * dt;
  const double hbar = spec.hbar;
  SpinorWaveFunction out = psi;
  auto position_half = [&] {
    for (int k = 0; k < g.n; ++k) {
      const double x = g.x[k];
      pauli_like(out.psi1[k], out.psi2[k], -dt / (2.0 * hbar), eval_or_zero(spec.U[0], tm, x),
                 eval_or_zero(spec.U[1], tm, x), eval_or_zero(spec.U[2], tm, x),
                 eval_or_zero(spec.U[3], tm, x));
    }
  };
  position_half();
  to_momentum(out.psi1, g);
  to_momentum(out.psi2, g);
  for (int k = 0; k < g.n; ++k) {
    const double p = g.p_fft[k];
    pauli_like(out.psi1[k], out.psi2[k], -dt / hbar, eval_or_zero(spec.K[0], tm, p),
               eval_or_zero(spec.K[1], tm, p), eval_or_zero(spec.K[2], tm, p),
               eval_or_zero(spec.K[3], tm, p));
  }
  to_position(out.psi1, g);
  to_position(out.psi2, g);
  position_half();
  return out;
}

Uncertainty compute_uncertainty(const WaveFunction& w) {
  const RVector px = w.psi.cwiseAbs2();
  const RVector pp = momentum_density(w);
  const double nx = px.sum();
  const double np = pp.sum();
  const double mx = px.dot(w.grid.x) / nx;
  const double mp = pp.dot(w.grid.p_fft) / np;
  const double vx = px.dot(w.grid.x.cwiseAbs2()) / nx - mx * mx;
  const double vp = pp.dot(w.grid.p_fft.cwiseAbs2()) / np - mp * mp;
  return {std::sqrt(std::max(vx, 0.0)), std::sqrt(std::max(vp, 0.0))};
}

}  // namespace dynkit
