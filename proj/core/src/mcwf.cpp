#include "dynkit/mcwf.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "dynkit/matfunc.hpp"

namespace dynkit {

namespace {

int step_count(double dt, double t_max) {
  require(dt > 0.0 && t_max >= 0.0, "mcwf: need dt > 0 and t_max >= 0");
  const double r = t_max / dt;
  const double n = std::round(r);
  require(std::abs(r - n) <= 1e-9 * std::max(1.0, r), "mcwf: t_max/dt must be an integer");
  return static_cast<int>(n);
}

class GridSystem {
 public:
  GridSystem(const WaveFunction& psi0, const HamiltonianSpec& spec,
             const std::vector<StaticPositionJump>& jumps)
      : op_(psi0.grid, spec), dx_(psi0.grid.dx) {
    const UniformGrid& g = psi0.grid;
    CVector extra = CVector::Zero(g.n);
    for (const auto& A : jumps) {
      CVector a(g.n);
      for (int k = 0; k < g.n; ++k) a[k] = A(g.x[k]);
      extra += (-0.5 * kI * spec.hbar) * a.cwiseAbs2().cast<cplx>();
      a_.push_back(std::move(a));
    }
    if (!jumps.empty()) op_.set_extra_potential(extra);
  }

  int channels() const { return static_cast<int>(a_.size()); }
  void step(CVector& psi, double t, double dt) { op_.step(psi, t, dt); }
  double norm2(const CVector& psi) const { return psi.squaredNorm() * dx_; }
  double rate(int k, const CVector& psi) const { return psi.cwiseAbs2().dot(a_[k].cwiseAbs2()) * dx_; }
  CVector jump(int k, const CVector& psi) const { return a_[k].cwiseProduct(psi); }
  CMatrix outer(const CVector& psi) const { return psi * psi.adjoint() * dx_; }

 private:
  SplitOperator op_;
  double dx_;
  std::vector<CVector> a_;
};

class LevelSystem {
 public:
  LevelSystem(const CMatrix& H, const std::vector<CMatrix>& jumps, double dt, double hbar)
      : a_(jumps) {
    require(H.rows() == H.cols(), "mcwf_levels: H must be square");
    CMatrix heff = H;
    for (const auto& A : a_) {
      require(A.rows() == H.rows() && A.cols() == H.cols(), "mcwf_levels: jump operator size mismatch");
      const CMatrix ada = A.adjoint() * A;
      heff -= (0.5 * kI * hbar) * ada;
      ada_.push_back(ada);
    }
    u_ = expm_pade((-kI * dt / hbar) * heff).result;
  }

  int channels() const { return static_cast<int>(a_.size()); }
  void step(CVector& psi, double, double) { psi = u_ * psi; }
  double norm2(const CVector& psi) const { return psi.squaredNorm(); }
  double rate(int k, const CVector& psi) const { return psi.dot(ada_[k] * psi).real(); }
  CVector jump(int k, const CVector& psi) const { return a_[k] * psi; }
  CMatrix outer(const CVector& psi) const { return psi * psi.adjoint(); }

 private:
  std::vector<CMatrix> a_;
  std::vector<CMatrix> ada_;
  CMatrix u_;
};

template <class System>
McwfTrajectory run_trajectory(System& sys, CVector psi, double dt, int steps, std::uint64_t seed,
                              int stride) {
  require(stride >= 1, "mcwf: stride must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto renormalize = [&] {
    const double n2 = sys.norm2(psi);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw NumericalError("mcwf: state norm vanished");
    psi /= std::sqrt(n2);
  };
  renormalize();
  const int nc = sys.channels();
  std::vector<double> r(nc), P(nc, 1.0), lam(nc);
  for (int k = 0; k < nc; ++k) r[k] = uni(rng);
  for (int k = 0; k < nc; ++k) lam[k] = sys.rate(k, psi);

  McwfTrajectory tr;
  tr.t.push_back(0.0);
  tr.states.push_back(psi);
  for (int i = 1; i <= steps; ++i) {
    const double t = (i - 1) * dt;
    sys.step(psi, t, dt);
    renormalize();
    for (int k = 0; k < nc; ++k) {
      const double l = sys.rate(k, psi);
      P[k] *= std::exp(-(l + lam[k]) * dt * 0.5);
      lam[k] = l;
    }
    for (int k = 0; k < nc; ++k) {
      if (P[k] >= r[k]) continue;
      CVector phi = sys.jump(k, psi);
      const double n2 = sys.norm2(phi);
      if (!(n2 > 0.0)) throw NumericalError("mcwf: jump operator annihilated the state");
      psi = phi / std::sqrt(n2);
      tr.jumps.push_back({i * dt, k});
      r[k] = uni(rng);
      P[k] = 1.0;
      for (int q = 0; q < nc; ++q) lam[q] = sys.rate(q, psi);
    }
    if (i % stride == 0 || i == steps) {
      tr.t.push_back(i * dt);
      tr.states.push_back(psi);
    }
  }
  return tr;
}

constexpr int kChunk = 16;

template <class MakeSystem>
EnsembleDensity run_ensemble(MakeSystem make, const CVector& psi0, double dt, int steps, int n_traj,
                             std::uint64_t base_seed, int stride, int threads) {
  require(n_traj >= 1, "mcwf_ensemble: n_traj must be >= 1");
  const int n_chunks = (n_traj + kChunk - 1) / kChunk;
  const int workers = std::clamp(threads, 1, n_chunks);

  auto chunk_sum = [&](int c, EnsembleDensity& acc) {
    auto sys = make();
    for (int i = c * kChunk; i < std::min(n_traj, (c + 1) * kChunk); ++i) {
      McwfTrajectory tr = run_trajectory(sys, psi0, dt, steps, base_seed + static_cast<std::uint64_t>(i), stride);
      if (acc.rho.empty()) {
        acc.t = tr.t;
        for (const auto& s : tr.states) acc.rho.push_back(sys.outer(s));
      } else {
        for (size_t j = 0; j < tr.states.size(); ++j) acc.rho[j] += sys.outer(tr.states[j]);
      }
    }
  };

  EnsembleDensity total;
  std::vector<EnsembleDensity> wave(workers);
  for (int c0 = 0; c0 < n_chunks; c0 += workers) {
    const int nw = std::min(workers, n_chunks - c0);
    for (auto& w : wave) w = {};
    if (nw == 1) {
      chunk_sum(c0, wave[0]);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < nw; ++w) pool.emplace_back([&, w] { chunk_sum(c0 + w, wave[w]); });
      for (auto& th : pool) th.join();
    }
    for (int w = 0; w < nw; ++w) {
      if (total.rho.empty()) {
        total = std::move(wave[w]);
      } else {
        for (size_t j = 0; j < total.rho.size(); ++j) total.rho[j] += wave[w].rho[j];
      }
    }
  }
  for (auto& r : total.rho) r /= static_cast<double>(n_traj);
  return total;
}

}  // namespace

McwfTrajectory mcwf_trajectory(const WaveFunction& psi0, const HamiltonianSpec& spec,
                               const std::vector<StaticPositionJump>& jumps, double dt, double t_max,
                               std::uint64_t seed, int stride) {
  GridSystem sys(psi0, spec, jumps);
  return run_trajectory(sys, psi0.psi, dt, step_count(dt, t_max), seed, stride);
}

McwfTrajectory mcwf_trajectory_levels(const CVector& psi0, const CMatrix& H,
                                      const std::vector<CMatrix>& jumps, double dt, double t_max,
                                      std::uint64_t seed, double hbar, int stride) {
  require(psi0.size() == H.rows(), "mcwf_levels: dimension mismatch");
  LevelSystem sys(H, jumps, dt, hbar);
  return run_trajectory(sys, psi0, dt, step_count(dt, t_max), seed, stride);
}

EnsembleDensity mcwf_ensemble(const WaveFunction& psi0, const HamiltonianSpec& spec,
                              const std::vector<StaticPositionJump>& jumps, double dt, double t_max,
                              int n_traj, std::uint64_t base_seed, int stride, int threads) {
  return run_ensemble([&] { return GridSystem(psi0, spec, jumps); }, psi0.psi, dt,
                      step_count(dt, t_max), n_traj, base_seed, stride, threads);
}

EnsembleDensity mcwf_ensemble_levels(const CVector& psi0, const CMatrix& H,
                                     const std::vector<CMatrix>& jumps, double dt, double t_max,
                                     int n_traj, std::uint64_t base_seed, double hbar, int stride,
                                     int threads) {
  require(psi0.size() == H.rows(), "mcwf_levels: dimension mismatch");
  return run_ensemble([&] { return LevelSystem(H, jumps, dt, hbar); }, psi0, dt,
                      step_count(dt, t_max), n_traj, base_seed, stride, threads);
}

}  // namespace dynkit
