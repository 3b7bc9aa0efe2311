#include "dynkit/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace dynkit {

ClassicalEnsemble make_ensemble(std::vector<double> x, std::vector<double> p, std::vector<double> w) {
  require(x.size() == p.size() && !x.empty(), "make_ensemble: x and p must be nonempty and equal length");
  if (w.empty()) w.assign(x.size(), 1.0 / static_cast<double>(x.size()));
  require(w.size() == x.size(), "make_ensemble: weight length mismatch");
  double total = 0.0;
  for (double wi : w) {
    require(wi >= 0.0, "make_ensemble: weights must be nonnegative");
    total += wi;
  }
  require(std::abs(total - 1.0) <= 1e-12, "make_ensemble: weights must sum to 1");
  return {std::move(x), std::move(p), std::move(w), 0.0, 0.0};
}

ClassicalSpec extend_time_dependent(const TimeDependentClassicalSpec& spec) {
  require(static_cast<bool>(spec.dK) && static_cast<bool>(spec.dU),
          "extend_time_dependent: dK and dU required");
  return {[f = spec.dK](double p, double s_p) { return f(p, s_p); },
          [f = spec.dU](double x, double s_x) { return f(x, s_x); }};
}

namespace {

template <class F>
void for_range(size_t n, int threads, F&& f) {
  const size_t workers = std::clamp<size_t>(static_cast<size_t>(std::max(threads, 1)), 1, std::max<size_t>(n / 1024, 1));
  if (workers == 1) {
    f(size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const size_t chunk = (n + workers - 1) / workers;
  for (size_t b = 0; b < n; b += chunk) pool.emplace_back([&, b] { f(b, std::min(n, b + chunk)); });
  for (auto& th : pool) th.join();
}

}  // namespace

void verlet_step_inplace(ClassicalEnsemble& e, double dt, const ClassicalSpec& spec, int threads) {
  require(dt != 0.0, "verlet_step: dt must be nonzero");
  const double sx0 = e.s_x;
  const double sp1 = e.s_p + 0.5 * dt;
  const double sx1 = e.s_x + dt;
  for_range(e.size(), threads, [&](size_t b, size_t end) {
    for (size_t i = b; i < end; ++i) {
      const double p1 = e.p[i] - spec.dU(e.x[i], sx0) * dt * 0.5;
      const double x1 = e.x[i] + spec.dK(p1, sp1) * dt;
      e.p[i] = p1 - spec.dU(x1, sx1) * dt * 0.5;
      e.x[i] = x1;
    }
  });
  e.s_x = sx1;
  e.s_p = sp1 + 0.5 * dt;
}

ClassicalEnsemble verlet_step(const ClassicalEnsemble& e, double dt, const ClassicalSpec& spec, int threads) {
  ClassicalEnsemble out = e;
  verlet_step_inplace(out, dt, spec, threads);
  return out;
}

PhasePoint multi_dim_verlet_step(const RVector& x, const RVector& p, double dt,
                                 const GradientFunction& gradU, const GradientFunction& gradK) {
  require(x.size() == p.size(), "multi_dim_verlet_step: dimension mismatch");
  const RVector g0 = gradU(x);
  require(g0.size() == x.size(), "multi_dim_verlet_step: gradU dimension mismatch");
  const RVector p1 = p - g0 * (dt * 0.5);
  const RVector v = gradK(p1);
  require(v.size() == x.size(), "multi_dim_verlet_step: gradK dimension mismatch");
  PhasePoint out;
  out.x = x + v * dt;
  const RVector g1 = gradU(out.x);
  require(g1.size() == x.size(), "multi_dim_verlet_step: gradU dimension mismatch");
  out.p = p1 - g1 * (dt * 0.5);
  return out;
}

EnsembleTrace propagate_ensemble(const ClassicalEnsemble& e0, double dt, int steps,
                                 const ClassicalSpec& spec, int stride, int threads) {
  require(steps >= 0 && stride >= 1, "propagate_ensemble: steps >= 0 and stride >= 1 required");
  EnsembleTrace tr;
  ClassicalEnsemble e = e0;
  tr.t.push_back(0.0);
  tr.frames.push_back(e);
  for (int i = 1; i <= steps; ++i) {
    verlet_step_inplace(e, dt, spec, threads);
    if (i % stride == 0 || i == steps) {
      tr.t.push_back(i * dt);
      tr.frames.push_back(e);
    }
  }
  return tr;
}

EhrenfestSeries ehrenfest_series(const EnsembleTrace& trace, const ClassicalSpec& spec) {
  require(!trace.frames.empty(), "ehrenfest_series: empty trace");
  EhrenfestSeries s;
  s.t = trace.t;
  for (const auto& f : trace.frames) {
    double mx = 0.0, mp = 0.0, mf = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
      mx += f.w[i] * f.x[i];
      mp += f.w[i] * f.p[i];
      mf -= f.w[i] * spec.dU(f.x[i], f.s_x);
    }
    s.x_mean.push_back(mx);
    s.p_mean.push_back(mp);
    s.force_mean.push_back(mf);
  }
  return s;
}

}  // namespace dynkit
