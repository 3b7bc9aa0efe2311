#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dynkit/classical.hpp"
#include "oracles.hpp"

using namespace dynkit;

namespace {

ClassicalSpec oscillator(double omega = 1.0) {
  ClassicalSpec s;
  s.dK = [](double p, double) { return p; };
  s.dU = [omega](double x, double) { return omega * omega * x; };
  return s;
}

ClassicalSpec anharmonic() {
  ClassicalSpec s;
  s.dK = [](double p, double) { return p; };
  s.dU = [](double x, double) { return x * x * x - x; };
  return s;
}

}  // namespace

TEST(Verlet, RejectsBadWeights) {
  EXPECT_THROW(make_ensemble({0.0, 1.0}, {0.0, 1.0}, {0.5, 0.6}), InvalidArgument);
  EXPECT_THROW(make_ensemble({0.0, 1.0}, {0.0}), InvalidArgument);
  auto e = make_ensemble({0.0, 1.0}, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(e.w[0], 0.5);
}

TEST(Verlet, SinglePointEqualsStep) {
  auto e = make_ensemble({1.0}, {0.5});
  auto s = anharmonic();
  auto out = verlet_step(e, 0.1, s);
  const double p1 = 0.5 - (1.0 - 1.0) * 0.05;
  const double x1 = 1.0 + p1 * 0.1;
  const double p2 = p1 - (x1 * x1 * x1 - x1) * 0.05;
  EXPECT_DOUBLE_EQ(out.x[0], x1);
  EXPECT_DOUBLE_EQ(out.p[0], p2);
}

TEST(Verlet, OscillatorEnergyDrift) {
  auto e = make_ensemble({1.0}, {0.0});
  auto s = oscillator();
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    verlet_step_inplace(e, 0.01, s);
    const double E = 0.5 * (e.x[0] * e.x[0] + e.p[0] * e.p[0]);
    worst = std::max(worst, std::abs(E - 0.5));
  }
  EXPECT_LE(worst, 5e-5);
}

TEST(Verlet, RunsOnCircle) {
  std::vector<double> x, p;
  for (int k = 0; k < 16; ++k) {
    x.push_back(std::cos(2 * kPi * k / 16));
    p.push_back(std::sin(2 * kPi * k / 16));
  }
  auto e = make_ensemble(x, p);
  for (int i = 0; i < 1000; ++i) verlet_step_inplace(e, 0.01, oscillator());
  for (size_t k = 0; k < e.size(); ++k) EXPECT_NEAR(std::hypot(e.x[k], e.p[k]), 1.0, 1e-3);
}

TEST(Verlet, SecondOrderEnergyError) {
  auto run = [](double dt) {
    auto e = make_ensemble({1.0}, {0.0});
    double worst = 0.0;
    const int steps = static_cast<int>(std::lround(10.0 / dt));
    for (int i = 0; i < steps; ++i) {
      verlet_step_inplace(e, dt, oscillator());
      worst = std::max(worst, std::abs(0.5 * (e.x[0] * e.x[0] + e.p[0] * e.p[0]) - 0.5));
    }
    return worst;
  };
  const double r = run(0.02) / run(0.01);
  EXPECT_GT(r, 3.5);
  EXPECT_LT(r, 4.5);
}

TEST(Verlet, Reversibility) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  std::vector<double> x(50), p(50);
  for (int i = 0; i < 50; ++i) {
    x[i] = nd(rng);
    p[i] = nd(rng);
  }
  auto e0 = make_ensemble(x, p);
  auto e = e0;
  auto s = anharmonic();
  for (int i = 0; i < 100; ++i) verlet_step_inplace(e, 0.01, s);
  for (int i = 0; i < 100; ++i) verlet_step_inplace(e, -0.01, s);
  for (size_t k = 0; k < e.size(); ++k) {
    EXPECT_NEAR(e.x[k], e0.x[k], 1e-12);
    EXPECT_NEAR(e.p[k], e0.p[k], 1e-12);
  }
}

TEST(Verlet, JacobianDeterminant) {
  // chain rule through the three sub-steps
  auto s = anharmonic();
  const double dt = 0.05, x = 0.7, p = -0.3;
  const double p1 = p - (x * x * x - x) * dt / 2;
  const double x1 = x + p1 * dt;
  const double u2x = 3 * x * x - 1, u2x1 = 3 * x1 * x1 - 1;
  // d(p1)/d(x,p), d(x1)/d(x,p), d(p2)/d(x,p)
  const double a11 = -u2x * dt / 2, a12 = 1.0;
  const double b11 = 1 + a11 * dt, b12 = a12 * dt;
  const double c11 = a11 - u2x1 * dt / 2 * b11, c12 = a12 - u2x1 * dt / 2 * b12;
  EXPECT_NEAR(b11 * c12 - b12 * c11, 1.0, 1e-12);
  // and by central differences on the implementation
  const double h = 1e-5;
  auto step = [&](double xx, double pp) {
    auto e = verlet_step(make_ensemble({xx}, {pp}), dt, s);
    return std::pair<double, double>(e.x[0], e.p[0]);
  };
  auto [xp, pp] = step(x + h, p);
  auto [xm, pm] = step(x - h, p);
  auto [xq, pq] = step(x, p + h);
  auto [xr, pr] = step(x, p - h);
  const double J = ((xp - xm) * (pq - pr) - (xq - xr) * (pp - pm)) / (4 * h * h);
  EXPECT_NEAR(J, 1.0, 1e-8);
  EXPECT_NEAR((xp - xm) / (2 * h), b11, 1e-8);
}

TEST(Verlet, PhaseAreaPreserved) {
  // polygon area of a loop of points after 500 steps of a nonlinear flow
  const int m = 2000;
  std::vector<double> x(m), p(m);
  for (int k = 0; k < m; ++k) {
    x[k] = 0.5 + 0.2 * std::cos(2 * kPi * k / m);
    p[k] = 0.2 * std::sin(2 * kPi * k / m);
  }
  auto area = [](const ClassicalEnsemble& e) {
    double a = 0.0;
    for (size_t k = 0; k < e.size(); ++k) {
      const size_t j = (k + 1) % e.size();
      a += e.x[k] * e.p[j] - e.x[j] * e.p[k];
    }
    return 0.5 * a;
  };
  auto e = make_ensemble(x, p);
  const double a0 = area(e);
  for (int i = 0; i < 500; ++i) verlet_step_inplace(e, 0.01, anharmonic());
  EXPECT_NEAR(area(e), a0, 1e-4 * std::abs(a0));
}

TEST(Verlet, ThreadedMatchesSerial) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  std::vector<double> x(1001), p(1001);
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = nd(rng);
    p[i] = nd(rng);
  }
  auto e = make_ensemble(x, p);
  auto a = propagate_ensemble(e, 0.01, 50, anharmonic(), 10, 1);
  auto b = propagate_ensemble(e, 0.01, 50, anharmonic(), 10, 4);
  ASSERT_EQ(a.frames.size(), b.frames.size());
  EXPECT_EQ(a.frames.back().x, b.frames.back().x);
  EXPECT_EQ(a.frames.back().p, b.frames.back().p);
}

TEST(Autonomized, DrivenOscillatorMatchesRk4) {
  const double omega0 = 1.0, f = 0.5, nu = 1.3;
  TimeDependentClassicalSpec td;
  td.dK = [](double p, double) { return p; };
  td.dU = [=](double x, double t) { return omega0 * omega0 * x - f * std::cos(nu * t); };
  ClassicalSpec s = extend_time_dependent(td);
  auto e = make_ensemble({1.0}, {0.0});
  const double T = 10 * 2 * kPi / omega0;
  const int steps = 200000;
  const double dt = T / steps;
  for (int i = 0; i < steps; ++i) verlet_step_inplace(e, dt, s);
  EXPECT_NEAR(e.s_x, T, 1e-9);
  EXPECT_NEAR(e.s_p, T, 1e-9);

  auto rhs = [=](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd d(2);
    d << y[1], -omega0 * omega0 * y[0] + f * std::cos(nu * t);
    return d;
  };
  Eigen::VectorXd y0(2);
  y0 << 1.0, 0.0;
  Eigen::VectorXd y = oracle::rk4(rhs, y0, 0.0, T, 20000);
  EXPECT_NEAR(e.x[0], y[0], 1e-5);
  EXPECT_NEAR(e.p[0], y[1], 1e-5);
}

TEST(Autonomized, MultiDimAngularMomentum) {
  auto gradU = [](const RVector& q) -> RVector { return q * std::pow(q.squaredNorm(), -1.5); };
  auto gradK = [](const RVector& p) -> RVector { return p; };
  RVector x(2), p(2);
  x << 1.0, 0.0;
  p << 0.0, 1.1;
  const double L0 = x[0] * p[1] - x[1] * p[0];
  for (int i = 0; i < 5000; ++i) {
    auto s = multi_dim_verlet_step(x, p, 0.001, gradU, gradK);
    x = s.x;
    p = s.p;
  }
  EXPECT_NEAR(x[0] * p[1] - x[1] * p[0], L0, 1e-12);
}

TEST(Ehrenfest, MeansForOscillatorEnsemble) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd(0.0, 0.5);
  std::vector<double> x(4000), p(4000);
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = 1.0 + nd(rng);
    p[i] = nd(rng);
  }
  auto e = make_ensemble(x, p);
  double mx = 0, mp = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += e.w[i] * x[i];
    mp += e.w[i] * p[i];
  }
  auto tr = propagate_ensemble(e, 0.01, 300, oscillator(), 30);
  auto es = ehrenfest_series(tr, oscillator());
  for (size_t i = 0; i < es.t.size(); ++i) {
    const double t = es.t[i];
    // linear force: ensemble means follow the classical solution exactly up to Verlet error
    EXPECT_NEAR(es.x_mean[i], mx * std::cos(t) + mp * std::sin(t), 1e-4);
    EXPECT_NEAR(es.p_mean[i], -mx * std::sin(t) + mp * std::cos(t), 1e-4);
    EXPECT_NEAR(es.force_mean[i], -es.x_mean[i], 1e-12);
  }
}
