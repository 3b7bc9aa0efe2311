#pragma once

#include <functional>
#include <vector>

#include "dynkit/common.hpp"

namespace dynkit {

// Weighted phase-space points, structure of arrays. s_x and s_p are the
// clock coordinates of an autonomized system (unused by autonomous specs).
struct ClassicalEnsemble {
  std::vector<double> x;
  std::vector<double> p;
  std::vector<double> w;
  double s_x = 0.0;
  double s_p = 0.0;

  size_t size() const { return x.size(); }
};

ClassicalEnsemble make_ensemble(std::vector<double> x, std::vector<double> p,
                                std::vector<double> w = {});

// dK/dp(p, s_p) and dU/dx(x, s_x).
struct ClassicalSpec {
  std::function<double(double p, double s_p)> dK;
  std::function<double(double x, double s_x)> dU;
};

struct TimeDependentClassicalSpec {
  std::function<double(double p, double t)> dK;
  std::function<double(double x, double t)> dU;
};

// K' reads s_p and U' reads s_x, with ds_x/dt = ds_p/dt = 1.
ClassicalSpec extend_time_dependent(const TimeDependentClassicalSpec& spec);

// p1 = p - U'(x) dt/2; x1 = x + K'(p1) dt; p2 = p1 - U'(x1) dt/2.
ClassicalEnsemble verlet_step(const ClassicalEnsemble& e, double dt, const ClassicalSpec& spec,
                              int threads = 1);
void verlet_step_inplace(ClassicalEnsemble& e, double dt, const ClassicalSpec& spec, int threads = 1);

using GradientFunction = std::function<RVector(const RVector&)>;

struct PhasePoint {
  RVector x;
  RVector p;
};

PhasePoint multi_dim_verlet_step(const RVector& x, const RVector& p, double dt,
                                 const GradientFunction& gradU, const GradientFunction& gradK);

struct EnsembleTrace {
  std::vector<double> t;
  std::vector<ClassicalEnsemble> frames;
};

EnsembleTrace propagate_ensemble(const ClassicalEnsemble& e0, double dt, int steps,
                                 const ClassicalSpec& spec, int stride = 1, int threads = 1);

struct EhrenfestSeries {
  std::vector<double> t;
  std::vector<double> x_mean;
  std::vector<double> p_mean;
  std::vector<double> force_mean;  // <-U'(x)>
};

EhrenfestSeries ehrenfest_series(const EnsembleTrace& trace, const ClassicalSpec& spec);

}  // namespace dynkit
