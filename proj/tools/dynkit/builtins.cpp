#include "builtins.hpp"

#include <cmath>

namespace dynkit::cli {

namespace {

ScalarFunction polynomial(std::vector<double> c) {
  ScalarFunction s;
  s.f = [c](double x) {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  };
  s.df = [c](double x) {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * c[i];
    return acc;
  };
  return s;
}

}  // namespace

ScalarFunction make_potential(const json& p, double mass) {
  const std::string type = p.at("type").get<std::string>();
  if (type == "free") return {[](double) { return 0.0; }, [](double) { return 0.0; }};
  if (type == "harmonic") {
    const double k = mass * std::pow(p.at("omega").get<double>(), 2);
    const double x0 = p.at("x0").get<double>();
    return {[=](double x) { return 0.5 * k * (x - x0) * (x - x0); }, [=](double x) { return k * (x - x0); }};
  }
  if (type == "quartic") {
    const double a = p.at("a").get<double>(), b = p.at("b").get<double>();
    return {[=](double x) { return a * x * x * x * x + b * x * x; },
            [=](double x) { return 4 * a * x * x * x + 2 * b * x; }};
  }
  if (type == "soft_core") {
    const double d = p.at("depth").get<double>(), a = p.at("a").get<double>();
    return {[=](double x) { return -d / std::sqrt(x * x + a * a); },
            [=](double x) { return d * x / std::pow(x * x + a * a, 1.5); }};
  }
  if (type == "cosine_lattice") {
    const double v0 = p.at("v0").get<double>(), q = 2.0 * kPi / p.at("period").get<double>();
    return {[=](double x) { return v0 * std::cos(q * x); }, [=](double x) { return -v0 * q * std::sin(q * x); }};
  }
  return polynomial(p.at("coefficients").get<std::vector<double>>());
}

ScalarFunction make_kinetic(const json& k, double mass) {
  if (k.at("type") == "standard")
    return {[mass](double p) { return 0.5 * p * p / mass; }, [mass](double p) { return p / mass; }};
  return polynomial(k.at("coefficients").get<std::vector<double>>());
}

Drive make_drive(const json& h) {
  Drive d;
  if (!h.contains("drive")) return d;
  const json& b = h.at("drive");
  d.active = true;
  d.amplitude = b.at("amplitude").get<double>();
  d.omega = b.at("omega").get<double>();
  d.phase = b.at("phase").get<double>();
  return d;
}

UniformGrid make_grid_block(const json& g) {
  return make_grid(g.at("L").get<double>(), static_cast<int>(g.at("n").get<long long>()), g.at("hbar").get<double>());
}

HamiltonianSpec make_hamiltonian(const json& h, double hbar) {
  const double mass = h.at("mass").get<double>();
  const ScalarFunction U = make_potential(h.at("potential"), mass);
  const ScalarFunction K = make_kinetic(h.at("kinetic"), mass);
  const Drive drive = make_drive(h);
  HamiltonianSpec s;
  s.hbar = hbar;
  s.mass = mass;
  s.K = [k = K.f](double, double p) { return k(p); };
  if (drive.active) {
    s.time_independent = false;
    s.U = [u = U.f, drive](double t, double x) { return u(x) - x * drive.force(t); };
  } else {
    s.U = [u = U.f](double, double x) { return u(x); };
  }
  return s;
}

ClassicalSpec make_classical_spec(const json& h) {
  const double mass = h.at("mass").get<double>();
  const ScalarFunction U = make_potential(h.at("potential"), mass);
  const ScalarFunction K = make_kinetic(h.at("kinetic"), mass);
  const Drive drive = make_drive(h);
  if (!drive.active) {
    ClassicalSpec s;
    s.dK = [dk = K.df](double p, double) { return dk(p); };
    s.dU = [du = U.df](double x, double) { return du(x); };
    return s;
  }
  TimeDependentClassicalSpec td;
  td.dK = [dk = K.df](double p, double) { return dk(p); };
  td.dU = [du = U.df, drive](double x, double t) { return du(x) - drive.force(t); };
  return extend_time_dependent(td);
}

double hermite_function(int n, double xi) {
  double h0 = std::pow(kPi, -0.25) * std::exp(-0.5 * xi * xi);
  if (n == 0) return h0;
  double h1 = std::sqrt(2.0) * xi * h0;
  for (int k = 2; k <= n; ++k) {
    const double h2 = std::sqrt(2.0 / k) * xi * h1 - std::sqrt((k - 1.0) / k) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

WaveFunction make_initial(const json& init, const UniformGrid& grid, double mass) {
  const double hbar = grid.hbar;
  if (init.at("type") == "gaussian") {
    const double x0 = init.at("x0").get<double>(), p0 = init.at("p0").get<double>();
    const double s = init.at("sigma").get<double>();
    return make_wavefunction(grid, [=](double x) {
      return std::exp(-(x - x0) * (x - x0) / (4 * s * s)) * std::polar(1.0, p0 * x / hbar);
    });
  }
  const int n = static_cast<int>(init.at("n").get<long long>());
  const double scale = std::sqrt(mass * init.at("omega").get<double>() / hbar);
  const double x0 = init.at("x0").get<double>();
  return make_wavefunction(grid, [=](double x) { return cplx(hermite_function(n, scale * (x - x0))); });
}

CMatrix parse_matrix(const json& m) {
  const Eigen::Index d = static_cast<Eigen::Index>(m.size());
  CMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = cplx(m[i][j][0].get<double>(), m[i][j][1].get<double>());
  return out;
}

CVector parse_vector(const json& v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = cplx(v[i][0].get<double>(), v[i][1].get<double>());
  return out;
}

}  // namespace dynkit::cli
