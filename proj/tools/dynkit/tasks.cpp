#include "tasks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "builtins.hpp"
#include "config.hpp"
#include "dynkit/classical.hpp"
#include "dynkit/matfunc.hpp"
#include "dynkit/mcwf.hpp"
#include "dynkit/open_systems.hpp"
#include "dynkit/stationary.hpp"
#include "dynkit/tdse.hpp"
#include "dynkit/wigner.hpp"

namespace dynkit::cli {

namespace {

const double kNan = std::nan("");

int as_int(const json& j) { return static_cast<int>(j.get<long long>()); }

int step_total(const json& b) {
  return static_cast<int>(std::llround(b.at("t_max").get<double>() / b.at("dt").get<double>()));
}

Axis x_axis(const UniformGrid& g, const std::string& name = "x") { return {name, -g.L, g.dx, g.n}; }

Axis index_axis(const std::string& name, long long n) { return {name, 0.0, 1.0, n}; }

CMatrix column(const CVector& v) { return v; }

// <x>, <p>, <H>, Tr for grid density matrices.
class DensityObservables {
 public:
  DensityObservables(const UniformGrid& g, const HamiltonianSpec& spec) : g_(g), spec_(spec) {
    HamiltonianSpec pspec;
    pspec.hbar = g.hbar;
    pspec.K = [](double, double p) { return p; };
    pspec.U = [](double, double) { return 0.0; };
    P_ = build_spectral_hamiltonian(g, pspec);
    if (spec.time_independent) H_ = build_spectral_hamiltonian(g, spec);
  }

  std::vector<double> row(double t, const CMatrix& rho) const {
    double x = 0.0;
    for (int k = 0; k < g_.n; ++k) x += g_.x[k] * rho(k, k).real();
    const double tr = rho.trace().real();
    const double p = (P_.transpose().cwiseProduct(rho)).sum().real();
    const double e = spec_.time_independent ? (H_.transpose().cwiseProduct(rho)).sum().real() : kNan;
    return {t, x / tr, p / tr, spec_.time_independent ? e / tr : kNan, tr};
  }

 private:
  UniformGrid g_;
  HamiltonianSpec spec_;
  CMatrix P_;
  CMatrix H_;
};

const std::vector<std::string> kTraceHeader{"t", "x_mean", "p_mean", "energy", "norm"};

const json kDensityConvention = {{"density", "rho[k][l] = rho(x_k, x_l) * dx, trace 1"}};

void write_density(OutputDir& out, const UniformGrid& g, const CMatrix& rho) {
  write_field(out, "rho", rho, {x_axis(g, "x"), x_axis(g, "x_prime")}, kDensityConvention);
}

void write_levels_density(OutputDir& out, const CMatrix& rho) {
  write_field(out, "rho", rho, {index_axis("level", rho.rows()), index_axis("level", rho.cols())});
}

void write_populations(OutputDir& out, const std::vector<double>& t, const std::vector<CMatrix>& rho) {
  std::vector<std::string> header{"t"};
  const Eigen::Index d = rho.empty() ? 0 : rho.front().rows();
  for (Eigen::Index i = 0; i < d; ++i) header.push_back("p" + std::to_string(i));
  header.push_back("trace");
  CsvWriter csv(out, "populations.csv", header);
  for (size_t i = 0; i < t.size(); ++i) {
    std::vector<double> r{t[i]};
    for (Eigen::Index k = 0; k < d; ++k) r.push_back(rho[i](k, k).real());
    r.push_back(rho[i].trace().real());
    csv.row(r);
  }
  csv.close();
}

// ---------------------------------------------------------------- eigen

json task_eigen(const json& cfg, OutputDir& out) {
  const json& b = cfg.at("eigen");
  const UniformGrid g = make_grid_block(cfg.at("grid"));
  const json& h = cfg.at("hamiltonian");
  const int want = std::min(as_int(b.at("n_states")), g.n);
  RVector energies;
  CMatrix states;
  const std::string method = b.at("method");
  const std::string scheme = b.at("scheme");
  if (method == "fd" && scheme != "central") {
    // triangular stencil: the spectrum is the diagonal
    const ScalarFunction U = make_potential(h.at("potential"), h.at("mass").get<double>());
    const FdScheme s = scheme == "forward" ? FdScheme::forward : FdScheme::backward;
    CMatrix H = build_fd_hamiltonian(g, U.f, s, h.at("mass").get<double>());
    std::vector<double> d(g.n);
    for (int k = 0; k < g.n; ++k) d[k] = H(k, k).real();
    std::sort(d.begin(), d.end());
    energies = Eigen::Map<RVector>(d.data(), g.n);
  } else {
    CMatrix H;
    if (method == "fd") {
      const ScalarFunction U = make_potential(h.at("potential"), h.at("mass").get<double>());
      H = build_fd_hamiltonian(g, U.f, FdScheme::central, h.at("mass").get<double>());
    } else {
      H = build_spectral_hamiltonian(g, make_hamiltonian(h, g.hbar));
    }
    SpectrumResult r = eigensolve(H, g.dx);
    energies = r.energies;
    states = r.states.leftCols(want);
  }
  CsvWriter csv(out, "energies.csv", {"index", "E"});
  for (int i = 0; i < want; ++i) csv.row({static_cast<double>(i), energies[i]});
  csv.close();
  if (b.at("save_states").get<bool>() && states.size() > 0)
    write_field(out, "states", states, {x_axis(g), index_axis("state", want)},
                {{"normalization", "sum |psi|^2 dx = 1 per column"}});
  return {{"ground_energy", energies[0]}};
}

// ---------------------------------------------------------------- bands

json task_bands(const json& cfg, OutputDir& out, int threads) {
  const json& b = cfg.at("bands");
  const double a = b.at("a").get<double>();
  HamiltonianSpec cell = make_hamiltonian(cfg.at("hamiltonian"), b.at("hbar").get<double>());
  const std::vector<double> k = ring_quasimomenta(a, as_int(b.at("n_k")));
  RMatrix E = band_structure(cell, a, as_int(b.at("n_basis")), k, as_int(b.at("n_bands")), threads);
  CsvWriter csv(out, "bands.csv", {"k", "n", "E"});
  for (size_t i = 0; i < k.size(); ++i)
    for (Eigen::Index n = 0; n < E.cols(); ++n) csv.row({k[i], static_cast<double>(n), E(static_cast<Eigen::Index>(i), n)});
  csv.close();
  return {{"band_minimum", E.col(0).minCoeff()}};
}

// ---------------------------------------------------------------- propagate

void write_trace(OutputDir& out, const EvolutionTrace& tr) {
  CsvWriter csv(out, "trace.csv", kTraceHeader);
  for (size_t i = 0; i < tr.t.size(); ++i)
    csv.row({tr.t[i], tr.x_mean[i], tr.p_mean[i], tr.energy.empty() ? kNan : tr.energy[i], tr.norm[i]});
  csv.close();
}

json task_propagate(const json& cfg, OutputDir& out) {
  const json& b = cfg.at("propagate");
  const UniformGrid g = make_grid_block(cfg.at("grid"));
  const HamiltonianSpec spec = make_hamiltonian(cfg.at("hamiltonian"), g.hbar);
  const WaveFunction psi0 = make_initial(b.at("initial"), g, spec.mass);
  const double dt = b.at("dt").get<double>(), t_max = b.at("t_max").get<double>();
  PropagateOptions o;
  o.order = as_int(b.at("order"));
  o.stride = as_int(b.at("stride"));
  if (b.contains("absorbing"))
    o.mask = make_absorbing_mask(g, b["absorbing"]["width"].get<double>(), b["absorbing"]["strength"].get<double>(), dt);
  PropagationResult r = propagate(psi0, 0.0, t_max, dt, spec, o);
  write_trace(out, r.trace);
  if (b.at("save_final").get<bool>()) write_field(out, "psi", column(r.psi.psi), {x_axis(g), index_axis("component", 1)});
  json summary{{"final_norm", r.trace.norm.back()}};
  if (b.contains("spectrum")) {
    SpectrumOptions so;
    so.pad_factor = as_int(b["spectrum"]["pad_factor"]);
    so.hann = b["spectrum"]["window"] == "hann";
    so.order = o.order;
    SpectralDensity s = spectrum_via_propagation(psi0, spec, t_max, dt, so);
    CsvWriter csv(out, "spectrum.csv", {"E", "density"});
    for (Eigen::Index i = 0; i < s.energies.size(); ++i) csv.row({s.energies[i], s.density[i]});
    csv.close();
    json peaks = json::array();
    for (const auto& pk : find_spectral_peaks(s)) peaks.push_back(pk.energy);
    summary["spectral_peaks"] = peaks;
    summary["spectral_resolution"] = s.resolution;
  }
  return summary;
}

// ---------------------------------------------------------------- imagtime

json task_imagtime(const json& cfg, OutputDir& out) {
  const json& b = cfg.at("imagtime");
  const UniformGrid g = make_grid_block(cfg.at("grid"));
  const HamiltonianSpec spec = make_hamiltonian(cfg.at("hamiltonian"), g.hbar);
  const WaveFunction guess = make_initial(b.at("initial"), g, spec.mass);
  const double dtau = b.at("dtau").get<double>(), tol = b.at("tol").get<double>();
  const int max_iter = as_int(b.at("max_iter"));
  std::vector<WaveFunction> known;
  std::vector<double> energies;
  json iterations = json::array();
  for (int n = 0; n < as_int(b.at("n_states")); ++n) {
    ImagTimeResult r = n == 0 ? imaginary_time_ground(guess, dtau, spec, tol, max_iter)
                              : imaginary_time_excited(n, known, guess, dtau, spec, tol, max_iter);
    known.push_back(r.psi);
    energies.push_back(r.energy);
    iterations.push_back(r.iterations);
  }
  CsvWriter csv(out, "energies.csv", {"index", "E"});
  for (size_t i = 0; i < energies.size(); ++i) csv.row({static_cast<double>(i), energies[i]});
  csv.close();
  if (b.at("save_states").get<bool>()) {
    CMatrix s(g.n, static_cast<Eigen::Index>(known.size()));
    for (size_t i = 0; i < known.size(); ++i) s.col(static_cast<Eigen::Index>(i)) = known[i].psi;
    write_field(out, "states", s, {x_axis(g), index_axis("state", s.cols())},
                {{"normalization", "sum |psi|^2 dx = 1 per column"}});
  }
  return {{"ground_energy", energies[0]}, {"iterations", iterations}};
}

// ---------------------------------------------------------------- gap

json task_gap(const json& cfg, OutputDir& out) {
  const json& b = cfg.at("gap");
  const UniformGrid g = make_grid_block(cfg.at("grid"));
  const HamiltonianSpec spec = make_hamiltonian(cfg.at("hamiltonian"), g.hbar);
  const WaveFunction psi0 = make_initial(b.at("initial"), g, spec.mass);
  const std::string obs = b.at("observable");
  GridOperator O;
  if (obs == "x") {
    const CVector x = g.x.cast<cplx>();
    O = [x](const CVector& v) -> CVector { return x.cwiseProduct(v); };
  } else if (obs == "x2") {
    const CVector x2 = g.x.cwiseAbs2().cast<cplx>();
    O = [x2](const CVector& v) -> CVector { return x2.cwiseProduct(v); };
  } else {
    O = [g](const CVector& v) -> CVector {
      CVector w = v;
      to_momentum(w, g);
      w = w.cwiseProduct(g.p_fft.cast<cplx>());
      to_position(w, g);
      return w;
    };
  }
  GapEstimate r = spectral_gap_estimate(psi0, O, b.at("dtau").get<double>(), b.at("tau_max").get<double>(), spec);
  CsvWriter csv(out, "gap.csv", {"tau", "log_abs_commutator"});
  for (size_t i = 0; i < r.tau.size(); ++i) csv.row({r.tau[i], r.y[i]});
  csv.close();
  CsvWriter fit(out, "gap_fit.csv", {"gap", "slope", "intercept", "window_begin"});
  fit.row({r.gap, r.slope, r.intercept, static_cast<double>(r.window_begin)});
  fit.close();
  return {{"gap", r.gap}};
}

// ---------------------------------------------------------------- classical

json task_classical(const json& cfg, OutputDir& out, int threads) {
  const json& b = cfg.at("classical");
  const json& h = cfg.at("hamiltonian");
  const json& e = b.at("ensemble");
  ClassicalEnsemble e0;
  if (e.at("type") == "gaussian") {
    const int n = as_int(e.at("samples"));
    std::mt19937_64 rng(e.at("seed").get<std::uint64_t>());
    std::normal_distribution<double> nx(e.at("x0").get<double>(), e.at("sigma_x").get<double>());
    std::normal_distribution<double> np(e.at("p0").get<double>(), e.at("sigma_p").get<double>());
    std::vector<double> x(n), p(n);
    for (int i = 0; i < n; ++i) {
      x[i] = nx(rng);
      p[i] = np(rng);
    }
    e0 = make_ensemble(std::move(x), std::move(p));
  } else {
    e0 = make_ensemble(e.at("x").get<std::vector<double>>(), e.at("p").get<std::vector<double>>(),
                       e.contains("w") ? e.at("w").get<std::vector<double>>() : std::vector<double>{});
  }
  const ClassicalSpec spec = make_classical_spec(h);
  const double mass = h.at("mass").get<double>();
  const ScalarFunction U = make_potential(h.at("potential"), mass);
  const ScalarFunction K = make_kinetic(h.at("kinetic"), mass);
  const Drive drive = make_drive(h);
  EnsembleTrace tr = propagate_ensemble(e0, b.at("dt").get<double>(), as_int(b.at("steps")), spec,
                                        as_int(b.at("stride")), threads);
  CsvWriter csv(out, "trace.csv", kTraceHeader);
  double e_start = 0.0, e_end = 0.0;
  for (size_t i = 0; i < tr.t.size(); ++i) {
    const ClassicalEnsemble& f = tr.frames[i];
    double xm = 0, pm = 0, en = 0, w = 0;
    for (size_t k = 0; k < f.size(); ++k) {
      xm += f.w[k] * f.x[k];
      pm += f.w[k] * f.p[k];
      en += f.w[k] * (K.f(f.p[k]) + U.f(f.x[k]) - f.x[k] * drive.force(tr.t[i]));
      w += f.w[k];
    }
    csv.row({tr.t[i], xm / w, pm / w, en / w, w});
    if (i == 0) e_start = en / w;
    e_end = en / w;
  }
  csv.close();
  return {{"energy_change", e_end - e_start}};
}

// ---------------------------------------------------------------- lindblad

json task_lindblad(const json& cfg, OutputDir& out) {
  const json& b = cfg.at("lindblad");
  const double dt = b.at("dt").get<double>();
  const int steps = step_total(b);
  const int stride = as_int(b.at("stride"));
  if (b.at("system") == "levels") {
    const json& lv = b.at("levels");
    const CMatrix H = parse_matrix(lv.at("H"));
    std::vector<CMatrix> jumps;
    for (const auto& j : lv.at("jumps")) jumps.push_back(parse_matrix(j));
    CVector psi0 = parse_vector(lv.at("psi0"));
    psi0.normalize();
    std::vector<double> times;
    for (int i = 0; i <= steps; ++i)
      if (i % stride == 0 || i == steps) times.push_back(i * dt);
    auto rho = lindblad_reference(psi0 * psi0.adjoint(), H, jumps, times);
    write_populations(out, times, rho);
    if (b.at("save_final").get<bool>()) write_levels_density(out, rho.back());
    return {{"final_trace", rho.back().trace().real()}};
  }
  const UniformGrid g = make_grid_block(cfg.at("grid"));
  const HamiltonianSpec spec = make_hamiltonian(cfg.at("hamiltonian"), g.hbar);
  CMatrix rho = pure_density(make_initial(b.at("initial"), g, spec.mass));
  const std::string model = b.at("model");
  PositionJump A;
  CMatrix rho_beta;
  double gamma = 0.0;
  if (model == "lindblad") {
    const double s = std::sqrt(b["jump"]["gamma"].get<double>()), x0 = b["jump"]["x0"].get<double>();
    A = [s, x0](double, double x) { return cplx(s * (x - x0)); };
  } else if (model == "random_collision") {
    gamma = b["collision"]["gamma"].get<double>();
    rho_beta = gibbs_density(build_spectral_hamiltonian(g, spec), b["collision"]["beta"].get<double>());
  }
  DensityObservables obs(g, spec);
  CsvWriter csv(out, "trace.csv", kTraceHeader);
  csv.row(obs.row(0.0, rho));
  for (int i = 1; i <= steps; ++i) {
    const double t = (i - 1) * dt;
    if (model == "lindblad") rho = lindblad_x_step(rho, g, t, dt, spec, A);
    else if (model == "random_collision") rho = random_collision_step(rho, g, t, dt, spec, gamma, rho_beta);
    else rho = vonneumann_step(rho, g, t, dt, spec);
    if (i % stride == 0 || i == steps) csv.row(obs.row(i * dt, rho));
  }
  csv.close();
  if (b.at("save_final").get<bool>()) write_density(out, g, rho);
  json summary{{"final_trace", rho.trace().real()}};
  if (model == "random_collision") summary["distance_to_gibbs"] = trace_norm(rho - rho_beta);
  return summary;
}

// ---------------------------------------------------------------- mcwf

json task_mcwf(const json& cfg, OutputDir& out, int threads) {
  const json& b = cfg.at("mcwf");
  const double dt = b.at("dt").get<double>(), t_max = b.at("t_max").get<double>();
  const int stride = as_int(b.at("stride")), n_traj = as_int(b.at("trajectories"));
  const auto seed = b.at("seed").get<std::uint64_t>();
  if (b.at("system") == "levels") {
    const json& lv = b.at("levels");
    const CMatrix H = parse_matrix(lv.at("H"));
    std::vector<CMatrix> jumps;
    for (const auto& j : lv.at("jumps")) jumps.push_back(parse_matrix(j));
    CVector psi0 = parse_vector(lv.at("psi0"));
    psi0.normalize();
    EnsembleDensity e = mcwf_ensemble_levels(psi0, H, jumps, dt, t_max, n_traj, seed, 1.0, stride, threads);
    write_populations(out, e.t, e.rho);
    if (b.at("save_final").get<bool>()) write_levels_density(out, e.rho.back());
    return {{"final_trace", e.rho.back().trace().real()}};
  }
  const UniformGrid g = make_grid_block(cfg.at("grid"));
  const HamiltonianSpec spec = make_hamiltonian(cfg.at("hamiltonian"), g.hbar);
  const WaveFunction psi0 = make_initial(b.at("initial"), g, spec.mass);
  std::vector<StaticPositionJump> jumps;
  for (const auto& j : b.at("jumps")) {
    const double s = std::sqrt(j.at("gamma").get<double>()), x0 = j.at("x0").get<double>();
    jumps.push_back([s, x0](double x) { return cplx(s * (x - x0)); });
  }
  EnsembleDensity e = mcwf_ensemble(psi0, spec, jumps, dt, t_max, n_traj, seed, stride, threads);
  DensityObservables obs(g, spec);
  CsvWriter csv(out, "trace.csv", kTraceHeader);
  for (size_t i = 0; i < e.t.size(); ++i) csv.row(obs.row(e.t[i], e.rho[i]));
  csv.close();
  if (b.at("save_final").get<bool>()) write_density(out, g, e.rho.back());
  return {{"final_trace", e.rho.back().trace().real()}};
}

// ---------------------------------------------------------------- wigner

json task_wigner(const json& cfg, OutputDir& out) {
  const json& b = cfg.at("wigner");
  const json& h = cfg.at("hamiltonian");
  const UniformGrid g = make_grid_block(cfg.at("grid"));
  const double mass = h.at("mass").get<double>();
  MoleculeSpec m;
  m.hbar = g.hbar;
  m.K = make_kinetic(h.at("kinetic"), mass).f;
  m.Vg = make_potential(h.at("potential"), mass).f;
  m.Ve = make_potential(b.at("excited"), mass).f;
  const json& d = b.at("dipole");
  if (d.at("type") == "constant") {
    const double mu = d.at("mu").get<double>();
    m.mu_eg = [mu](double) { return mu; };
  } else {
    const double mu0 = d.at("mu0").get<double>(), mu1 = d.at("mu1").get<double>();
    m.mu_eg = [mu0, mu1](double x) { return mu0 + mu1 * x; };
  }
  const json pulse = b.value("pulse", json{{"amplitude", 0.0}, {"omega", 1.0}, {"phase", 0.0}, {"t0", 0.0}});
  const double amp = pulse.at("amplitude").get<double>(), om = pulse.at("omega").get<double>();
  const double ph = pulse.at("phase").get<double>(), t0 = pulse.at("t0").get<double>();
  const double width = pulse.contains("width") ? pulse.at("width").get<double>() : 0.0;
  m.E = [=](double t) {
    const double env = width > 0.0 ? std::exp(-(t - t0) * (t - t0) / (2 * width * width)) : 1.0;
    return amp * env * std::cos(om * (t - t0) + ph);
  };

  const WignerFunction W0 = wigner_from_density(pure_density(make_initial(b.at("initial"), g, mass)), g);
  const std::vector<Axis> axes{x_axis(g), {"p", W0.p[0], W0.dp, g.n}};
  const json conv{{"wigner", "W(x, p), rows x, columns p, integrates to 1 with dx dp"}};
  write_field(out, "wigner_initial", W0.values, axes, conv);

  TwoStateWigner W = make_two_state(W0);
  const MoyalSplitting split = b.at("splitting") == "strang" ? MoyalSplitting::strang : MoyalSplitting::lie;
  const double dt = b.at("dt").get<double>();
  const int steps = step_total(b), stride = as_int(b.at("stride"));
  auto pops = [&](double t) {
    const double a = W.dp * g.dx;
    return std::vector<double>{t, W.Wg.sum() * a, W.We.sum() * a, W.imag_residue};
  };
  CsvWriter csv(out, "populations.csv", {"t", "p_ground", "p_excited", "imag_residue"});
  csv.row(pops(0.0));
  double worst_residue = 0.0;
  for (int i = 1; i <= steps; ++i) {
    W = moyal_two_state_step(W, (i - 1) * dt, dt, m, split);
    worst_residue = std::max(worst_residue, W.imag_residue);
    if (i % stride == 0 || i == steps) csv.row(pops(i * dt));
  }
  csv.close();
  write_field(out, "wigner_ground", W.Wg, axes, conv);
  write_field(out, "wigner_excited", W.We, axes, conv);
  write_field(out, "wigner_coherence", W.Wge, axes, conv);
  return {{"final_population", (W.Wg.sum() + W.We.sum()) * W.dp * g.dx}, {"max_imag_residue", worst_residue}};
}

// ---------------------------------------------------------------- expm-bench

CMatrix bench_hermitian(int d, double norm1_target, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = cplx(nd(rng), nd(rng));
  CMatrix hm = 0.5 * (a + a.adjoint());
  return hm * (norm1_target / norm1(hm));
}

json task_expm_bench(const json& cfg, OutputDir& out) {
  const json& b = cfg.at("expm-bench");
  std::mt19937_64 rng(b.at("seed").get<std::uint64_t>());
  const double tol = b.at("taylor_tol").get<double>();
  CsvWriter csv(out, "expm.csv",
                {"dim", "norm", "pade_squarings", "pade_multiplications", "taylor_terms", "taylor_multiplications",
                 "rel_diff_pade", "rel_diff_taylor"});
  json timings = json::array();
  using clock = std::chrono::steady_clock;
  for (const auto& dj : b.at("dims")) {
    for (const auto& nj : b.at("norms")) {
      const int d = as_int(dj);
      const double nrm = nj.get<double>();
      const CMatrix a = bench_hermitian(d, nrm, rng);
      const auto t0 = clock::now();
      const CMatrix ref = func_of_hermitian(a, [](double l) { return cplx(std::exp(l)); });
      const auto t1 = clock::now();
      const ExpmReport p = expm_pade(a);
      const auto t2 = clock::now();
      const ExpmReport t = expm_taylor(a, tol);
      const auto t3 = clock::now();
      const double s = ref.cwiseAbs().maxCoeff();
      csv.row({static_cast<double>(d), nrm, static_cast<double>(p.squarings),
               static_cast<double>(p.matrix_multiplications), static_cast<double>(t.terms),
               static_cast<double>(t.matrix_multiplications), (p.result - ref).cwiseAbs().maxCoeff() / s,
               (t.result - ref).cwiseAbs().maxCoeff() / s});
      const auto sec = [](auto a0, auto a1) { return std::chrono::duration<double>(a1 - a0).count(); };
      timings.push_back({{"dim", d}, {"norm", nrm}, {"eigen_s", sec(t0, t1)}, {"pade_s", sec(t1, t2)},
                         {"taylor_s", sec(t2, t3)}});
    }
  }
  csv.close();
  return {{"timings", timings}};
}

}  // namespace

json run_task(const json& cfg, OutputDir& out, int threads) {
  const std::string task = cfg.at("task");
  if (task == "eigen") return task_eigen(cfg, out);
  if (task == "bands") return task_bands(cfg, out, threads);
  if (task == "propagate") return task_propagate(cfg, out);
  if (task == "imagtime") return task_imagtime(cfg, out);
  if (task == "gap") return task_gap(cfg, out);
  if (task == "classical") return task_classical(cfg, out, threads);
  if (task == "lindblad") return task_lindblad(cfg, out);
  if (task == "mcwf") return task_mcwf(cfg, out, threads);
  if (task == "wigner") return task_wigner(cfg, out);
  return task_expm_bench(cfg, out);
}

}  // namespace dynkit::cli
