#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dynkit::cli {

namespace {

SchemaPtr positive(std::optional<double> fallback = std::nullopt) {
  auto s = at_least(number(fallback), 0.0, true);
  return fallback ? s : required(s);
}

SchemaPtr nonnegative(std::optional<double> fallback = std::nullopt) {
  auto s = at_least(number(fallback), 0.0);
  return fallback ? s : required(s);
}

SchemaPtr count(long long fallback, long long min = 1) { return at_least(integer(fallback), static_cast<double>(min)); }

SchemaPtr grid_schema() {
  return object({{"L", positive()}, {"n", required(at_least(integer(), 4))}, {"hbar", positive(1.0)}});
}

std::map<std::string, FieldList> potential_variants() {
  return {
      {"free", {}},
      {"harmonic", {{"omega", positive(1.0)}, {"x0", number(0.0)}}},
      {"quartic", {{"a", number(1.0)}, {"b", number(0.0)}}},
      {"soft_core", {{"depth", number(1.0)}, {"a", positive(1.0)}}},
      {"cosine_lattice", {{"v0", number(1.0)}, {"period", positive(2.0 * M_PI)}}},
      {"polynomial", {{"coefficients", required(array(number(), 1))}}},
  };
}

SchemaPtr hamiltonian_schema() {
  return object({
      {"mass", positive(1.0)},
      {"potential", variant(potential_variants(), "free")},
      {"kinetic", variant({{"standard", {}}, {"polynomial", {{"coefficients", required(array(number(), 1))}}}},
                          "standard")},
      {"drive", object({{"amplitude", number(0.0)}, {"omega", number(1.0)}, {"phase", number(0.0)}})},
  });
}

SchemaPtr initial_schema() {
  return variant({{"gaussian", {{"x0", number(0.0)}, {"p0", number(0.0)}, {"sigma", positive(1.0)}}},
                  {"oscillator", {{"n", count(0, 0)}, {"omega", positive(1.0)}, {"x0", number(0.0)}}}},
                 "gaussian");
}

SchemaPtr matrix_schema() { return array(array(complex_value(), 1), 1); }

SchemaPtr levels_schema() {
  return object({{"H", required(matrix_schema())},
                 {"jumps", array(matrix_schema(), 0, json::array())},
                 {"psi0", required(array(complex_value(), 1))}});
}

SchemaPtr jump_schema() { return object({{"gamma", nonnegative()}, {"x0", number(0.0)}}); }

FieldList task_blocks() {
  const std::vector<std::string> grid_systems{"grid", "levels"};
  return {
      {"eigen", object({{"method", string_enum({"spectral", "fd"}, "spectral")},
                        {"scheme", string_enum({"central", "forward", "backward"}, "central")},
                        {"n_states", count(10)},
                        {"save_states", boolean(false)}})},
      {"bands", object({{"a", positive()},
                        {"n_basis", count(64, 4)},
                        {"n_k", count(32)},
                        {"n_bands", count(5)},
                        {"hbar", positive(1.0)}})},
      {"propagate", object({{"initial", initial_schema()},
                            {"dt", positive()},
                            {"t_max", nonnegative()},
                            {"order", one_of(integer(2), {2, 4})},
                            {"stride", count(1)},
                            {"absorbing", object({{"width", positive()}, {"strength", nonnegative()}})},
                            {"spectrum", object({{"pad_factor", count(8)},
                                                 {"window", string_enum({"hann", "none"}, "hann")}})},
                            {"save_final", boolean(true)}})},
      {"imagtime", object({{"initial", initial_schema()},
                           {"dtau", positive()},
                           {"tol", positive(1e-10)},
                           {"n_states", count(1)},
                           {"max_iter", count(1000000)},
                           {"save_states", boolean(false)}})},
      {"gap", object({{"initial", initial_schema()},
                      {"dtau", positive()},
                      {"tau_max", positive()},
                      {"observable", string_enum({"x", "x2", "p"}, "x")}})},
      {"classical",
       object({{"ensemble",
                required(variant({{"gaussian",
                                   {{"x0", number(0.0)},
                                    {"p0", number(0.0)},
                                    {"sigma_x", positive(1.0)},
                                    {"sigma_p", positive(1.0)},
                                    {"samples", count(1000)},
                                    {"seed", count(1, 0)}}},
                                  {"points",
                                   {{"x", required(array(number(), 1))},
                                    {"p", required(array(number(), 1))},
                                    {"w", array(number())}}}}))},
               {"dt", positive()},
               {"steps", required(count(0, 0))},
               {"stride", count(1)}})},
      {"lindblad", object({{"system", string_enum(grid_systems, "grid")},
                           {"model", string_enum({"lindblad", "random_collision", "unitary"}, "lindblad")},
                           {"initial", initial_schema()},
                           {"jump", jump_schema()},
                           {"collision", object({{"gamma", nonnegative()}, {"beta", positive()}})},
                           {"levels", levels_schema()},
                           {"dt", positive()},
                           {"t_max", nonnegative()},
                           {"stride", count(1)},
                           {"save_final", boolean(true)}})},
      {"mcwf", object({{"system", string_enum(grid_systems, "grid")},
                       {"initial", initial_schema()},
                       {"jumps", array(jump_schema(), 0, json::array())},
                       {"levels", levels_schema()},
                       {"dt", positive()},
                       {"t_max", nonnegative()},
                       {"stride", count(1)},
                       {"trajectories", count(100)},
                       {"seed", count(1, 0)},
                       {"save_final", boolean(true)}})},
      {"wigner", object({{"initial", initial_schema()},
                         {"excited", variant(potential_variants(), "free")},
                         {"dipole", variant({{"constant", {{"mu", number(1.0)}}},
                                             {"linear", {{"mu0", number(1.0)}, {"mu1", number(0.0)}}}},
                                            "constant")},
                         {"pulse", object({{"amplitude", number(0.0)},
                                           {"omega", number(1.0)},
                                           {"phase", number(0.0)},
                                           {"t0", number(0.0)},
                                           {"width", at_least(number(), 0.0, true)}})},
                         {"dt", positive()},
                         {"t_max", nonnegative(0.0)},
                         {"stride", count(1)},
                         {"splitting", string_enum({"lie", "strang"}, "lie")}})},
      {"expm-bench", object({{"dims", array(count(1), 1, json::array({4, 16, 64}))},
                             {"norms", array(positive(1.0), 1, json::array({1.0, 10.0, 50.0}))},
                             {"seed", count(1, 0)},
                             {"taylor_tol", positive(1e-14)}})},
  };
}

const Schema& top_schema() {
  static const SchemaPtr s = [] {
    FieldList f{{"task", required(string_enum(task_names()))},
                {"grid", grid_schema()},
                {"hamiltonian", hamiltonian_schema()}};
    for (auto& b : task_blocks()) f.push_back(b);
    return object(f, true);
  }();
  return *s;
}

bool needs_grid(const std::string& task, const json& block) {
  if (task == "bands" || task == "classical" || task == "expm-bench") return false;
  if ((task == "lindblad" || task == "mcwf") && block.value("system", "grid") == "levels") return false;
  return true;
}

void check_matrix(const json& m, const std::string& path, size_t d, std::vector<std::string>& errors) {
  if (!m.is_array()) return;
  if (m.size() != d) errors.push_back(path + ": expected " + std::to_string(d) + " rows");
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i].is_array() && m[i].size() != d)
      errors.push_back(path + "/" + std::to_string(i) + ": expected " + std::to_string(d) + " columns");
}

void task_checks(const json& cfg, std::vector<std::string>& errors) {
  const std::string task = cfg.at("task").get<std::string>();
  for (const auto& other : task_names())
    if (other != task && cfg.contains(other)) errors.push_back("/" + other + ": block not used by task '" + task + "'");
  if (!cfg.contains(task)) {
    errors.push_back("/" + task + ": required block for task '" + task + "' missing");
    return;
  }
  const json& b = cfg.at(task);
  if (needs_grid(task, b)) {
    if (!cfg.contains("grid")) errors.push_back("/grid: required for task '" + task + "'");
    else if (cfg["grid"].contains("n") && cfg["grid"]["n"].is_number_integer() &&
             cfg["grid"]["n"].get<long long>() % 2 != 0)
      errors.push_back("/grid/n: must be even");
  } else if (cfg.contains("grid")) {
    errors.push_back("/grid: not used by task '" + task + "'");
  }
  const bool time_dependent = cfg.contains("hamiltonian") && cfg["hamiltonian"].contains("drive");
  if (task == "propagate" && b.contains("spectrum") && time_dependent)
    errors.push_back("/propagate/spectrum: requires a hamiltonian without drive");
  if ((task == "eigen" || task == "imagtime" || task == "gap" || task == "bands" || task == "wigner") &&
      time_dependent)
    errors.push_back("/hamiltonian/drive: not supported by task '" + task + "'");
  if (task == "eigen" && b.value("method", "") == "fd" && cfg.contains("hamiltonian") &&
      cfg["hamiltonian"].contains("kinetic") && cfg["hamiltonian"]["kinetic"].value("type", "") != "standard")
    errors.push_back("/hamiltonian/kinetic: the fd method needs the standard kinetic energy");
  if (task == "lindblad" || task == "mcwf") {
    const std::string p = "/" + task;
    const std::string system = b.value("system", "grid");
    if (system == "levels") {
      if (!b.contains("levels")) {
        errors.push_back(p + "/levels: required when system is 'levels'");
      } else {
        const json& lv = b.at("levels");
        const size_t d = lv.contains("psi0") ? lv["psi0"].size() : 0;
        if (lv.contains("H")) check_matrix(lv["H"], p + "/levels/H", d, errors);
        for (size_t i = 0; lv.contains("jumps") && i < lv["jumps"].size(); ++i)
          check_matrix(lv["jumps"][i], p + "/levels/jumps/" + std::to_string(i), d, errors);
      }
      if (cfg.contains("hamiltonian")) errors.push_back("/hamiltonian: not used when system is 'levels'");
    } else if (b.contains("levels")) {
      errors.push_back(p + "/levels: only used when system is 'levels'");
    }
    if (task == "lindblad" && system == "grid") {
      if (b.value("model", "") == "lindblad" && !b.contains("jump"))
        errors.push_back("/lindblad/jump: required for model 'lindblad'");
      if (b.value("model", "") == "random_collision" && !b.contains("collision"))
        errors.push_back("/lindblad/collision: required for model 'random_collision'");
    }
  }
  if (b.contains("dt") && b.contains("t_max") && b["dt"].is_number() && b["t_max"].is_number()) {
    const double r = b["t_max"].get<double>() / b["dt"].get<double>();
    if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, r))
      errors.push_back("/" + task + "/t_max: must be an integer multiple of dt");
  }
  if (task == "bands" && b.value("n_basis", 0LL) % 2 != 0) errors.push_back("/bands/n_basis: must be even");
  if (task == "bands" && b.value("n_bands", 0LL) > b.value("n_basis", 0LL))
    errors.push_back("/bands/n_bands: must not exceed n_basis");
  if (task == "lindblad" && b.value("model", "") == "random_collision" && time_dependent)
    errors.push_back("/hamiltonian/drive: model 'random_collision' needs a static hamiltonian");
  if (task == "classical") {
    const json e = b.value("ensemble", json::object());
    if (e.value("type", "") == "points") {
      const size_t n = e.contains("x") ? e["x"].size() : 0;
      if (e.contains("p") && e["p"].size() != n) errors.push_back("/classical/ensemble/p: length must match x");
      if (e.contains("w") && e["w"].size() != n) errors.push_back("/classical/ensemble/w: length must match x");
    }
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(diagnostics.empty() ? "invalid configuration" : diagnostics.front()),
      diagnostics_(std::move(diagnostics)) {}

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names{"eigen", "bands",    "propagate", "imagtime", "gap",
                                              "classical", "lindblad", "mcwf",  "wigner",   "expm-bench"};
  return names;
}

json read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ConfigError({"/: config file is empty"});
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("/: not valid JSON (") + e.what() + ")"});
  }
}

std::vector<std::string> check_config(const json& raw, json* resolved) {
  std::vector<std::string> errors;
  if (!raw.is_object()) return {"/: top level must be an object"};
  json out = validate(raw, top_schema(), "", errors);
  const bool task_ok = out.contains("task") && out["task"].is_string() &&
                       std::find(task_names().begin(), task_names().end(), out["task"].get<std::string>()) !=
                           task_names().end();
  if (task_ok) task_checks(out, errors);
  if (errors.empty() && !out.contains("hamiltonian")) {
    const std::string task = out.at("task").get<std::string>();
    const bool levels = (task == "lindblad" || task == "mcwf") && out.at(task).at("system") == "levels";
    if (task != "expm-bench" && !levels) {
      std::vector<std::string> ignore;
      out["hamiltonian"] = validate(json::object(), *hamiltonian_schema(), "/hamiltonian", ignore);
    }
  }
  if (errors.empty() && resolved) *resolved = out;
  return errors;
}

json load_config(const std::string& path) {
  json resolved;
  auto errors = check_config(read_config_file(path), &resolved);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return resolved;
}

}  // namespace dynkit::cli
