// qwass: quantum Wasserstein transport geometry toolbox.
//
// Subcommands: infomatrix, geodesic, flow, bridge, wigner-grid, validate.
// Exit codes: 0 success, 2 usage/config error, 3 infeasible input,
// 4 domain exit during a run. A run manifest JSON is written for exit
// codes 0, 3 and 4.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qwass/dilog.hpp"
#include "qwass/flows.hpp"
#include "qwass/gaussian.hpp"
#include "qwass/io.hpp"
#include "qwass/model.hpp"

namespace {

using qwass::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitDomain = 4;

struct ManifestBuilder {
  json config = json::object();
  json checks = json::array();
  std::vector<std::string> artifacts;
  std::string command;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void check(const std::string& name, double value, bool pass) {
    checks.push_back(json{{"name", name}, {"value", value}, {"pass", pass}});
  }
  void write(const std::string& out_dir, int exit_code) {
    const double ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
    json m{{"command", command},   {"config", config},
           {"artifacts", artifacts}, {"wall_clock_ms", ms},
           {"checks", checks},     {"exit_code", exit_code}};
    std::filesystem::create_directories(out_dir);
    qwass::write_json_atomic(out_dir + "/manifest.json", m);
  }
};

std::vector<double> parse_json_vector(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_array()) throw std::runtime_error("expected a JSON array");
  std::vector<double> v;
  for (const json& x : j) v.push_back(x.get<double>());
  return v;
}

qwass::RealVector to_eigen(const std::vector<double>& v) {
  qwass::RealVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

// Merged configuration: JSON config file values overridden by CLI flags.
struct RunConfig {
  std::string model = "fermionic-n1";
  std::string theta0_text, theta1_text;
  int steps = 0;
  double tau = 1e-3;
  double beta = 0.0;
  int n_segments = 100;
  std::string mode = "grad";
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir = ".";
  json extra = json::object();  // command-specific config payload
};

const std::set<std::string> kCommonKeys = {
    "model", "theta0", "theta1", "steps", "tau",
    "beta",  "N",      "mode",   "seed",  "out"};

int load_config_file(const std::string& path, RunConfig& cfg,
                     const std::set<std::string>& extra_keys,
                     std::string& error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot open config file " + path;
    return kExitUsage;
  }
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    error = std::string("config parse error: ") + e.what();
    return kExitUsage;
  }
  for (const auto& [key, value] : j.items()) {
    if (!kCommonKeys.count(key) && !extra_keys.count(key)) {
      error = "unknown config key '" + key + "'";
      return kExitUsage;
    }
    if (key == "model")
      cfg.model = value.get<std::string>();
    else if (key == "theta0")
      cfg.theta0_text = value.dump();
    else if (key == "theta1")
      cfg.theta1_text = value.dump();
    else if (key == "steps")
      cfg.steps = value.get<int>();
    else if (key == "tau")
      cfg.tau = value.get<double>();
    else if (key == "beta")
      cfg.beta = value.get<double>();
    else if (key == "N")
      cfg.n_segments = value.get<int>();
    else if (key == "mode")
      cfg.mode = value.get<std::string>();
    else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
      cfg.seed_set = true;
    } else if (key == "out")
      cfg.out_dir = value.get<std::string>();
    else
      cfg.extra[key] = value;
  }
  return kExitOk;
}

int cmd_infomatrix(const RunConfig& cfg) {
  ManifestBuilder mb;
  mb.command = "infomatrix";
  mb.config = json{{"model", cfg.model}, {"out", cfg.out_dir}};
  qwass::ParametricModel model;
  try {
    model = qwass::make_model(cfg.model);
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<double> grid;
  if (!cfg.theta0_text.empty() && !cfg.theta1_text.empty() && cfg.steps > 0) {
    const double a = parse_json_vector(cfg.theta0_text).at(0);
    const double b = parse_json_vector(cfg.theta1_text).at(0);
    for (int i = 0; i <= cfg.steps; ++i)
      grid.push_back(a + (b - a) * i / cfg.steps);
    mb.config["theta0"] = a;
    mb.config["theta1"] = b;
    mb.config["steps"] = cfg.steps;
  } else if (cfg.extra.contains("grid")) {
    for (const json& x : cfg.extra["grid"]) grid.push_back(x.get<double>());
    mb.config["grid"] = cfg.extra["grid"];
  }

  std::filesystem::create_directories(cfg.out_dir);
  const std::string csv_path = cfg.out_dir + "/infomatrix.csv";
  qwass::CsvWriter csv(csv_path);
  const bool has_ref = static_cast<bool>(model.analytic_info_matrix);
  std::vector<std::string> names = {"theta", "G_W"};
  if (has_ref) names.push_back("G_W_analytic");
  csv.header(names);

  double max_dev = 0.0;
  for (double th : grid) {
    qwass::RealVector t(1);
    t[0] = th;
    if (!model.valid_at(t)) {
      csv.close();
      mb.write(cfg.out_dir, kExitInfeasible);
      std::cerr << "theta " << th << " outside the model domain\n";
      return kExitInfeasible;
    }
    const double gw = qwass::wasserstein_info_matrix(model, t)(0, 0);
    std::vector<double> row = {th, gw};
    if (has_ref) {
      const double ref = model.analytic_info_matrix(t);
      row.push_back(ref);
      max_dev = std::max(max_dev, std::abs(gw - ref));
    }
    csv.row(row);
  }
  csv.close();
  mb.artifacts.push_back(csv_path);
  if (has_ref) mb.check("max_analytic_deviation", max_dev, max_dev <= 1e-8);
  mb.write(cfg.out_dir, kExitOk);
  return kExitOk;
}

int cmd_geodesic(const RunConfig& cfg) {
  ManifestBuilder mb;
  mb.command = "geodesic";
  mb.config = json{{"model", cfg.model},
                   {"N", cfg.n_segments},
                   {"mode", cfg.mode},
                   {"out", cfg.out_dir}};
  if (cfg.seed_set) mb.config["seed"] = cfg.seed;
  std::filesystem::create_directories(cfg.out_dir);
  const std::string csv_path = cfg.out_dir + "/geodesic.csv";

  if (cfg.mode == "mc" && !cfg.seed_set) {
    std::cerr << "mode mc requires --seed\n";
    return kExitUsage;
  }

  if (cfg.model == "gaussian") {
    qwass::GaussianState a, b;
    try {
      a = qwass::gaussian_from_json(cfg.extra.at("endpoint0"));
      b = qwass::gaussian_from_json(cfg.extra.at("endpoint1"));
    } catch (const json::exception& e) {
      std::cerr << "gaussian endpoints: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      mb.write(cfg.out_dir, kExitInfeasible);
      return kExitInfeasible;
    }
    qwass::GaussianGeodesicConfig gc;
    gc.monte_carlo = cfg.mode == "mc";
    gc.seed = cfg.seed;
    const qwass::GaussianPath path =
        qwass::gaussian_geodesic(a, b, cfg.n_segments, gc);

    qwass::CsvWriter csv(csv_path);
    std::vector<std::string> names = {"step"};
    for (Eigen::Index i = 0; i < a.mu.size(); ++i)
      names.push_back("mu_" + std::to_string(i));
    for (Eigen::Index r = 0; r < a.sigma.rows(); ++r)
      for (Eigen::Index c = r; c < a.sigma.cols(); ++c)
        names.push_back("Sigma_" + std::to_string(r) + std::to_string(c));
    names.push_back("action");
    csv.header(names);
    for (std::size_t k = 0; k < path.states.size(); ++k) {
      std::vector<double> row = {static_cast<double>(k)};
      const qwass::GaussianState& st = path.states[k];
      for (Eigen::Index i = 0; i < st.mu.size(); ++i) row.push_back(st.mu[i]);
      for (Eigen::Index r = 0; r < st.sigma.rows(); ++r)
        for (Eigen::Index c = r; c < st.sigma.cols(); ++c)
          row.push_back(st.sigma(r, c));
      row.push_back(path.action);
      csv.row(row);
    }
    csv.close();
    mb.artifacts.push_back(csv_path);
    mb.check("final_action", path.action, true);
    mb.write(cfg.out_dir, kExitOk);
    return kExitOk;
  }

  qwass::ParametricModel model;
  try {
    model = qwass::make_model(cfg.model);
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  if (cfg.theta0_text.empty() || cfg.theta1_text.empty()) {
    std::cerr << "geodesic requires --theta0 and --theta1\n";
    return kExitUsage;
  }
  const qwass::RealVector t0 = to_eigen(parse_json_vector(cfg.theta0_text));
  const qwass::RealVector t1 = to_eigen(parse_json_vector(cfg.theta1_text));
  mb.config["theta0"] = json::parse(cfg.theta0_text);
  mb.config["theta1"] = json::parse(cfg.theta1_text);
  if (!model.valid_at(t0) || !model.valid_at(t1)) {
    std::cerr << "endpoint outside the model domain\n";
    mb.write(cfg.out_dir, kExitInfeasible);
    return kExitInfeasible;
  }

  if ((t1 - t0).norm() == 0.0) {
    qwass::CsvWriter csv(csv_path);
    csv.header({"t", "theta_0", "action"});
    csv.row({0.0, t0[0], 0.0});
    csv.close();
    mb.artifacts.push_back(csv_path);
    mb.check("final_action", 0.0, true);
    mb.write(cfg.out_dir, kExitOk);
    return kExitOk;
  }

  qwass::BvpConfig bc;
  bc.mode = cfg.mode == "mc" ? qwass::OptimizerMode::MonteCarlo
                             : qwass::OptimizerMode::Gradient;
  bc.seed = cfg.seed;
  const qwass::BvpResult res =
      qwass::geodesic_bvp(model, t0, t1, cfg.n_segments, bc);

  qwass::CsvWriter csv(csv_path);
  std::vector<std::string> names = {"t"};
  for (int i = 0; i < model.dim_params; ++i)
    names.push_back("theta_" + std::to_string(i));
  names.push_back("action");
  csv.header(names);
  for (std::size_t k = 0; k < res.trajectory.thetas.size(); ++k) {
    std::vector<double> row = {res.trajectory.times[k]};
    for (int i = 0; i < model.dim_params; ++i)
      row.push_back(res.trajectory.thetas[k][i]);
    row.push_back(res.action);
    csv.row(row);
  }
  csv.close();
  mb.artifacts.push_back(csv_path);
  mb.check("final_action", res.action, true);

  if (cfg.model == "fermionic-n1" && model.dim_params == 1) {
    double sup = 0.0;
    for (std::size_t k = 0; k < res.trajectory.thetas.size(); ++k) {
      const double ref = qwass::analytic_fermionic_geodesic(
          t0[0], t1[0], res.trajectory.times[k]);
      sup = std::max(sup, std::abs(res.trajectory.thetas[k][0] - ref));
    }
    mb.check("sup_deviation_analytic", sup, sup <= 1e-3);
  }
  mb.write(cfg.out_dir, kExitOk);
  return kExitOk;
}

int cmd_flow(const RunConfig& cfg) {
  ManifestBuilder mb;
  mb.command = "flow";
  mb.config = json{{"model", cfg.model},
                   {"tau", cfg.tau},
                   {"steps", cfg.steps},
                   {"out", cfg.out_dir}};
  qwass::ParametricModel model;
  try {
    model = qwass::make_model(cfg.model);
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  if (cfg.theta0_text.empty()) {
    std::cerr << "flow requires --theta0\n";
    return kExitUsage;
  }
  const qwass::RealVector t0 = to_eigen(parse_json_vector(cfg.theta0_text));
  mb.config["theta0"] = json::parse(cfg.theta0_text);
  std::filesystem::create_directories(cfg.out_dir);
  if (!model.valid_at(t0)) {
    std::cerr << "theta0 outside the model domain\n";
    mb.write(cfg.out_dir, kExitInfeasible);
    return kExitInfeasible;
  }

  const qwass::Objective obj = qwass::von_neumann_entropy_objective(model);
  const qwass::FlowTrajectory tr =
      qwass::natural_gradient_flow(model, t0, obj, cfg.tau, cfg.steps);

  const std::string csv_path = cfg.out_dir + "/flow.csv";
  qwass::CsvWriter csv(csv_path);
  std::vector<std::string> names = {"t"};
  for (int i = 0; i < model.dim_params; ++i)
    names.push_back("theta_" + std::to_string(i));
  names.push_back("objective");
  csv.header(names);
  for (std::size_t k = 0; k < tr.thetas.size(); ++k) {
    std::vector<double> row = {tr.times[k]};
    for (int i = 0; i < model.dim_params; ++i) row.push_back(tr.thetas[k][i]);
    row.push_back(tr.diagnostics[k]);
    csv.row(row);
  }
  csv.close();
  mb.artifacts.push_back(csv_path);
  mb.check("final_objective", tr.diagnostics.back(), true);
  const int code = tr.domain_exit ? kExitDomain : kExitOk;
  mb.write(cfg.out_dir, code);
  if (tr.domain_exit)
    std::cerr << "flow left the model domain; last valid step written\n";
  return code;
}

int cmd_bridge(const RunConfig& cfg) {
  ManifestBuilder mb;
  mb.command = "bridge";
  mb.config = json{{"model", cfg.model},
                   {"beta", cfg.beta},
                   {"N", cfg.n_segments},
                   {"out", cfg.out_dir}};
  qwass::ParametricModel model;
  try {
    model = qwass::make_model(cfg.model);
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  if (cfg.theta0_text.empty() || cfg.theta1_text.empty()) {
    std::cerr << "bridge requires --theta0 and --theta1\n";
    return kExitUsage;
  }
  const qwass::RealVector t0 = to_eigen(parse_json_vector(cfg.theta0_text));
  const qwass::RealVector t1 = to_eigen(parse_json_vector(cfg.theta1_text));
  mb.config["theta0"] = json::parse(cfg.theta0_text);
  mb.config["theta1"] = json::parse(cfg.theta1_text);
  std::filesystem::create_directories(cfg.out_dir);
  if (!model.valid_at(t0) || !model.valid_at(t1)) {
    std::cerr << "endpoint outside the model domain\n";
    mb.write(cfg.out_dir, kExitInfeasible);
    return kExitInfeasible;
  }

  const qwass::DensityOperator rho_in(model.rho(t0), model.convention);
  const qwass::DensityOperator rho_fi(model.rho(t1), model.convention);
  const qwass::BridgePath path = qwass::sbp_solve(
      model.structure, rho_in, rho_fi, cfg.beta, cfg.n_segments);

  const Eigen::Index d = rho_in.dim();
  const qwass::Matrix sigma = qwass::Matrix::Identity(d, d) *
                              (rho_in.mat.trace() / static_cast<double>(d));
  const qwass::EquivalenceReport eq = qwass::sbp_equivalence_check(
      model.structure, path.states, sigma, cfg.beta);

  const std::string csv_path = cfg.out_dir + "/bridge.csv";
  qwass::CsvWriter csv(csv_path);
  const qwass::OperatorBasis basis = qwass::structure_basis(model.structure);
  std::vector<std::string> names = {"t"};
  for (int i = 0; i < basis.size(); ++i)
    names.push_back("c_" + std::to_string(i));
  names.push_back("functional");
  csv.header(names);
  const double n = static_cast<double>(path.states.size() - 1);
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    std::vector<double> row = {static_cast<double>(k) / n};
    const qwass::RealVector c = basis.coefficients(path.states[k]);
    for (int i = 0; i < basis.size(); ++i) row.push_back(c[i]);
    row.push_back(path.functional_value);
    csv.row(row);
  }
  csv.close();
  mb.artifacts.push_back(csv_path);
  mb.check("functional_value", path.functional_value, true);
  mb.check("equivalence_residual", eq.residual, true);
  mb.write(cfg.out_dir, kExitOk);
  return kExitOk;
}

int cmd_wigner_grid(const RunConfig& cfg) {
  ManifestBuilder mb;
  mb.command = "wigner-grid";
  mb.config = json{{"out", cfg.out_dir}};
  qwass::GaussianState state;
  try {
    state = qwass::gaussian_from_json(cfg.extra.at("state"));
  } catch (const json::exception& e) {
    std::cerr << "wigner-grid: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    std::filesystem::create_directories(cfg.out_dir);
    mb.write(cfg.out_dir, kExitInfeasible);
    return kExitInfeasible;
  }
  double xmin = -3, xmax = 3, ymin = -3, ymax = 3;
  int nx = 41, ny = 41;
  if (cfg.extra.contains("grid")) {
    const json& g = cfg.extra["grid"];
    xmin = g.value("xmin", xmin);
    xmax = g.value("xmax", xmax);
    ymin = g.value("ymin", ymin);
    ymax = g.value("ymax", ymax);
    nx = g.value("nx", nx);
    ny = g.value("ny", ny);
    mb.config["grid"] = g;
  }
  if (state.mu.size() != 2) {
    std::cerr << "wigner-grid supports single-mode states\n";
    return kExitUsage;
  }
  std::filesystem::create_directories(cfg.out_dir);
  const std::string csv_path = cfg.out_dir + "/wigner.csv";
  qwass::CsvWriter csv(csv_path);
  csv.header({"x", "xi", "W"});
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      qwass::RealVector z(2);
      z[0] = xmin + (xmax - xmin) * i / std::max(1, nx - 1);
      z[1] = ymin + (ymax - ymin) * j / std::max(1, ny - 1);
      csv.row({z[0], z[1], qwass::wigner_pdf(state, z)});
    }
  csv.close();
  mb.artifacts.push_back(csv_path);
  mb.write(cfg.out_dir, kExitOk);
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg) {
  ManifestBuilder mb;
  mb.command = "validate";
  mb.config = json{{"out", cfg.out_dir}};
  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.extra.contains("generator")) {
    qwass::LindbladGenerator gen;
    try {
      gen = qwass::generator_from_json(cfg.extra["generator"]);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      mb.check("generator_constructed", 0.0, false);
      mb.write(cfg.out_dir, kExitInfeasible);
      return kExitInfeasible;
    }
    const qwass::ValidationReport rep = qwass::validate_generator(gen);
    std::cout << rep.summary();
    for (const auto& item : rep.items)
      mb.check(item.condition, item.residual, item.ok);
    const int code = rep.valid ? kExitOk : kExitInfeasible;
    mb.write(cfg.out_dir, code);
    return code;
  }
  if (cfg.extra.contains("state")) {
    try {
      qwass::gaussian_from_json(cfg.extra["state"]);
      std::cout << "VALID\n";
      mb.check("gaussian_admissible", 0.0, true);
      mb.write(cfg.out_dir, kExitOk);
      return kExitOk;
    } catch (const qwass::gaussian_admissibility_error& e) {
      std::cout << "INVALID: " << e.what() << "\n";
      mb.check("gaussian_admissible", e.offending_eigenvalue, false);
      mb.write(cfg.out_dir, kExitInfeasible);
      return kExitInfeasible;
    }
  }
  std::cerr << "validate requires a config with 'generator' or 'state'\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("QWASS_NUM_THREADS"))
    Eigen::setNbThreads(std::max(1, std::atoi(threads)));

  CLI::App app{"quantum Wasserstein transport geometry toolbox"};
  app.require_subcommand(1);

  RunConfig cli;  // values supplied on the command line
  std::string config_path;
  bool has_theta0 = false, has_theta1 = false, has_steps = false;
  bool has_tau = false, has_beta = false, has_n = false, has_mode = false;
  bool has_model = false, has_out = false;

  std::vector<CLI::App*> subs;
  std::set<std::string> extra_keys;
  for (const char* name :
       {"infomatrix", "geodesic", "flow", "bridge", "wigner-grid",
        "validate"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--model", cli.model)->each([&](const std::string&) {
      has_model = true;
    });
    sub->add_option("--theta0", cli.theta0_text)
        ->each([&](const std::string&) { has_theta0 = true; });
    sub->add_option("--theta1", cli.theta1_text)
        ->each([&](const std::string&) { has_theta1 = true; });
    sub->add_option("--steps", cli.steps)->each([&](const std::string&) {
      has_steps = true;
    });
    sub->add_option("--tau", cli.tau)->each([&](const std::string&) {
      has_tau = true;
    });
    sub->add_option("--beta", cli.beta)->each([&](const std::string&) {
      has_beta = true;
    });
    sub->add_option("--N", cli.n_segments)->each([&](const std::string&) {
      has_n = true;
    });
    sub->add_option("--mode", cli.mode)
        ->check(CLI::IsMember({"grad", "mc"}))
        ->each([&](const std::string&) { has_mode = true; });
    sub->add_option("--seed", cli.seed)->each([&](const std::string&) {
      cli.seed_set = true;
    });
    sub->add_option("--out", cli.out_dir)->each([&](const std::string&) {
      has_out = true;
    });
    sub->add_option("--config", config_path);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "geodesic" || command == "wigner-grid" ||
      command == "validate")
    extra_keys = {"endpoint0", "endpoint1", "grid", "state", "generator"};
  else if (command == "infomatrix")
    extra_keys = {"grid"};

  RunConfig cfg;
  if (!config_path.empty()) {
    std::string error;
    const int rc = load_config_file(config_path, cfg, extra_keys, error);
    if (rc != kExitOk) {
      std::cerr << error << "\n";
      return rc;
    }
  }
  // Flags win over config-file values.
  if (has_model) cfg.model = cli.model;
  if (has_theta0) cfg.theta0_text = cli.theta0_text;
  if (has_theta1) cfg.theta1_text = cli.theta1_text;
  if (has_steps) cfg.steps = cli.steps;
  if (has_tau) cfg.tau = cli.tau;
  if (has_beta) cfg.beta = cli.beta;
  if (has_n) cfg.n_segments = cli.n_segments;
  if (has_mode) cfg.mode = cli.mode;
  if (cli.seed_set) {
    cfg.seed = cli.seed;
    cfg.seed_set = true;
  }
  if (has_out) cfg.out_dir = cli.out_dir;

  try {
    if (command == "infomatrix") return cmd_infomatrix(cfg);
    if (command == "geodesic") return cmd_geodesic(cfg);
    if (command == "flow") return cmd_flow(cfg);
    if (command == "bridge") return cmd_bridge(cfg);
    if (command == "wigner-grid") return cmd_wigner_grid(cfg);
    if (command == "validate") return cmd_validate(cfg);
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qwass::invariant_error& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
