#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwass/io.hpp"
#include "test_helpers.hpp"

using namespace qwass;
using namespace qwass::testing;

namespace fs = std::filesystem;

namespace {

#ifndef QWASS_CLI_PATH
#define QWASS_CLI_PATH "qwass"
#endif

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(QWASS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qwass_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("format_number round trips 17 significant digits") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 100; ++i) {
    const double v = u(rng);
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
  CHECK(std::strtod(format_number(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
  CHECK(format_number(0.5).find(',') == std::string::npos);
}

TEST_CASE("matrix JSON round trip") {
  std::mt19937_64 rng(52);
  const Matrix m = random_complex(3, rng);
  const json j = matrix_to_json(m);
  CHECK(j["dim"] == 3);
  CHECK(max_abs(matrix_from_json(j) - m) == 0.0);
}

TEST_CASE("generator JSON round trip") {
  const double p = 0.3;
  Matrix sigma = Matrix::Zero(2, 2);
  sigma(0, 0) = p;
  sigma(1, 1) = 1 - p;
  Matrix v = Matrix::Zero(2, 2);
  v(0, 1) = 1.0;
  const double omega = std::log((1 - p) / p);
  LindbladGenerator gen{DensityOperator(sigma, TraceConvention::Standard),
                        {{v, omega, 1}, {v.adjoint(), -omega, 0}}};
  const LindbladGenerator back = generator_from_json(generator_to_json(gen));
  CHECK(max_abs(back.sigma.mat - sigma) == 0.0);
  REQUIRE(back.terms.size() == 2);
  CHECK(max_abs(back.terms[0].v - v) == 0.0);
  CHECK(back.terms[0].omega == omega);
  CHECK(back.terms[0].adjoint_index == 1);
  CHECK(back.terms[1].adjoint_index == 0);
}

TEST_CASE("gaussian JSON round trip") {
  RealMatrix sigma(2, 2);
  sigma << 26, 1, 1, 1;
  RealVector mu(2);
  mu << -1, -1;
  const GaussianState s = validate_gaussian(sigma, mu);
  const GaussianState back = gaussian_from_json(gaussian_to_json(s));
  CHECK((back.sigma - sigma).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.mu - mu).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("CsvWriter emits LF-only lines with formatted cells") {
  const fs::path dir = fresh_dir("csv");
  const std::string path = (dir / "t.csv").string();
  CsvWriter csv(path);
  csv.header({"a", "b"});
  csv.row({1.5, 1.0 / 3.0});
  csv.close();
  const std::string bytes = slurp(path);
  CHECK(bytes.find('\r') == std::string::npos);
  CHECK(bytes.rfind("a,b\n", 0) == 0);
  CHECK(bytes.find(format_number(1.0 / 3.0)) != std::string::npos);
}

TEST_CASE("write_json_atomic round trip") {
  const fs::path dir = fresh_dir("json");
  const json j = {{"x", 1}, {"y", {1, 2, 3}}};
  write_json_atomic((dir / "a.json").string(), j);
  std::ifstream in(dir / "a.json");
  json back;
  in >> back;
  CHECK(back == j);
}

TEST_CASE("cli infomatrix: deterministic artifact, manifest checks pass") {
  const fs::path d1 = fresh_dir("im1"), d2 = fresh_dir("im2");
  const std::string args =
      "infomatrix --model fermionic-n1 --theta0 [-0.9] --theta1 [0.9] "
      "--steps 18 --out ";
  REQUIRE(run_cli(args + d1.string()) == 0);
  REQUIRE(run_cli(args + d2.string()) == 0);
  CHECK(slurp(d1 / "infomatrix.csv") == slurp(d2 / "infomatrix.csv"));
  std::ifstream min(d1 / "manifest.json");
  json manifest;
  min >> manifest;
  CHECK(manifest["exit_code"] == 0);
  bool found = false;
  for (const json& c : manifest["checks"])
    if (c["name"] == "max_analytic_deviation") {
      found = true;
      CHECK(c["pass"] == true);
      CHECK(c["value"].get<double>() <= 1e-8);
    }
  CHECK(found);
}

TEST_CASE("cli exit codes") {
  const fs::path dir = fresh_dir("codes");
  SUBCASE("unknown model is a usage error") {
    CHECK(run_cli("infomatrix --model nope --out " + dir.string()) == 2);
  }
  SUBCASE("unknown config key is a usage error") {
    write_text(dir / "bad.json", R"({"model":"fermionic-n1","frobnicate":1})");
    CHECK(run_cli("infomatrix --config " + (dir / "bad.json").string() +
                  " --out " + dir.string()) == 2);
  }
  SUBCASE("empty grid gives a header-only CSV and exit 0") {
    CHECK(run_cli("infomatrix --model fermionic-n1 --out " + dir.string()) ==
          0);
    const std::string bytes = slurp(dir / "infomatrix.csv");
    CHECK(bytes == "theta,G_W,G_W_analytic\n");
  }
  SUBCASE("out-of-domain grid point is infeasible") {
    CHECK(run_cli("infomatrix --model fermionic-n1 --theta0 [-2] --theta1 "
                  "[2] --steps 2 --out " +
                  dir.string()) == 3);
  }
  SUBCASE("inadmissible gaussian state validates to exit 3") {
    write_text(dir / "state.json",
               R"({"state":{"Sigma":[[0.5,0],[0,0.5]],"mu":[0,0]}})");
    CHECK(run_cli("validate --config " + (dir / "state.json").string() +
                  " --out " + dir.string()) == 3);
    std::ifstream min(dir / "manifest.json");
    json manifest;
    min >> manifest;
    CHECK(manifest["exit_code"] == 3);
  }
  SUBCASE("valid detailed-balance generator validates to exit 0") {
    write_text(dir / "gen.json", R"({"generator":{
      "sigma": {"dim":2, "re":[[0.3,0],[0,0.7]], "im":[[0,0],[0,0]]},
      "terms": [
        {"V": {"dim":2,"re":[[0,1],[0,0]],"im":[[0,0],[0,0]]},
         "omega": 0.8472978603872034, "adjoint": 1},
        {"V": {"dim":2,"re":[[0,0],[1,0]],"im":[[0,0],[0,0]]},
         "omega": -0.8472978603872034, "adjoint": 0}
      ]}})");
    CHECK(run_cli("validate --config " + (dir / "gen.json").string() +
                  " --out " + dir.string()) == 0);
  }
}

TEST_CASE("cli flow") {
  const fs::path dir = fresh_dir("flow");
  SUBCASE("zero steps echoes the initial point") {
    REQUIRE(run_cli("flow --model fermionic-n1 --theta0 [0.4] --steps 0 "
                    "--out " +
                    dir.string()) == 0);
    const std::string bytes = slurp(dir / "flow.csv");
    CHECK(std::count(bytes.begin(), bytes.end(), '\n') == 2);
    CHECK(bytes.find(format_number(0.4)) != std::string::npos);
  }
  SUBCASE("flags override config values") {
    write_text(dir / "cfg.json",
               R"({"model":"fermionic-n1","theta0":[0.2],"steps":0})");
    REQUIRE(run_cli("flow --config " + (dir / "cfg.json").string() +
                    " --theta0 [0.5] --out " + dir.string()) == 0);
    const std::string bytes = slurp(dir / "flow.csv");
    CHECK(bytes.find(format_number(0.5)) != std::string::npos);
    CHECK(bytes.find(format_number(0.2)) == std::string::npos);
  }
}

TEST_CASE("cli geodesic") {
  const fs::path dir = fresh_dir("geo");
  SUBCASE("identical endpoints give a single-row path") {
    REQUIRE(run_cli("geodesic --model fermionic-n1 --theta0 [0.3] --theta1 "
                    "[0.3] --N 10 --out " +
                    dir.string()) == 0);
    const std::string bytes = slurp(dir / "geodesic.csv");
    CHECK(std::count(bytes.begin(), bytes.end(), '\n') == 2);
  }
  SUBCASE("mc mode without a seed is a usage error") {
    CHECK(run_cli("geodesic --model fermionic-n1 --theta0 [-0.5] --theta1 "
                  "[0.5] --N 10 --mode mc --out " +
                  dir.string()) == 2);
  }
  SUBCASE("gaussian endpoints from config produce a feasible path") {
    write_text(dir / "g.json", R"({"model":"gaussian",
      "endpoint0":{"Sigma":[[26,1],[1,1]],"mu":[-1,-1]},
      "endpoint1":{"Sigma":[[1,1],[1,2]],"mu":[2,7]}})");
    REQUIRE(run_cli("geodesic --config " + (dir / "g.json").string() +
                    " --N 10 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "geodesic.csv"));
    CHECK(fs::exists(dir / "manifest.json"));
  }
}

TEST_CASE("cli bridge reports the equivalence residual") {
  const fs::path dir = fresh_dir("bridge");
  REQUIRE(run_cli("bridge --model fermionic-n1 --theta0 [-0.5] --theta1 "
                  "[0.5] --beta 0 --N 12 --out " +
                  dir.string()) == 0);
  std::ifstream min(dir / "manifest.json");
  json manifest;
  min >> manifest;
  bool found = false;
  for (const json& c : manifest["checks"])
    if (c["name"] == "equivalence_residual") {
      found = true;
      CHECK(c["value"].get<double>() < 1e-10);
    }
  CHECK(found);
}

TEST_CASE("cli wigner-grid") {
  const fs::path dir = fresh_dir("wig");
  write_text(dir / "w.json", R"({"state":{"Sigma":[[1,0],[0,1]],"mu":[0,0]},
    "grid":{"xmin":-1,"xmax":1,"ymin":-1,"ymax":1,"nx":5,"ny":5}})");
  REQUIRE(run_cli("wigner-grid --config " + (dir / "w.json").string() +
                  " --out " + dir.string()) == 0);
  const std::string bytes = slurp(dir / "wigner.csv");
  CHECK(std::count(bytes.begin(), bytes.end(), '\n') == 26);
  CHECK(bytes.rfind("x,xi,W\n", 0) == 0);
}
