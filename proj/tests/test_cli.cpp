#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdefect/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = qdefect::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& s) {
  std::vector<json> rows;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) rows.push_back(json::parse(line));
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qdefect_test_" + name);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("spectrum csv for the Dirichlet wall") {
  const auto r = run({"spectrum", "--xi", "3.141592653589793", "-n", "4", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,channel,channel_index,kind,k_or_kappa,E,degenerate");
  std::vector<double> E;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 7);
    CHECK(cells[3] == "positive");
    CHECK(cells[6] == "true");
    E.push_back(std::stod(cells[5]));
  }
  REQUIRE(E.size() == 4);
  const double pi = std::acos(-1.0);
  CHECK(std::abs(E[0] - pi * pi) <= 1e-10);
  CHECK(std::abs(E[3] - 4 * pi * pi) <= 1e-10);
}

TEST_CASE("spectrum json with a bound state") {
  const auto r = run({"spectrum", "--theta-plus", "4.0", "--theta-minus", "1.0", "-n", "3"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["kind"] == "bound");
  // Labels follow the canonical form: θ₊ is the larger eigenphase in (−π, π], here 1.0.
  CHECK(rows[0]["channel"] == "minus");
  CHECK(rows[0]["E"].get<double>() < 0.0);
  const double kappa = rows[0]["k_or_kappa"].get<double>();
  CHECK(std::abs(rows[0]["E"].get<double>() + kappa * kappa) <= 1e-12);
  for (std::size_t j = 1; j < rows.size(); ++j) CHECK(rows[j]["E"] >= rows[j - 1]["E"]);
}

TEST_CASE("det and channel solvers agree") {
  for (const char* seed : {"1", "2", "3", "4"}) {
    const auto a = lines(run({"spectrum", "--seed", seed, "-n", "10"}).out);
    const auto b = lines(run({"spectrum", "--seed", seed, "-n", "10", "--solver", "det"}).out);
    REQUIRE(a.size() == 10);
    REQUIRE(b.size() == a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(std::abs(a[j]["E"].get<double>() - b[j]["E"].get<double>()) <= 1e-9);
    }
  }
}

TEST_CASE("full matrix input") {
  // U = σ₁: eigenphases 0 and π.
  const auto r = run({"spectrum", "--matrix", "0", "0", "1", "0", "1", "0", "0", "0", "-n", "2"});
  REQUIRE(r.code == 0);
  const double pi = std::acos(-1.0);
  const auto rows = lines(r.out);
  CHECK(std::abs(rows[1]["E"].get<double>() - pi * pi) <= 1e-10);
  CHECK(run({"spectrum", "--matrix", "1", "0", "1", "0", "1", "0", "0", "0"}).code == 2);
}

TEST_CASE("invalid input exits with code 2") {
  CHECK(run({"spectrum", "--l", "-1"}).code == 2);
  CHECK(run({"spectrum", "-n", "0"}).code == 2);
  CHECK(run({"spectrum", "--format", "xml"}).code == 2);
  CHECK(run({"spectrum", "--solver", "lanczos"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"eigenfunction", "--level", "-1"}).code == 2);
  const auto r = run({"trace", "--xi", "3.141592653589793", "--winding-plus", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("DegeneratePath") != std::string::npos);
}

TEST_CASE("oracle-compare passes and reports tolerance failures") {
  const auto ok = lines(run({"oracle-compare", "--seed", "3", "-n", "4", "--n-interior", "256"}).out);
  REQUIRE(ok.size() == 5);
  CHECK(ok.back()["pass"] == true);
  CHECK(ok.back()["max_delta_det"].get<double>() <= 1e-9);
  const auto bad = run({"oracle-compare", "--seed", "3", "-n", "4", "--n-interior", "64", "--tol-fd", "1e-6"});
  CHECK(bad.code == 1);
  CHECK(lines(bad.out).back()["pass"] == false);
}

TEST_CASE("eigenfunction summary") {
  const auto r = run({"eigenfunction", "--seed", "5", "--level", "2", "--points", "21"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  // x = 0 is emitted once per side.
  REQUIRE(rows.size() == 23);
  CHECK(rows[10]["x"].get<double>() < 0.0);
  CHECK(rows[11]["x"].get<double>() > 0.0);
  CHECK(rows.back()["residual"].get<double>() <= 1e-8);
  CHECK(rows.back()["current_mismatch"].get<double>() <= 1e-10);
  CHECK(rows.front()["x"].get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("isospectral sweep") {
  const auto r = run({"isospectral", "--seed", "7", "-n", "6", "--grid-mu", "3", "--grid-nu", "3"});
  REQUIRE(r.code == 0);
  const auto row = lines(r.out).at(0);
  CHECK(row["max_level_deviation"].get<double>() <= 1e-8);
  CHECK(row["n_members"] == 11);
  CHECK(row["solver"] == "det");
}

TEST_CASE("trace summary") {
  const auto d = run({"trace", "--winding-plus", "1", "--tracked", "4", "--steps", "64"});
  REQUIRE(d.code == 0);
  CHECK(std::abs(lines(d.out).back()["shift_plus"].get<int>()) == 1);
  const auto r = run({"trace", "--winding-plus", "2", "--winding-minus", "-1", "--tracked", "6", "--steps", "128"});
  REQUIRE(r.code == 0);
  const auto s = lines(r.out).back();
  CHECK(s["shift_plus"] == 2);
  CHECK(s["shift_minus"] == -1);
  CHECK(s["winding_plus"] == 2);
}

TEST_CASE("config file with command-line override") {
  const auto cfg = temp_file("config.txt");
  {
    std::ofstream f(cfg);
    f << "# defaults\nlevels = 5\nxi = 3.141592653589793\nformat=csv\n";
  }
  auto r = run({"spectrum", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
  r = run({"spectrum", "--config", cfg.string(), "-n", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 2);
  CHECK(run({"spectrum", "--config", temp_file("missing").string()}).code == 2);
  std::filesystem::remove(cfg);
}

TEST_CASE("output file") {
  const auto path = temp_file("out.jsonl");
  const auto r = run({"spectrum", "--seed", "9", "--output", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(lines(ss.str()).size() == 6);
  std::filesystem::remove(path);
}

TEST_CASE("deterministic output with round-trip precision") {
  const auto a = run({"spectrum", "--seed", "11", "-n", "8", "--solver", "det"});
  const auto b = run({"spectrum", "--seed", "11", "-n", "8", "--solver", "det"});
  CHECK(a.out == b.out);
  const auto rows = lines(a.out);
  for (const auto& row : rows) {
    const double e = row["E"].get<double>();
    std::ostringstream os;
    os.precision(17);
    os << e;
    CHECK(a.out.find(os.str()) != std::string::npos);
  }
}

}  // TEST_SUITE
