#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rds_cli/commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result rds_run(std::vector<std::string> args) {
  args.insert(args.begin(), "rds");
  std::ostringstream out, err;
  const int code = rds::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return (fs::path(RDS_DATA_DIR) / name).string(); }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rds_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate") {
  const Result ok = rds_run({"validate", data("s_star.json")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("Lambda_-inf: 0.5") != std::string::npos);

  const Result j = rds_run({"validate", "--json", data("s_star.json")});
  REQUIRE(j.code == 0);
  const json report = json::parse(j.out);
  CHECK(report["valid"] == true);
  CHECK(report["conditions"].size() == 5);
  CHECK(report["lambda_minus"].get<double>() == doctest::Approx(0.5));

  const Result bad = rds_run({"validate", data("p_one.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("condition (iv) fails") != std::string::npos);

  CHECK(rds_run({"validate", data("malformed.json")}).code == 2);
  CHECK(rds_run({"validate", data("no_such_file.json")}).code == 2);
  CHECK(rds_run({"validate", data("unit_example.json")}).code == 0);
}

TEST_CASE("usage errors") {
  CHECK(rds_run({}).code == 2);
  CHECK(rds_run({"frobnicate"}).code == 2);
  CHECK(rds_run({"perturb", data("s_star.json"), "--mode", "cantor", "--eps", "0", "--out", "x"}).code == 2);
  CHECK(rds_run({"perturb", data("s_star.json"), "--mode", "cantor", "--eps", "abc", "--out", "x"}).code == 2);
  CHECK(rds_run({"perturb", data("s_star.json"), "--mode", "other", "--eps", "0.1", "--out", "x"}).code == 2);
  CHECK(rds_run({"stationary", data("s_star.json"), "--tol", "-1"}).code == 2);
  CHECK(rds_run({"diagnose", data("s_star.json"), "--mode", "singular"}).code == 2);
  CHECK(rds_run({"diagnose", data("s_star.json"), "--mode", "support", "--window=3"}).code == 2);
  CHECK(rds_run({"orbit", data("s_star.json"), "--samples", "0"}).code == 2);
  CHECK(rds_run({"--help"}).code == 0);
}

TEST_CASE("stationary on p = 1 is a domain failure") {
  CHECK(rds_run({"stationary", data("p_one.json")}).code == 1);
}

TEST_CASE("perturb, distance and diagnose on a cantor bundle") {
  const fs::path dir = scratch("cantor");
  const Result p = rds_run({"perturb", data("s_star.json"), "--mode", "cantor", "--eps", "1/10", "--out", dir.string()});
  REQUIRE(p.code == 0);
  CHECK(fs::exists(dir / "descriptor.json"));
  CHECK(rds_run({"validate", dir.string()}).code == 0);

  const Result d = rds_run({"distance", data("s_star.json"), dir.string(), "--samples", "2000"});
  REQUIRE(d.code == 0);
  const json dist = json::parse(d.out);
  CHECK(dist["d_m_upper"].get<double>() < 0.1);
  CHECK(dist["d_m_lower"].get<double>() > 0.0);

  const Result s = rds_run({"diagnose", dir.string(), "--mode", "singular", "--depth", "3", "--tol", "0.01"});
  REQUIRE(s.code == 0);
  const json rep = json::parse(s.out);
  CHECK(rep["cover_mass"].get<double>() >= 0.99);
  CHECK(rep["length_factor"].get<double>() == doctest::Approx(8.0 / 27.0));
  fs::remove_all(dir);
}

TEST_CASE("distance of a system to itself") {
  const Result d = rds_run({"distance", data("s_star.json"), data("s_star.json")});
  REQUIRE(d.code == 0);
  const json dist = json::parse(d.out);
  CHECK(dist["d_m_upper"].get<double>() == 0.0);
  CHECK(dist["d_0"].get<double>() == 0.0);
}

TEST_CASE("stationary csv") {
  const fs::path out = scratch("cdf.csv");
  const Result r = rds_run({"stationary", data("s_star.json"), "--out", out.string()});
  REQUIRE(r.code == 0);
  const json summary = json::parse(r.out);
  CHECK(summary["converged"] == true);
  std::ifstream in(out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) rows += !line.empty() && line[0] != '#';
  CHECK(rows > 100);
  CHECK(rows <= 20001);
  fs::remove(out);
}

TEST_CASE("orbit output repeats with the seed") {
  const Result a = rds_run({"orbit", data("s_star.json"), "--seed", "5", "--samples", "300"});
  const Result b = rds_run({"orbit", data("s_star.json"), "--seed", "5", "--samples", "300"});
  const Result c = rds_run({"orbit", data("s_star.json"), "--seed", "6", "--samples", "300"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 302);
}

}  // TEST_SUITE
