#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lightcone/cli.hpp"

using namespace lightcone;
using json = nlohmann::json;
using std::numbers::pi;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("roots") {
  auto r = run({"roots", "--lambda", "4", "--mu", "2"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["x1"].get<double>() == doctest::Approx(-1.67513).epsilon(1e-5));
  for (const char* key : {"lambda", "mu", "x1", "x2", "x3", "modulus", "period"}) CHECK(j.contains(key));

  j = json::parse(run({"roots", "--lambda", "4", "--mu", "0"}).out);
  CHECK(j["x1"].get<double>() == doctest::Approx(-2.0));
  CHECK(std::abs(j["x2"].get<double>()) < 1e-15);
  CHECK(j["x3"].get<double>() == doctest::Approx(2.0));

  r = run({"roots", "--lambda", "3", "--mu", "2"});
  CHECK(r.code == kExitDomain);
  CHECK(r.err.find("3(|mu|/2)^(2/3)") != std::string::npos);

  std::string header;
  const auto rows = parse_csv(run({"roots", "--lambda", "4", "--mu", "2", "--format", "csv"}).out, header);
  CHECK(header == "lambda,mu,x1,x2,x3,modulus,period");
  CHECK(rows.at(0).size() == 7);
}

TEST_CASE("numbers round-trip losslessly") {
  const auto j = json::parse(run({"roots", "--lambda", "4", "--mu", "2"}).out);
  std::string header;
  const auto rows = parse_csv(run({"roots", "--lambda", "4", "--mu", "2", "--format", "csv"}).out, header);
  CHECK(rows[0][2] == j["x1"].get<double>());
  CHECK(rows[0][6] == j["period"].get<double>());
}

TEST_CASE("curvature profile") {
  std::string header;
  const auto rows =
      parse_csv(run({"curvature", "--lambda", "4", "--mu", "2", "--samples", "64"}).out, header);
  CHECK(header == "s,kg,kg_s,kg_ss");
  CHECK(rows.size() == 64);
  for (const auto& r : rows) {
    // kg_s^2 = kg^3 - lambda kg - mu
    CHECK(std::abs(r[2] * r[2] - (r[1] * r[1] * r[1] - 4.0 * r[1] - 2.0)) <= 1e-10);
  }
  CHECK(run({"curvature", "--lambda", "4", "--mu", "2", "--samples", "100"}).code == kExitDomain);
}

TEST_CASE("angle") {
  auto j = json::parse(run({"angle", "--lambda", "10", "--mu", "2", "--method", "all"}).out);
  CHECK(std::abs(j["quad"].get<double>() - j["closed"].get<double>()) <= 1e-9);
  CHECK(j.contains("series"));
  CHECK(std::abs(j["delta_quad_closed"].get<double>()) <= 1e-9);
  j = json::parse(run({"angle", "--lambda", "1e8", "--mu", "2", "--method", "closed"}).out);
  CHECK(std::abs(j["angle"].get<double>() - 2.0 * pi) <= 1e-4);
  CHECK(run({"angle", "--lambda", "10", "--mu", "-1", "--method", "quad"}).code == kExitDomain);
  CHECK(run({"angle", "--lambda", "10", "--mu", "2", "--method", "series"}).code == kExitDomain);
  CHECK(run({"angle", "--lambda", "100", "--mu", "2", "--method", "series"}).code == kExitOk);
  // invariant under the mu rescaling
  const double c = 1.7;
  const auto a = json::parse(run({"angle", "--lambda", "10", "--mu", "2", "--method", "closed"}).out);
  const auto b = json::parse(run({"angle", "--lambda", std::to_string(10 * c * c), "--mu",
                                  std::to_string(2 * c * c * c), "--method", "closed"})
                                 .out);
  CHECK(a["angle"].get<double>() == doctest::Approx(b["angle"].get<double>()).epsilon(1e-6));
}

TEST_CASE("find-closed") {
  auto r = run({"find-closed", "--p", "9", "--q", "10"});
  REQUIRE(r.code == kExitOk);
  const auto j = json::parse(r.out);
  CHECK(j["lambda_star"].get<double>() > 3.0);
  CHECK(j["gap"].get<double>() <= 1e-6);
  CHECK(j["delta_theta"].get<double>() == doctest::Approx(18.0 * pi));
  r = run({"find-closed", "--p", "4", "--q", "5"});
  CHECK(r.code == kExitDomain);
  CHECK(r.err.find("below sqrt(2/3)") != std::string::npos);
  r = run({"find-closed", "--p", "3", "--q", "3"});
  CHECK(r.code == kExitDomain);
  CHECK(r.err.find("not coprime") != std::string::npos);

  const std::string path = "cli_trace_test.csv";
  CHECK(run({"find-closed", "--p", "7", "--q", "8", "--trace", path}).code == kExitOk);
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  std::string header;
  const auto rows = parse_csv(buf.str(), header);
  CHECK(header == "s,theta,psi,x,y,z");
  CHECK(std::abs(rows.back()[3] - rows.front()[3]) <= 1e-6);
  std::remove(path.c_str());
}

TEST_CASE("curve csv") {
  auto r = run({"curve", "--lambda", "4", "--mu", "2", "--periods", "1", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  std::string header;
  const auto rows = parse_csv(r.out, header);
  CHECK(header == "s,theta,psi,x,y,z");
  CHECK(rows.size() == 257);
  for (const auto& row : rows) {
    CHECK(std::abs(-row[3] * row[3] + row[4] * row[4] + row[5] * row[5]) <= 1e-9);
    CHECK(row[3] == row[2]);
    CHECK(std::abs(row[4] - row[2] * std::cos(row[1])) <= 1e-14 * row[2]);
    CHECK(row[2] > 0.0);
  }
}

TEST_CASE("curve meta and endpoint laws") {
  auto j = json::parse(run({"curve", "--lambda", "1", "--mu", "0", "--periods", "5", "--format", "json"}).out);
  auto meta = j["meta"];
  for (const char* key : {"lambda", "mu", "x1", "x2", "x3", "period", "axis_class", "omega"}) {
    CHECK(meta.contains(key));
  }
  CHECK(meta["axis_class"] == "light-like");
  auto ends = meta["theta_at_period_ends"].get<std::vector<double>>();
  REQUIRE(ends.size() == 6);
  for (int n = 1; n <= 5; ++n) {
    CHECK(ends[n] > 2 * n * pi);
    CHECK(ends[n] < (2 * n + 1) * pi);
  }
  j = json::parse(run({"curve", "--lambda", "4", "--mu", "-2", "--periods", "5", "--format", "json"}).out);
  CHECK(j["meta"]["axis_class"] == "space-like");
  ends = j["meta"]["theta_at_period_ends"].get<std::vector<double>>();
  for (int n = 1; n <= 5; ++n) {
    CHECK(ends[n] > 2 * n * pi);
    CHECK(ends[n] < (4 * n + 1) * pi / 2);
  }
  CHECK(j["samples"].size() == 5 * 256 + 1);

  // both extension methods agree
  const auto a = json::parse(
      run({"curve", "--lambda", "4", "--mu", "-2", "--periods", "3", "--format", "json", "--method", "rotate"}).out);
  const auto b = json::parse(
      run({"curve", "--lambda", "4", "--mu", "-2", "--periods", "3", "--format", "json", "--method", "integrate"})
          .out);
  const auto& sa = a["samples"];
  const auto& sb = b["samples"];
  REQUIRE(sa.size() == sb.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    worst = std::max(worst, std::abs(sa[i]["theta"].get<double>() - sb[i]["theta"].get<double>()));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("flows") {
  std::string header;
  auto r = run({"flow", "heat", "--init", "uniform:1", "--t-end", "0.4", "--grid-n", "32"});
  REQUIRE(r.code == kExitOk);
  auto rows = parse_csv(r.out, header);
  CHECK(header == "t,k_min,k_max,harnack_min");
  CHECK(rows.back()[0] == doctest::Approx(0.4));
  CHECK(std::abs(rows.back()[1] - 5.0) <= 5e-6);
  CHECK(std::abs(rows.back()[2] - 5.0) <= 5e-6);

  r = run({"flow", "heat", "--init", "sine", "--t-end", "0.2", "--grid-n", "128", "--every", "20"});
  rows = parse_csv(r.out, header);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][3] >= -1e-3);

  r = run({"flow", "kdv", "--init", "soliton:4,2", "--t-end", "0.1", "--grid-n", "256"});
  REQUIRE(r.code == kExitOk);
  rows = parse_csv(r.out, header);
  CHECK(header == "t,length,int_kg,int_kg2,drift_length,drift_kg,drift_kg2");
  for (const auto& row : rows) {
    CHECK(row[4] <= 1e-6);
    CHECK(row[5] <= 1e-6);
    CHECK(row[6] <= 1e-6);
  }

  r = run({"flow", "heat", "--init", "uniform:1", "--t-end", "1", "--grid-n", "16", "--dt", "1e-4",
           "--format", "json"});
  CHECK(r.code == kExitBlowup);
  const auto j = json::parse(r.out);
  CHECK(j["blowup_time"].get<double>() == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(r.err.find("blowup") != std::string::npos);

  CHECK(run({"flow", "heat", "--init", "sine", "--dt", "1", "--grid-n", "32"}).code == kExitDomain);
  const auto s1 = run({"flow", "kdv", "--init", "random", "--seed", "5", "--t-end", "0.01", "--grid-n", "64"});
  const auto s2 = run({"flow", "kdv", "--init", "random", "--seed", "5", "--t-end", "0.01", "--grid-n", "64"});
  const auto s3 = run({"flow", "kdv", "--init", "random", "--seed", "6", "--t-end", "0.01", "--grid-n", "64"});
  CHECK(s1.out == s2.out);
  CHECK(s1.out != s3.out);
}

TEST_CASE("snapshots and file input") {
  const std::string init = "cli_init_test.txt", snaps = "cli_snaps_test.csv";
  {
    std::ofstream f(init);
    for (int j = 0; j < 32; ++j) f << 1.0 + 0.1 * std::sin(2.0 * pi * j / 32) << "\n";
  }
  auto r = run({"flow", "heat", "--init", "file:" + init, "--grid-n", "32", "--t-end", "0.01",
                "--snapshots", "10", "--snapshot-out", snaps});
  CHECK(r.code == kExitOk);
  std::ifstream f(snaps);
  std::stringstream buf;
  buf << f.rdbuf();
  std::string header;
  const auto rows = parse_csv(buf.str(), header);
  CHECK(header == "t,s,value");
  CHECK(rows.size() % 32 == 0);
  CHECK(rows.size() >= 64);
  CHECK(run({"flow", "heat", "--init", "file:" + init, "--grid-n", "64"}).code == kExitDomain);
  std::remove(init.c_str());
  std::remove(snaps.c_str());
  CHECK(run({"flow", "heat", "--init", "file:/nonexistent/init.txt"}).code == kExitIo);
}

TEST_CASE("usage, I/O and config") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"roots", "--lambda", "4"}).code == kExitUsage);
  CHECK(run({"roots", "--lambda", "x", "--mu", "2"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"roots", "--lambda", "4", "--mu", "2", "--out", "/nonexistent/dir/x.json"}).code == kExitIo);
  CHECK(run({"roots", "--config", "/nonexistent/cfg"}).code == kExitIo);

  const std::string cfg = "cli_config_test.cfg";
  {
    std::ofstream f(cfg);
    f << "# defaults\nlambda = 4\nmu=2\n";
  }
  auto j = json::parse(run({"roots", "--config", cfg}).out);
  CHECK(j["mu"].get<double>() == 2.0);
  j = json::parse(run({"roots", "--config", cfg, "--mu", "0"}).out);
  CHECK(j["mu"].get<double>() == 0.0);
  CHECK(j["lambda"].get<double>() == 4.0);
  std::remove(cfg.c_str());
}
