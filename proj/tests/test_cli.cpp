#include <doctest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qcause/io.hpp"

namespace fs = std::filesystem;
using qcause::io::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("qcause_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const std::string cmd = std::string(QCAUSE_CLI_PATH) + " " + args + " 2>" +
                          (scratch() / "stderr.txt").string();
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

const char* kUniform = R"({"pabx": [[[0.25,0.25],[0.25,0.25]],[[0.25,0.25],[0.25,0.25]]]})";
const char* kChain = R"({"pabx": [[[1,0],[0,0]],[[0,0],[0,1]]]})";

}  // namespace

TEST_CASE("help exits 0 without side effects") {
  auto listing = [] {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(scratch())) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
  };
  (void)run("--help");
  const auto before = listing();
  for (const char* sub : {"", "bounds", "scan", "region", "verify", "construct"}) {
    const auto r = run(std::string(sub) + " --help --out " + (scratch() / "never.csv").string());
    CHECK(r.status == 0);
    CHECK(r.out.find("Usage") != std::string::npos);
  }
  CHECK(run("scan --help").out.find("alpha,violation,phi0,theta0") != std::string::npos);
  CHECK(run("region --help").out.find("p000,p001,classical,quantum,nonsignaling") != std::string::npos);
  CHECK(listing() == before);
}

TEST_CASE("bounds") {
  auto r = run("bounds --behavior " + write("u.json", kUniform));
  REQUIRE(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["classical_max"].get<double>() == doctest::Approx(-0.5));

  r = run("bounds --oracle --behavior " + write("c.json", kChain));
  REQUIRE(r.status == 0);
  j = json::parse(r.out);
  CHECK(j["classical_max"].get<double>() == doctest::Approx(1.0));
  CHECK(j["quantum"].get<double>() == doctest::Approx(1.0));
  CHECK(j["nonsignaling"].get<double>() == doctest::Approx(1.0));
  CHECK(j["classical_tight"]["min_ace"].get<double>() == doctest::Approx(1.0));
  CHECK(j["nonsignaling_tight"]["min_ace"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("bounds error exits") {
  CHECK(run("bounds --behavior " +
            write("bad.json", R"({"pabx": [[[0.5,0.25],[0.25,0.25]],[[0.25,0.25],[0.25,0.25]]]})"))
            .status == 2);
  CHECK(run("bounds --behavior " + write("junk.json", "{oops")).status == 2);
  CHECK(run("bounds --behavior " + (scratch() / "missing.json").string()).status == 2);
  CHECK(run("bounds").status == 2);
  CHECK(run("frobnicate").status == 2);

  // a = 0, b = x violates the instrumental inequality.
  const auto viol = write("v.json", R"({"pabx": [[[1,0],[0,1]],[[0,0],[0,0]]]})");
  CHECK(run("bounds --strict --behavior " + viol).status == 3);
  const auto lax = run("bounds --behavior " + viol);
  CHECK(lax.status == 0);
  CHECK(json::parse(lax.out)["instrumental_slack"].get<double>() == doctest::Approx(1.0));
  CHECK(run("bounds --strict --behavior " + write("u2.json", kUniform)).status == 0);
}

TEST_CASE("construct") {
  const auto opt_path = (scratch() / "opt.json").string();
  REQUIRE(run("construct --which optimal --out " + opt_path).status == 0);
  const auto opt = qcause::io::read_json_file(opt_path);
  CHECK(opt["metadata"]["violation"].get<double>() == doctest::Approx(3 - 2 * std::sqrt(2.0)).epsilon(1e-12));
  const auto model = qcause::io::model_from_json(opt["model"]);
  qcause::validate(model);

  const auto beh_path = write("opt_beh.json", opt["behavior"].dump());
  const auto b = json::parse(run("bounds --behavior " + beh_path).out);
  CHECK(b["classical_max"].get<double>() >= 3 - 2 * std::sqrt(2.0) - 1e-9);

  const auto maxent = json::parse(run("construct --which maxent").out);
  CHECK(std::abs(maxent["metadata"]["qace"].get<double>()) < 1e-12);
  CHECK(std::abs(qcause::qace(qcause::io::model_from_json(maxent["model"]))) < 1e-12);

  const auto s = json::parse(run("construct --which schmidt --coeffs 0.8,0.6").out);
  CHECK(s["metadata"]["lambda"].get<double>() == doctest::Approx(0.96));
  CHECK(s["metadata"]["gamma"].get<double>() == 0.0);

  CHECK(run("construct --which schmidt --coeffs 0.6,0.8").status == 2);
  CHECK(run("construct --which schmidt --coeffs 0.8,abc").status == 2);
  CHECK(run("construct --which schmidt").status == 2);
  CHECK(run("construct --which nope").status == 2);
}

TEST_CASE("scan") {
  const auto a = run("scan --curve alpha --steps 5");
  REQUIRE(a.status == 0);
  CHECK(a.out.rfind("alpha,violation,phi0,theta0\n", 0) == 0);
  const auto rows = parse_csv(a.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows.front()[0] == 0.0);
  CHECK(std::abs(rows.front()[1]) < 1e-12);
  CHECK(rows.back()[0] == doctest::Approx(std::numbers::pi / 4));
  CHECK(std::abs(rows.back()[1] - 3 * (std::sqrt(6.0) - 2) / 8) < 1e-6);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k][0] > rows[k - 1][0]);

  const auto p = run("scan --curve phi --steps 201 --jobs 2");
  REQUIRE(p.status == 0);
  const auto prow = parse_csv(p.out);
  REQUIRE(prow.size() == 201);
  std::size_t best = 0;
  for (std::size_t k = 0; k < prow.size(); ++k)
    if (prow[k][1] > prow[best][1]) best = k;
  CHECK(std::abs(prow[best][1] - (3 - 2 * std::sqrt(2.0))) < 1e-5);
  // Within half a grid step of the optimum.
  CHECK(std::abs(prow[best][0] - 0.2149 * std::numbers::pi) < 0.5 * (std::numbers::pi / 2) / 200 + 0.001 * std::numbers::pi);

  CHECK(run("scan --steps 1").status == 2);
  CHECK(run("scan --curve beta").status == 2);
  CHECK(run("scan --out " + (scratch() / "no_dir" / "x.csv").string()).status == 2);
}

TEST_CASE("CSV output is byte-stable across runs and thread counts") {
  const auto f1 = scratch() / "s1.csv";
  const auto f2 = scratch() / "s2.csv";
  REQUIRE(run("--jobs 1 scan --curve phi --steps 17 --out " + f1.string()).status == 0);
  REQUIRE(run("--jobs 3 scan --curve phi --steps 17 --out " + f2.string()).status == 0);
  CHECK(slurp(f1) == slurp(f2));
  CHECK(run("region --grid 31 --jobs 1").out == run("region --grid 31 --jobs 4").out);
}

TEST_CASE("region") {
  const auto r = run("region --grid 101");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 101 * 101);
  for (const auto& row : rows) {
    const bool on_line = row[0] == 0.5 || row[1] == 0.5;
    CHECK((row[7] == 1.0) == on_line);
  }
  CHECK(rows[0][2] <= 0.0);
  CHECK(rows[0][3] <= 0.0);
  CHECK(rows[0][4] <= 0.0);
  const auto& half_zero = rows[100 * 101 + 0];
  CHECK(half_zero[0] == 0.5);
  CHECK(half_zero[1] == 0.0);
  CHECK(half_zero[2] == doctest::Approx(0.5));
  CHECK(run("region --grid 1").status == 2);
}

TEST_CASE("verify") {
  const auto ok = run("verify --only 1,2");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("PASS criterion 1 optimal-violation") != std::string::npos);
  CHECK(ok.out.find("PASS criterion 2 maxent-cap") != std::string::npos);

  const auto bad = run("verify --only 1 --tamper optimal_violation=0.17");
  CHECK(bad.status == 4);
  CHECK(bad.out.find("FAIL criterion 1 optimal-violation") != std::string::npos);

  const auto ns = run("verify --only ns --json");
  const auto j = json::parse(ns.out);
  REQUIRE(j["criteria"].size() == 2);
  CHECK(j["criteria"][0]["id"] == 8);
  CHECK(j["criteria"][1]["id"] == 9);

  CHECK(run("verify --only nothing").status == 2);
  CHECK(run("verify --tamper bogus=1").status == 2);
  CHECK(run("verify --only 1 --tamper optimal_violation").status == 2);
}

TEST_CASE("piped output carries no color escape codes") {
  const auto r = run("verify --only 2");
  CHECK(r.out.find('\033') == std::string::npos);
}
