#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct run_result {
  int code;
  std::string output;  // captured stdout
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "qsis_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

run_result run(const std::string& args, const std::string& env = "") {
  const fs::path out = work_dir() / "stdout.txt";
  const std::string cmd = env + " " + std::string(QSIS_CLI_PATH) + " " + args +
                          " > " + out.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  const int code = WEXITSTATUS(status);
  return {code, read_file(out)};
}

fs::path spec_file(const char* name, const json& j) {
  const fs::path p = work_dir() / name;
  write_file(p, j.dump());
  return p;
}

const std::string kRect = spec_file("rect.json", {{"kind", "rect"}}).string();
const std::string kHat =
    spec_file("hat.json", {{"kind", "bspline"}, {"order", 1}}).string();
const std::string kStep =
    spec_file("step.json",
              {{"kind", "step"}, {"J", 1}, {"coeffs", {0.0, 1.0, 0.5}}})
        .string();
const std::string kShift = spec_file("shift.json", {{"model", "adversarial"},
                                                    {"L", 0.2},
                                                    {"grid_K", 16}})
                               .string();
const std::string kSmall = spec_file("small.json", {{"model", "adversarial"},
                                                    {"L", 0.01},
                                                    {"grid_K", 16}})
                               .string();

}  // namespace

TEST_CASE("analyze: indicator bounds are unit") {
  const auto r = run("analyze --generator " + kRect +
                     " --resolution 256 --tail-k 2000");
  REQUIRE(r.code == 0);
  const json report = json::parse(r.output);
  const auto& bounds = report.at("riesz_bounds_p2").at("squared");
  CHECK(std::abs(bounds.at("lower").get<double>() - 1.0) < 1e-3);
  CHECK(std::abs(bounds.at("upper").get<double>() - 1.0) < 1e-3);
  CHECK(report.at("lattice_system") == "riesz-basis");
}

TEST_CASE("analyze: hat spectrum and a constant band-limited profile") {
  const auto hat = run("analyze --generator " + kHat +
                       " --resolution 256 --tail-k 2000");
  REQUIRE(hat.code == 0);
  const json hj = json::parse(hat.output);
  CHECK(std::abs(hj.at("spectrum").at("g_min").get<double>() - 1.0 / 3.0) < 1e-3);
  CHECK(std::abs(hj.at("spectrum").at("g_max").get<double>() - 1.0) < 1e-3);

  const std::string sinc =
      spec_file("sinc.json", {{"kind", "sinc"}}).string();
  const auto sc = run("analyze --generator " + sinc + " --resolution 64 --tail-k 8");
  REQUIRE(sc.code == 0);
  const json sj = json::parse(sc.output);
  CHECK(sj.at("spectrum").at("g_min").get<double>() == 1.0);
  CHECK(sj.at("spectrum").at("g_max").get<double>() == 1.0);
}

TEST_CASE("certify: indicator passes at 0.2") {
  const auto r = run("certify --generator " + kRect + " --perturb " + kShift +
                     " --p 2 --samples 10");
  REQUIRE(r.code == 0);
  const json report = json::parse(r.output);
  bool saw_rect = false;
  for (const auto& c : report.at("certificates")) {
    if (c.value("theorem", "") == "RECT") {
      saw_rect = true;
      CHECK(c.at("verdict") == "pass");
      CHECK(c.at("budget_Cp").get<double>() == doctest::Approx(0.8));
    }
  }
  CHECK(saw_rect);
}

TEST_CASE("certify: hat budget and comparison constant") {
  const auto r = run("certify --generator " + kHat + " --perturb " + kSmall +
                     " --p 2 --samples 10");
  REQUIRE(r.code == 0);
  const json report = json::parse(r.output);
  bool saw = false;
  for (const auto& c : report.at("certificates")) {
    if (c.value("theorem", "") == "SOBOLEV_RECT") {
      saw = true;
      CHECK(c.at("budget_Cp").get<double>() == doctest::Approx(0.06).epsilon(1e-9));
      CHECK(c.at("verdict") == "pass");
    }
  }
  CHECK(saw);
  CHECK(report.contains("fmr_comparison"));
  CHECK(report.at("fmr_comparison").contains("C_prime"));
  CHECK(report.contains("per_index_radii"));
}

TEST_CASE("certify: step at p = 1 reports the dual-exponent error") {
  const auto r = run("certify --generator " + kStep + " --perturb " + kSmall +
                     " --p 1 --samples 10 --estimate-bounds");
  REQUIRE(r.code == 0);
  const json report = json::parse(r.output);
  bool saw = false;
  for (const auto& c : report.at("certificates")) {
    if (c.value("theorem", "") == "STEP") {
      saw = true;
      REQUIRE(c.contains("error"));
      CHECK(c.at("error").get<std::string>().find("p'") != std::string::npos);
    }
  }
  CHECK(saw);
}

TEST_CASE("sweep: single verdict flip across the indicator threshold") {
  const fs::path out = work_dir() / "sweep.csv";
  const auto r = run("sweep --generator " + kRect + " --perturb " + kShift +
                     " --p 2 --samples 5 --l-grid 0,0.05,0.1,0.15,0.2,0.25,0.3" +
                     " --format csv --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.output.empty());  // everything went to the file
  std::istringstream csv(read_file(out));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("# qsis-sweep-v1", 0) == 0);
  std::getline(csv, line);  // header row
  CHECK(line.rfind("L,RECT_budget_Cp,RECT_verdict,oracle_power", 0) == 0);
  int flips = 0;
  std::string prev;
  double prev_budget = -1.0;
  while (std::getline(csv, line)) {
    std::stringstream row(line);
    std::string l_str, budget_str, verdict;
    std::getline(row, l_str, ',');
    std::getline(row, budget_str, ',');
    std::getline(row, verdict, ',');
    const double budget = std::stod(budget_str);
    CHECK(budget >= prev_budget);
    prev_budget = budget;
    if (!prev.empty() && verdict != prev) ++flips;
    prev = verdict;
  }
  CHECK(flips == 1);
}

TEST_CASE("sweep: empty grid is a config error") {
  const auto r = run("sweep --generator " + kRect + " --perturb " + kShift +
                     " --p 2 --l-grid '' --format csv");
  CHECK(r.code == 2);
}

TEST_CASE("config errors exit with code 2") {
  CHECK(run("analyze --generator /nonexistent.json").code == 2);
  CHECK(run("analyze --generator " + kRect + " --p 32").code == 2);
  CHECK(run("analyze --generator " + kRect + " --format csv").code == 2);
  CHECK(run("certify --generator " + kStep + " --perturb " + kSmall +
            " --p 3 --samples 5")
            .code == 2);  // p != 2 and no bounds source
}

TEST_CASE("reports re-parse to equal values") {
  for (const std::string cmd :
       {"analyze --generator " + kHat + " --resolution 64 --tail-k 100",
        "certify --generator " + kHat + " --perturb " + kSmall +
            " --p 2 --samples 5 --resolution 64 --tail-k 100",
        "oracle --generator " + kRect + " --perturb " + kShift +
            " --p 2 --samples 5"}) {
    const auto r = run(cmd);
    REQUIRE(r.code == 0);
    const json once = json::parse(r.output);
    CHECK(json::parse(once.dump()) == once);
  }
}

TEST_CASE("seeded runs are byte-identical across thread counts") {
  const std::string cmd = "oracle --generator " + kHat + " --perturb " + kShift +
                          " --p 2 --samples 40 --seed 11";
  const auto serial = run(cmd, "QSIS_THREADS=1");
  const auto parallel = run(cmd, "QSIS_THREADS=4");
  REQUIRE(serial.code == 0);
  REQUIRE(parallel.code == 0);
  CHECK(serial.output == parallel.output);
  const auto again = run(cmd, "QSIS_THREADS=4");
  CHECK(again.output == parallel.output);
}

TEST_CASE("oracle csv emits per-sample ratios") {
  const auto r = run("oracle --generator " + kRect + " --perturb " + kShift +
                     " --p 2 --samples 7 --format csv");
  REQUIRE(r.code == 0);
  std::istringstream csv(r.output);
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("# qsis-oracle-samples-v1", 0) == 0);
  std::getline(csv, line);
  CHECK(line == "sample,ratio");
  int rows = 0;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 10);  // 7 samples + 3 probes
}

TEST_CASE("sweep: spline verdict flips at one twelfth") {
  const fs::path out = work_dir() / "hat_sweep.csv";
  const auto r = run("sweep --generator " + kHat + " --perturb " + kShift +
                     " --p 2 --samples 5 --format csv --resolution 256" +
                     " --tail-k 2000 --l-grid 0.06,0.07,0.08,0.09,0.1 --out " +
                     out.string());
  REQUIRE(r.code == 0);
  std::istringstream csv(read_file(out));
  std::string line;
  std::getline(csv, line);
  std::getline(csv, line);
  CHECK(line.rfind("L,SOBOLEV_RECT_budget_Cp,SOBOLEV_RECT_verdict,"
                   "BSPLINE_budget_Cp,BSPLINE_verdict,oracle_power", 0) == 0);
  std::vector<std::pair<double, std::string>> spline_verdicts;
  while (std::getline(csv, line)) {
    std::stringstream row(line);
    std::string l_str, skip, verdict;
    std::getline(row, l_str, ',');
    std::getline(row, skip, ',');   // rectangle budget
    std::getline(row, skip, ',');   // rectangle verdict
    std::getline(row, skip, ',');   // spline budget
    std::getline(row, verdict, ',');
    spline_verdicts.emplace_back(std::stod(l_str), verdict);
  }
  for (const auto& [l, verdict] : spline_verdicts) {
    CHECK(verdict == (l < 1.0 / 12.0 ? "pass" : "fail"));
  }
}

TEST_CASE("grid radius flag overrides the perturbation spec") {
  const auto r = run("oracle --generator " + kRect + " --perturb " + kShift +
                     " --p 2 --samples 3 --grid-k 6");
  REQUIRE(r.code == 0);
  const json report = json::parse(r.output);
  CHECK(report.at("report").at("grid_K") == 6);
}

TEST_CASE("oracle report includes the gap-residual demo for the indicator") {
  const auto r = run("oracle --generator " + kRect + " --perturb " + kShift +
                     " --p 2 --samples 5 --problem1-delta 0.3");
  REQUIRE(r.code == 0);
  const json report = json::parse(r.output);
  REQUIRE(report.contains("problem1"));
  const double perturbed = report.at("problem1").at("residual_perturbed");
  const double unperturbed = report.at("problem1").at("residual_unperturbed");
  CHECK(std::abs(perturbed - std::sqrt(0.3)) < 1e-9);
  CHECK(unperturbed < perturbed);
}

TEST_CASE("bounds display honors the convention flag") {
  const auto r = run("analyze --generator " + kHat +
                     " --resolution 64 --tail-k 200 --convention squared");
  REQUIRE(r.code == 0);
  const json report = json::parse(r.output);
  CHECK(report.at("riesz_bounds_p2").contains("squared"));
  CHECK_FALSE(report.at("riesz_bounds_p2").contains("unsquared"));
  const auto both = run("analyze --generator " + kHat +
                        " --resolution 64 --tail-k 200");
  const json rb = json::parse(both.output).at("riesz_bounds_p2");
  CHECK(rb.contains("squared"));
  CHECK(rb.contains("unsquared"));
}
