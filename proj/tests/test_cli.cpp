#include "catch2/catch_amalgamated.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef CASIMIR_CLI_PATH
#error "CASIMIR_CLI_PATH must be defined by the build system"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CASIMIR_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

TEST_CASE("force: single point, ideal mirrors") {
  const auto r = run_cli("force --model ideal --gap-um 0.1 --temperature-K 300");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "gap_um,force_pN_sum,force_pN_integral,n_terms,abs_err_pN");
  CHECK(lines[0].find('\r') == std::string::npos);
  const auto cells = split_csv(lines[1]);
  REQUIRE(cells.size() == 5);
  CHECK(std::stod(cells[0]) == 0.1);
  CHECK_THAT(std::stod(cells[1]), Catch::Matchers::WithinRel(272.3061, 1e-4));
  CHECK_THAT(std::stod(cells[2]), Catch::Matchers::WithinRel(272.2977, 1e-4));
  CHECK(std::stoi(cells[3]) >= 1);
}

TEST_CASE("force: gap sweep is ordered and monotone decreasing") {
  const auto r =
      run_cli("force --model plasma --omega-p 2e16 --gap-sweep 0.1:1.0:10:log");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 11);
  double prev_gap = 0.0, prev_force = 1e30;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 5);
    const double gap = std::stod(cells[0]);
    const double force = std::stod(cells[1]);
    CHECK(gap > prev_gap);
    CHECK(force < prev_force);
    prev_gap = gap;
    prev_force = force;
  }
  CHECK_THAT(prev_gap, Catch::Matchers::WithinRel(1.0, 1e-12));
}

TEST_CASE("force: drude without omega_tau is a configuration error") {
  const auto r = run_cli("force --model drude --gap-um 0.1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("omega_tau") != std::string::npos);
}

TEST_CASE("invalid model and invalid sweep are configuration errors") {
  CHECK(run_cli("force --model bogus").exit_code == 1);
  CHECK(run_cli("force --gap-sweep 1:2").exit_code == 1);
  CHECK(run_cli("force --gap-um 200 --radius-um 100").exit_code == 1);
}

TEST_CASE("help exits 0; missing subcommand exits 1") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 1);
}

TEST_CASE("correction: CSV row for the plasma model") {
  const auto r = run_cli("correction --model plasma --omega-p 2e16 --gap-um 0.1");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "gap_um,delta_numeric_pN,delta_closed_pN,delta_expansion_pN,alpha,"
        "relative_to_force");
  const auto cells = split_csv(lines[1]);
  REQUIRE(cells.size() == 6);
  CHECK_THAT(std::stod(cells[1]), Catch::Matchers::WithinAbs(2.54, 0.05));
  CHECK_THAT(std::stod(cells[2]), Catch::Matchers::WithinAbs(2.53, 0.01));
  CHECK_THAT(std::stod(cells[3]), Catch::Matchers::WithinAbs(2.893, 0.005));
  CHECK_THAT(std::stod(cells[4]), Catch::Matchers::WithinRel(0.0749481, 1e-5));
}

TEST_CASE("correction: ideal mirrors leave model-specific columns empty") {
  const auto r = run_cli("correction --model ideal --gap-um 0.1");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  const auto cells = split_csv(lines[1]);
  REQUIRE(cells.size() == 6);
  CHECK(cells[2].empty());
  CHECK(cells[3].empty());
  CHECK(cells[4].empty());
}

TEST_CASE("JSON output parses and round-trips byte-identically") {
  const auto r = run_cli(
      "correction --model plasma --omega-p 2e16 --gap-um 0.1 --format json");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.output);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["gap_um"] == 0.1);
  CHECK(doc[0]["alpha"].is_number());
  CHECK_FALSE(doc[0]["delta_closed_pN"].is_null());
  CHECK(doc.dump(2) + "\n" == r.output);

  const auto ri = run_cli("correction --model ideal --gap-um 0.1 --format json");
  const auto di = nlohmann::json::parse(ri.output);
  CHECK(di[0]["alpha"].is_null());
  CHECK(di[0]["delta_closed_pN"].is_null());
  CHECK(di[0]["delta_expansion_pN"].is_null());
}

TEST_CASE("force: JSON matches the CSV numbers") {
  const auto rj = run_cli("force --model ideal --gap-um 0.1 --format json");
  CHECK(rj.exit_code == 0);
  const auto doc = nlohmann::json::parse(rj.output);
  REQUIRE(doc.size() == 1);
  CHECK_THAT(doc[0]["force_pN_sum"].get<double>(),
             Catch::Matchers::WithinRel(272.3061, 1e-4));
  CHECK_THAT(doc[0]["force_pN_integral"].get<double>(),
             Catch::Matchers::WithinRel(272.2977, 1e-4));
}

TEST_CASE("--output writes the same bytes as stdout") {
  const std::string path = "cli_test_out.csv";
  const auto direct = run_cli("force --model ideal --gap-um 0.1");
  const auto filed = run_cli("force --model ideal --gap-um 0.1 --output " + path);
  CHECK(filed.exit_code == 0);
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == direct.output);
  std::remove(path.c_str());
}

TEST_CASE("config file provides defaults; flags override it") {
  const std::string path = "cli_test_cfg.ini";
  {
    std::ofstream f(path);
    f << "model=ideal\n";
    f << "gap-um=0.2\n";
  }
  const auto base = run_cli("force --config " + path);
  CHECK(base.exit_code == 0);
  const auto cells = split_csv(lines_of(base.output).at(1));
  CHECK(std::stod(cells[0]) == 0.2);

  const auto over = run_cli("force --config " + path + " --gap-um 0.1");
  const auto cells2 = split_csv(lines_of(over.output).at(1));
  CHECK(std::stod(cells2[0]) == 0.1);
  CHECK_THAT(std::stod(cells2[1]), Catch::Matchers::WithinRel(272.3061, 1e-4));
  std::remove(path.c_str());
}

TEST_CASE("validate prints one line per check and exits 3 iff any check fails") {
  const auto r = run_cli("validate");
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() >= 2);
  int fails = 0;
  for (size_t i = 0; i + 1 < lines.size(); ++i) {
    const bool is_pass = lines[i].rfind("[PASS]", 0) == 0;
    const bool is_fail = lines[i].rfind("[FAIL]", 0) == 0;
    CHECK((is_pass || is_fail));
    if (is_fail) {
      ++fails;
      // the only expected red checks are the two documented ones
      const bool known = lines[i].find("expansion-error-order") != std::string::npos ||
                         lines[i].find("drude-numeric-correction") != std::string::npos;
      CHECK(known);
    }
  }
  if (fails == 0) {
    CHECK(r.exit_code == 0);
    CHECK(lines.back() == "ALL CHECKS PASSED");
  } else {
    CHECK(r.exit_code == 3);
    CHECK(lines.back() == "SOME CHECKS FAILED");
  }
}

TEST_CASE("validate is sensitive to a perturbed result") {
  const auto r = run_cli("validate --perturb 1.001");
  CHECK(r.exit_code == 3);
  bool zeta3_failed = false;
  for (const auto& line : lines_of(r.output))
    if (line.rfind("[FAIL]", 0) == 0 && line.find("zeta3-identity") != std::string::npos)
      zeta3_failed = true;
  CHECK(zeta3_failed);
}
