#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(EXACTDIFF_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < s.size()) {
    auto nl = s.find('\n', start);
    if (nl == std::string::npos) nl = s.size();
    lines.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

TEST_CASE("table 3 csv carries the published rows") {
  const auto res = run_cli("table 3 --format csv");
  CHECK(res.exit_code == 0);
  const auto lines = lines_of(res.out);
  REQUIRE(lines.size() == 11);  // header + 10 rows
  CHECK(lines[0] ==
        "lambda_cm,lambda_edm,rate_sdm,d_percent,g_factor,matches_paper");
  CHECK(lines[3] == "0.5,0.5,0.405,18.91,2.574,true");
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(lines[i].find("true") != std::string::npos);
}

TEST_CASE("table 3 json round-trips and is byte-deterministic") {
  const auto a = run_cli("table 3 --format json");
  const auto b = run_cli("table 3 --format json");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json payload = json::parse(a.out);
  REQUIRE(payload["rows"].size() == 10);
  CHECK(payload["rows"][9]["g_factor"].get<double>() == doctest::Approx(4242.0).epsilon(0.005));
  CHECK(payload["rows"][0]["rate_sdm"].get<double>() == doctest::Approx(0.0953102).epsilon(1e-5));
}

TEST_CASE("diff: exact operator via json payload") {
  const auto res = run_cli("diff --exact --order 1 --signal exp:0.5 --t 0 --format json");
  CHECK(res.exit_code == 0);
  const json payload = json::parse(res.out);
  CHECK(payload["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(payload["method"].get<std::string>() == "abel");
}

TEST_CASE("diff: standard operator") {
  const auto res = run_cli("diff --standard --signal pow:2 --t 3 --format json");
  CHECK(res.exit_code == 0);
  const json payload = json::parse(res.out);
  CHECK(payload["value"].get<double>() == doctest::Approx(5.0));
}

TEST_CASE("diff: aliasing refusal exits with code 2") {
  const auto res = run_cli("diff --exact --order 1 --signal sin:4.0 --t 0 --step 1");
  CHECK(res.exit_code == 2);
}

TEST_CASE("usage errors exit with 64") {
  CHECK(run_cli("diff --signal bogus:1 --t 0").exit_code == 64);
  CHECK(run_cli("table 7").exit_code == 64);
  CHECK(run_cli("growth --horizon 3").exit_code == 64);  // no rate given
  CHECK(run_cli("verify nosuchsuite").exit_code == 64);
}

TEST_CASE("growth: equilibrium stays flat and the horizon ratio matches G") {
  const auto eq = run_cli("growth --lambda 0.3 --y0 10 --a 3 --s 0.3 --v 1 --format json");
  CHECK(eq.exit_code == 0);
  const json payload = json::parse(eq.out);
  for (const auto& row : payload["rows"]) {
    CHECK(row["cm"].get<double>() == doctest::Approx(10.0));
    CHECK(row["sdm"].get<double>() == doctest::Approx(10.0));
    CHECK(row["edm"].get<double>() == doctest::Approx(10.0));
  }

  const auto g = run_cli("growth --lambda 0.9 --y0 1 --a 0 --horizon 10 --format json");
  const json gp = json::parse(g.out);
  CHECK(gp["final_ratio_cm_sdm"].get<double>() == doctest::Approx(13.22).epsilon(0.005));
  CHECK(gp["g_factor_expected"].get<double>() ==
        doctest::Approx(gp["final_ratio_cm_sdm"].get<double>()).epsilon(1e-12));

  const auto flat = run_cli("growth --lambda 0.3 --horizon 0 --format csv");
  const auto lines = lines_of(flat.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].find("0,0,1,1,1") == 0);
}

TEST_CASE("csv and markdown are well formed") {
  const auto csv = run_cli("table 1 --format csv");
  CHECK(csv.exit_code == 0);
  const auto lines = lines_of(csv.out);
  REQUIRE(lines.size() == 6);
  for (const auto& l : lines) CHECK(std::count(l.begin(), l.end(), ',') == 4);

  const auto md = run_cli("table 1");
  CHECK(md.out.find("| family |") != std::string::npos);
}
