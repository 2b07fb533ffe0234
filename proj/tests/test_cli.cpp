#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(IHR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return RunResult{WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("families subcommand emits descriptors") {
  const auto r = run_cli("families");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.is_array());
  CHECK(j.size() == 7);
  bool saw_hc2 = false;
  for (const auto& fam : j)
    if (fam["family"] == "hc:2") saw_hc2 = true;
  CHECK(saw_hc2);
}

TEST_CASE("feasible: hc2 inside the corrected region, hc1 never") {
  const auto good = run_cli("feasible --family hc:2 --c 0.9 --d 0.0");
  CHECK(good.exit_code == 0);
  const json jg = json::parse(good.out);
  for (const auto& rep : jg["reports"]) CHECK(rep["verdict"] == "feasible");

  const auto bad = run_cli("feasible --family hc:1 --c 1.0 --d 0.0");
  CHECK(bad.exit_code == 0);
  const json jb = json::parse(bad.out);
  for (const auto& rep : jb["reports"]) CHECK(rep["verdict"] == "infeasible");
}

TEST_CASE("erratum flags ride along in the notes array") {
  const auto r = run_cli("feasible --family hc:2 --c 1.2 --d 0.0 --method analytic");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  bool flagged = false;
  for (const auto& note : j["reports"][0]["notes"])
    if (std::string(note).find("ERRATUM 1") != std::string::npos) flagged = true;
  CHECK(flagged);
}

TEST_CASE("laplace values and domain errors") {
  const auto one = run_cli("laplace --family ressel:1 --lambda 0");
  CHECK(one.exit_code == 0);
  CHECK(std::stod(one.out) == doctest::Approx(1.0));

  const auto l1 = run_cli("laplace --family ressel:1 --lambda 1");
  CHECK(std::stod(l1.out) == doctest::Approx(0.3178444328993727).epsilon(1e-9));

  const auto err = run_cli("laplace --family gamma:2 --lambda 0");
  CHECK(err.exit_code == 1);

  const auto usage = run_cli("laplace --family nosuch:1 --lambda 1");
  CHECK(usage.exit_code == 2);

  const auto missing = run_cli("laplace --family gamma:2");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("hazard CSV output is deterministic and well formed") {
  const std::string args =
      "hazard --family gamma:2 --lambda-mid 1.5 --c 0.5 --d 0.0 --x-lo 0.1 --x-hi 5 --n 20";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.substr(0, 26) == "x,density,survival,hazard\n");
  // 20 data rows plus the header
  int lines = 0;
  for (char ch : a.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 21);
  CHECK(a.out.find('\r') == std::string::npos);
}

TEST_CASE("plan round trips through the hazard subcommand") {
  const std::string plan_path = "/tmp/ihr_test_plan.json";
  const auto made =
      run_cli("plan --family hc:2 --lambda-mid 0.1 --c 0.8 --d 0.05 --out " + plan_path);
  CHECK(made.exit_code == 0);
  const json plan = json::parse(made.out);
  CHECK(plan["p"].get<double>() > 0);

  const auto haz = run_cli("hazard --plan " + plan_path +
                           " --x-lo -4 --x-hi 4 --n 9 --format json");
  CHECK(haz.exit_code == 0);
  const json jh = json::parse(haz.out);
  for (const auto& key : {"family", "lambda_mid", "c", "d", "lambda1", "lambda2", "p",
                          "p1", "p2"})
    CHECK(jh["plan"][key] == plan[key]);
  std::remove(plan_path.c_str());
}

TEST_CASE("verification suites pass") {
  for (const std::string suite : {"lemmas", "errata"}) {
    const auto r = run_cli("verify --suite " + suite);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["checks"].size() > 0);
  }
}

TEST_CASE("unknown subcommand is a usage error") {
  CHECK(run_cli("frobnicate").exit_code == 2);
}
