// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
};

Result run_cli(const std::string& args) {
  const std::string cmd = std::string(EXCH_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST_CASE("ewens-pitman probability") {
  const auto r = run_cli("pmf ewens-pitman --alpha 0.5 --theta 0.5 --partition \"[[1,2]]\"");
  REQUIRE(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["log_prob"].get<double>() == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-14));
  CHECK(j["prob"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto a = run_cli("sample polya --alphas 1,1 --n 3 --seed 7");
  const auto b = run_cli("sample polya --alphas 1,1 --n 3 --seed 7");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["labels"].size() == 3);
  const auto c = run_cli("sample crp --alpha 0.5 --theta 1 --n 50");
  const auto d = run_cli("sample crp --alpha 0.5 --theta 1 --n 50 --seed 0");
  CHECK(c.out == d.out);
}

TEST_CASE("every subcommand produces parseable output") {
  for (const char* args :
       {"sample crp --alpha 0.5 --theta 1 --n 20 --seed 1", "sample gem --alpha 0.5 --theta 1 --depth 5 --seed 1",
        "sample dirichlet --alphas 1,2,3 --method stick --seed 1", "sample dirichlet --alphas 1,2,3 --seed 1",
        "pmf polya-seq --alphas 1,1 --seq 1,2,1", "pmf polya-counts --alphas 1,1 --counts 2,1",
        "blockweights --alpha 0 --theta 1 --n 30 --seed 2 --ranked", "rho --alpha 0 --theta 1 --k 1 --x 0.5",
        "blockcount --alpha 0.5 --theta 0.5 --n 2 --sizes 1,1"}) {
    INFO(args);
    const auto r = run_cli(args);
    CHECK(r.status == 0);
    CHECK(json::accept(r.out));
  }
  CHECK(json::parse(run_cli("rho --alpha 0 --theta 1 --k 1 --x 0.5").out)["rho"].get<double>() == doctest::Approx(2.0));
  CHECK(json::parse(run_cli("pmf polya-seq --alphas 1,1 --seq 1,1").out)["prob"].get<double>() ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("csv output has a header row and one record per sample") {
  const auto r = run_cli("sample polya --alphas 1,1 --n 4 --seed 3 --format csv");
  REQUIRE(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "index,label");
  int records = 0;
  while (std::getline(lines, line)) ++records;
  CHECK(records == 4);
}

TEST_CASE("usage and parameter errors exit with status 2") {
  CHECK(run_cli("").status == 2);
  CHECK(run_cli("bogus").status == 2);
  CHECK(run_cli("sample polya --n 3").status == 2);
  CHECK(run_cli("sample polya --alphas 1,x --n 3").status == 2);
  CHECK(run_cli("sample crp --alpha -1 --theta 2.5 --n 3").status == 2);
  CHECK(run_cli("pmf ewens-pitman --alpha 0.5 --theta 0.5 --partition \"[[1],[1]]\"").status == 2);
  CHECK(run_cli("verify --suite bogus").status == 2);
  CHECK(run_cli("rho --alpha 0.5 --theta 0.5 --k 2 --x 0.3").status == 2);
}

TEST_CASE("verify emits one passing json line per check") {
  const auto r = run_cli("verify --suite crp-exact --seed 42");
  CHECK(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = json::parse(line);
    CHECK(j["passed"].get<bool>());
    ++count;
  }
  CHECK(count > 0);
}
