#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int         code = -1;
  std::string out;
};

Run cli(std::string const& args) {
  std::string cmd = std::string(MACHINA_CLI_PATH) + " " + args + " 2>/dev/null";
  Run         r;
  FILE*       pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
    r.out.append(buf.data(), n);
  }
  int status = pclose(pipe);
  r.code     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(Run const& r, std::string const& needle) {
  return r.out.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("analyze") {
  auto rz = cli("analyze rightzero:2");
  CHECK(rz.code == 0);
  CHECK(has(rz, "C*(S): infinite (R-related idempotent pair 0,1)"));
  CHECK(has(rz, "C(S): finite"));

  auto c2 = cli("analyze cyclic:2");
  CHECK(has(c2, "C(S): infinite (not H-trivial)"));
  CHECK(has(c2, "C*(S): infinite (not H-trivial)"));

  auto ch = cli("analyze chain:2");
  CHECK(has(ch, "C(S): finite"));
  CHECK(has(ch, "C*(S): finite"));
  CHECK(has(ch, "ideal I: {0}"));

  auto js  = cli("analyze chain:2 --format structured");
  auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["criteria"]["dual_finite"] == true);
  CHECK(doc["green"]["ideal_i"] == nlohmann::json::array({0}));

  CHECK(cli("analyze nosuch:2").code == 1);
  CHECK(cli("analyze").code == 1);
  CHECK(cli("frobnicate").code == 1);
}

TEST_CASE("analyze reads table files") {
  auto dir = std::filesystem::temp_directory_path() / "machina_test_cli";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "bad.txt") << "2\n0 1\n0 0\n";
  std::ofstream(dir / "ok.txt") << "# chain\n2\n0 0\n0 1\n";
  CHECK(cli("analyze " + (dir / "bad.txt").string()).code == 1);
  auto ok = cli("analyze " + (dir / "ok.txt").string());
  CHECK(ok.code == 0);
  CHECK(has(ok, "order: 2"));
}

TEST_CASE("closure") {
  auto ch = cli("closure chain:2 --dual --format structured");
  CHECK(ch.code == 0);
  auto doc = nlohmann::json::parse(ch.out);
  CHECK(doc["verdict"] == "finite");
  CHECK(doc["size"] == 2);

  auto c2 = cli("closure cyclic:2 --budget-elements 200 --format structured");
  CHECK(c2.code == 0);
  CHECK(nlohmann::json::parse(c2.out)["elements_found"] == 200);

  CHECK(cli("closure cyclic:2 --expect-finite --budget-elements 2000").code == 2);
  CHECK(cli("closure chain:2 --dual --expect-finite").code == 0);
  CHECK(cli("closure chain:2 --budget-elements 0").code == 1);
  CHECK(cli("closure cyclic:2 --budget-elements 300 --threads 2").out
        == cli("closure cyclic:2 --budget-elements 300 --threads 1").out);
}

TEST_CASE("free-check") {
  auto c3  = cli("free-check cyclic:3 --length 4 --format structured");
  auto doc = nlohmann::json::parse(c3.out);
  CHECK(doc["distinct_counts"] == nlohmann::json::array({3, 9, 27, 81}));
  CHECK(doc["is_free_up_to_l"] == true);

  auto rz = cli("free-check rightzero:2 --dual --length 5 --format structured");
  CHECK(nlohmann::json::parse(rz.out)["distinct_counts"]
        == nlohmann::json::array({2, 4, 8, 16, 32}));

  auto lz = cli("free-check leftzero:2 --length 3");
  CHECK(lz.code == 0);
  CHECK(has(lz, "not free"));
  CHECK(cli("free-check leftzero:2 --length 3 --assert-free").code == 3);
  CHECK(cli("free-check cyclic:2 --length 4 --assert-free").code == 0);
  CHECK(cli("free-check cyclic:2 --length 20 --budget-elements 1000").code == 1);
}

TEST_CASE("sweep") {
  auto two = cli("sweep --order 2 --budget-elements 2000 --format structured");
  CHECK(two.code == 0);
  auto doc = nlohmann::json::parse(two.out);
  CHECK(doc["records"].size() == 5);
  CHECK(doc["mismatches"].empty());
  CHECK(cli("sweep --order 5").code == 1);
  CHECK(cli("sweep --order 0").code == 1);
  CHECK(cli("sweep").code == 1);

  auto out = std::filesystem::temp_directory_path() / "machina_test_cli" / "sweep1";
  std::filesystem::create_directories(out.parent_path());
  auto one = cli("sweep --order 1 --out " + out.string());
  CHECK(one.code == 0);
  CHECK(has(one, "classes: 1"));
  CHECK(std::filesystem::exists(out));
  CHECK(std::filesystem::exists(out.string() + ".tsv"));
}

TEST_CASE("output is deterministic") {
  CHECK(cli("analyze cyclic:2*leftzero:2").out == cli("analyze cyclic:2*leftzero:2").out);
  CHECK(cli("sweep --order 2 --budget-elements 1000").out
        == cli("sweep --order 2 --budget-elements 1000").out);
}
