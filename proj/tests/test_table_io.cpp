#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "machina/table_io.hpp"

using namespace machina;
namespace fs = std::filesystem;

namespace {

fs::path scratch(std::string const& name) {
  auto dir = fs::temp_directory_path() / "machina_test_table_io";
  fs::create_directories(dir);
  return dir / name;
}

void write(fs::path const& p, std::string const& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("text round trip") {
  auto s = named("chain:2");
  auto p = scratch("chain2.txt");
  save(s, p);
  CHECK(load(p) == s);
  CHECK(parse_table_text(format_table_text(named("cyclic:3"))) == named("cyclic:3"));
}

TEST_CASE("json round trip keeps labels") {
  auto s = from_table(2, {{0, 1}, {1, 0}}, std::vector<std::string>{"e", "g"});
  auto p = scratch("c2.json");
  save(s, p);
  auto back = load(p);
  CHECK(back == s);
  REQUIRE(back.labels());
  CHECK((*back.labels())[1] == "g");
}

TEST_CASE("comments and blank lines are skipped") {
  auto s = parse_table_text("# chain\n\n2\n# rows\n0 0\n0 1\n");
  CHECK(s == named("chain:2"));
}

TEST_CASE("out of range entry") {
  auto p = scratch("oor.txt");
  write(p, "2\n0 2\n0 0\n");
  try {
    (void) load(p);
    FAIL("expected OutOfRange");
  } catch (OutOfRange const& e) {
    CHECK(e.row == 0);
    CHECK(e.col == 1);
    CHECK(e.value == 2);
  }
}

TEST_CASE("non-associative file passes the table error through") {
  auto p = scratch("nonassoc.txt");
  write(p, "2\n0 1\n0 0\n");
  try {
    (void) load(p);
    FAIL("expected NonAssociative");
  } catch (NonAssociative const& e) {
    CHECK(e.a == 1);
    CHECK(e.b == 0);
    CHECK(e.c == 1);
  }
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](std::string const& text) -> std::size_t {
    try {
      (void) parse_table_text(text);
    } catch (ParseError const& e) {
      return e.line;
    }
    return 0;
  };
  CHECK(line_of("x\n") == 1);
  CHECK(line_of("# c\n2\n0 0\n0 a\n") == 4);
  CHECK(line_of("2\n0 0 0\n0 0\n") == 2);
  CHECK(line_of("2\n0 0\n") == 2);
  CHECK(line_of("2\n0 0\n0 0\n0 0\n") == 4);
  CHECK_THROWS_AS(parse_table_text(""), ParseError);
  CHECK_THROWS_AS(parse_table_json("{\"order\": 2,\n \"table\": [[0,0],[0]]}"),
                  ParseError);
  CHECK_THROWS_AS(parse_table_json("{\n\"order\": 2,\n"), ParseError);
  CHECK_THROWS_AS(load(scratch("missing.txt")), SemigroupError);
}

TEST_CASE("load_source prefers existing files, then named families") {
  auto p = scratch("lz.txt");
  save(named("leftzero:2"), p);
  CHECK(load_source(p.string()) == named("leftzero:2"));
  CHECK(load_source("rightzero:2") == named("rightzero:2"));
  CHECK_THROWS_AS(load_source("no-such-file-or-family"), SemigroupError);
}
