#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "machina/semigroup.hpp"
#include "oracles.hpp"

using namespace machina;

namespace {

std::vector<std::vector<Element>> rows_of(std::string_view spec) {
  return named(spec).rows();
}

}  // namespace

TEST_CASE("from_table accepts small associative tables") {
  auto c2 = from_table(2, {{0, 1}, {1, 0}});
  CHECK(c2.order() == 2);
  CHECK(c2(1, 1) == 0);
  auto lz = from_table(2, {{0, 0}, {1, 1}});
  CHECK(classify(lz).is_left_zero);
}

TEST_CASE("from_table reports the lexicographically first failing triple") {
  // Hand evaluation: (1*0)*1 = 0*1 = 1 while 1*(0*1) = 1*1 = 0, and every
  // triple before (1,0,1) associates. (1,1,1) fails as well but comes later.
  std::vector<std::vector<Element>> bad{{0, 1}, {0, 0}};
  try {
    (void) from_table(2, bad);
    FAIL("expected NonAssociative");
  } catch (NonAssociative const& e) {
    CHECK(e.a == 1);
    CHECK(e.b == 0);
    CHECK(e.c == 1);
  }
  std::vector<Element> flat{0, 1, 0, 0};
  auto                 t = [&](Element a, Element b) { return flat[a * 2 + b]; };
  CHECK(t(t(1, 1), 1) != t(1, t(1, 1)));
}

TEST_CASE("from_table range and order errors") {
  CHECK_THROWS_AS(from_table(2, {{0, 2}, {0, 0}}), OutOfRange);
  try {
    (void) from_table(2, {{0, 0}, {5, 0}});
  } catch (OutOfRange const& e) {
    CHECK(e.row == 1);
    CHECK(e.col == 0);
    CHECK(e.value == 5);
  }
  CHECK_THROWS_AS(from_table(0, {}), SemigroupError);
  std::vector<Element> big(257 * 257, 0);
  CHECK_THROWS_AS(from_flat_table(257, big), OrderTooLarge);
  CHECK_THROWS_AS(from_table(2, {{0, 0}}), SemigroupError);
}

TEST_CASE("named families") {
  CHECK(rows_of("rightzero:2") == std::vector<std::vector<Element>>{{0, 1}, {0, 1}});
  CHECK(rows_of("leftzero:2") == std::vector<std::vector<Element>>{{0, 0}, {1, 1}});
  CHECK(rows_of("chain:2") == std::vector<std::vector<Element>>{{0, 0}, {0, 1}});
  CHECK(rows_of("null:2") == std::vector<std::vector<Element>>{{0, 0}, {0, 0}});
  CHECK(rows_of("trivial") == std::vector<std::vector<Element>>{{0}});
  auto c3 = named("cyclic:3");
  for (Element a = 0; a < 3; ++a) {
    for (Element b = 0; b < 3; ++b) {
      CHECK(c3(a, b) == (a + b) % 3);
    }
  }
  CHECK_THROWS_AS(named("bogus:2"), UnknownFamily);
  CHECK_THROWS_AS(named("cyclic:0"), SemigroupError);
  CHECK_THROWS_AS(named("cyclic"), SemigroupError);
  CHECK(named("cyclic:2*cyclic:2").order() == 4);
}

TEST_CASE("direct products") {
  auto p = direct_product(named("chain:2"), named("leftzero:2"));
  CHECK(p.order() == 4);
  for (Element i = 0; i < 4; ++i) {
    for (Element j = 0; j < 4; ++j) {
      Element a = std::min(i / 2, j / 2);
      Element b = i % 2;
      CHECK(p(i, j) == a * 2 + b);
    }
  }
  CHECK(direct_product(named("trivial"), named("rightzero:3")) == named("rightzero:3"));

  auto klein = direct_product(named("cyclic:2"), named("cyclic:2"));
  auto kc    = classify(klein);
  CHECK(kc.is_group);
  CHECK(kc.is_commutative);
  for (Element a = 0; a < 4; ++a) {
    CHECK(klein(a, a) == 0);
  }
  CHECK_THROWS_AS(direct_product(named("cyclic:20"), named("cyclic:20"), 256),
                  OrderTooLarge);
}

TEST_CASE("products of valid semigroups stay associative") {
  auto small = machina::testing::iso_catalog(2);
  for (auto const& a : small) {
    for (auto const& b : small) {
      auto p = direct_product(a, b);
      CHECK_FALSE(first_nonassociative(p.order(), p.table()).has_value());
    }
  }
}

TEST_CASE("classify") {
  auto lz = classify(named("leftzero:2"));
  CHECK(lz.is_left_zero);
  CHECK_FALSE(lz.is_right_zero);
  CHECK(lz.idempotents == std::vector<Element>{0, 1});
  auto c2 = classify(named("cyclic:2"));
  CHECK(c2.is_group);
  CHECK(c2.is_commutative);
  CHECK(c2.idempotents == std::vector<Element>{0});
  CHECK(classify(named("null:2")).idempotents == std::vector<Element>{0});
  CHECK_FALSE(classify(named("chain:2")).is_group);
  CHECK(classify(named("trivial")).is_group);
  CHECK(classify(named("rightzero:3")).is_right_zero);
}

TEST_CASE("word products and labels") {
  auto                 c3 = named("cyclic:3");
  std::vector<Element> w{1, 1, 2, 1};
  CHECK(c3.product(w) == 2);
  auto s = from_table(2, {{0, 1}, {1, 0}}, std::vector<std::string>{"e", "g"});
  CHECK(s.label(1) == "g");
  CHECK(named("chain:2").label(1) == "1");
}
