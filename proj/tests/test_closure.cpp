#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "json.hpp"
#include "machina/closure.hpp"
#include "oracles.hpp"

using namespace machina;
using Counts = std::vector<std::size_t>;

namespace {

std::vector<PointedTransducer> dual_gens(std::string_view spec) {
  return generators(dual_cayley(named(spec)));
}

std::vector<PointedTransducer> cayley_gens(std::string_view spec) {
  return generators(cayley(named(spec)));
}

Budget elements(std::size_t n) {
  Budget b;
  b.max_elements = n;
  return b;
}

}  // namespace

TEST_CASE("closure examples") {
  auto chain = closure(dual_gens("chain:2"));
  REQUIRE(chain.is_finite());
  CHECK(chain.finite().size() == 2);
  CHECK(output_map(chain.finite().elements[0]).map == std::vector<Symbol>{0, 0});
  CHECK(output_map(chain.finite().elements[1]).map == std::vector<Symbol>{0, 1});

  auto lz = closure(dual_gens("leftzero:3"));
  REQUIRE(lz.is_finite());
  CHECK(lz.finite().size() == 1);
  CHECK(lz.generator_count == 1);

  auto c2 = closure(dual_gens("cyclic:2"), elements(500));
  REQUIRE_FALSE(c2.is_finite());
  CHECK(c2.exhausted().elements_found == 500);
  CHECK(c2.exhausted().limit == Resource::elements);

  auto rz = closure(cayley_gens("rightzero:2"));
  REQUIRE(rz.is_finite());
  CHECK(rz.finite().size() == 1);
  CHECK(rz.finite().elements[0] == identity_transducer(2));
}

TEST_CASE("finite closures are closed and their tables are right") {
  for (auto const& s : machina::testing::iso_catalog(3)) {
    for (bool dual : {false, true}) {
      auto v = criteria(s);
      if (!(dual ? v.dual_finite : v.cayley_finite)) {
        continue;
      }
      auto gens = generators(dual ? dual_cayley(s) : cayley(s));
      auto r    = closure(gens);
      REQUIRE(r.is_finite());
      CHECK(verify_closed(r, gens));
      auto const& f = r.finite();
      for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < f.size(); ++j) {
          CHECK(compose(f.elements[i], f.elements[j]) == f.elements[f.table[i][j]]);
        }
        // each listed word really evaluates to its element
        std::vector<PointedTransducer> factors;
        for (auto k : f.words[i]) {
          factors.push_back(f.elements[k]);
        }
        CHECK(compose_all(factors) == f.elements[i]);
      }
    }
  }
}

TEST_CASE("parallel kernel matches the serial reference") {
  struct Case {
    std::string spec;
    bool        dual;
    std::size_t limit;
  };
  for (auto const& c : {Case{"rightzero:2", true, 700},
                        Case{"cyclic:3", false, 900},
                        Case{"chain:3", true, 1000},
                        Case{"cyclic:2*leftzero:2", true, 800},
                        Case{"null:3", false, 1000}}) {
    auto gens = generators(c.dual ? dual_cayley(named(c.spec)) : cayley(named(c.spec)));
    auto ref  = closure_reference(gens, elements(c.limit));
    for (std::size_t threads : {1, 2, 3}) {
      for (std::size_t batch : {1, 7, 256}) {
        auto par = closure(gens, elements(c.limit), {threads, batch});
        CHECK(closure_report_json(par) == closure_report_json(ref));
      }
    }
  }
}

TEST_CASE("budget limits other than elements") {
  Budget b;
  b.max_machine_states = 1;
  for (auto const& r : {closure(dual_gens("chain:2"), b),
                        closure_reference(dual_gens("chain:2"), b)}) {
    REQUIRE_FALSE(r.is_finite());
    CHECK(r.exhausted().limit == Resource::machine_states);
  }
  b.max_machine_states = 8;
  auto ref = closure_reference(dual_gens("rightzero:2"), b);
  REQUIRE_FALSE(ref.is_finite());
  CHECK(ref.exhausted().limit == Resource::machine_states);
  CHECK(std::string(to_string(Resource::time)) == "time");
}

TEST_CASE("growth keeps increasing for infinite cases") {
  auto r = closure(cayley_gens("cyclic:2"), elements(1000));
  REQUIRE(r.growth_by_length.size() >= 5);
  for (std::size_t i = 0; i + 2 < r.growth_by_length.size(); ++i) {
    CHECK(r.growth_by_length[i] == (std::size_t{2} << i));
  }
}

TEST_CASE("report rendering") {
  auto r   = closure(dual_gens("chain:2"));
  auto doc = nlohmann::json::parse(closure_report_json(r));
  CHECK(doc["verdict"] == "finite");
  CHECK(doc["size"] == 2);
  CHECK(doc["table"]["order"] == 2);
  auto text = closure_report_text(r);
  CHECK(text.find("finite") != std::string::npos);

  auto e    = closure(dual_gens("cyclic:2"), elements(50));
  auto edoc = nlohmann::json::parse(closure_report_json(e));
  CHECK(edoc["verdict"] == "exhausted");
  CHECK(edoc["elements_found"] == 50);
  CHECK(edoc["limit"] == "elements");
}

TEST_CASE("free_check examples") {
  auto c2 = free_check(cayley_gens("cyclic:2"), 5);
  CHECK(c2.distinct_counts == Counts{2, 4, 8, 16, 32});
  CHECK(c2.is_free_up_to_l);
  CHECK(c2.all_distinct);

  auto rz = free_check(dual_gens("rightzero:2"), 5);
  CHECK(rz.distinct_counts == Counts{2, 4, 8, 16, 32});
  CHECK(rz.is_free_up_to_l);

  auto lz = free_check(cayley_gens("leftzero:2"), 3);
  CHECK(lz.distinct_counts == Counts{2, 2, 2});
  CHECK_FALSE(lz.is_free_up_to_l);
  CHECK(free_check_text(lz).find("not free") != std::string::npos);

  auto c3 = free_check(cayley_gens("cyclic:3"), 4);
  CHECK(c3.distinct_counts == Counts{3, 9, 27, 81});

  CHECK_THROWS_AS(free_check(cayley_gens("cyclic:2"), 10, elements(100)), BudgetExceeded);
  CHECK_THROWS(free_check(cayley_gens("cyclic:2"), 0));
}

TEST_CASE("certificates") {
  auto rz = certificate(named("rightzero:2"), true, 6);
  REQUIRE(rz);
  auto const* pair = std::get_if<FreeRightZeroPair>(&rz->kind);
  REQUIRE(pair);
  CHECK(pair->e == 0);
  CHECK(pair->f == 1);
  CHECK(rz->all_distinct);
  CHECK(rz->kind_name() == "free_right_zero_pair");
  CHECK(rz->witness_words_checked == 6);

  auto c2 = certificate(named("cyclic:2"), false, 6);
  REQUIRE(c2);
  auto const* h = std::get_if<NontrivialHClass>(&c2->kind);
  REQUIRE(h);
  CHECK(h->h_class == std::vector<Element>{0, 1});
  CHECK(c2->all_distinct);
  CHECK(c2->kind_name() == "nontrivial_h_class");

  CHECK_FALSE(certificate(named("chain:2"), true, 6));
  CHECK_FALSE(certificate(named("rightzero:2"), false, 6));
  auto dual_c2 = certificate(named("cyclic:2"), true, 6);
  REQUIRE(dual_c2);
  CHECK(dual_c2->all_distinct);
}

TEST_CASE("closure isomorphism") {
  auto chain   = closure(dual_gens("chain:2"));
  auto product = closure(dual_gens("chain:2*leftzero:2"));
  CHECK(closure_isomorphic(chain, product));
  CHECK(closure_isomorphic(closure(dual_gens("leftzero:2")), closure(dual_gens("trivial"))));
  CHECK_FALSE(closure_isomorphic(chain, closure(dual_gens("leftzero:2"))));
  CHECK_THROWS_AS(
      closure_isomorphic(chain, closure(dual_gens("cyclic:2"), elements(10))), NotFinite);

  auto c3 = closure(cayley_gens("chain:3"));
  CHECK(closure_isomorphic(c3, c3));
  // equal sizes do not imply isomorphic tables
  auto n3 = closure(cayley_gens("null:3"));
  if (n3.finite().size() == c3.finite().size()) {
    CHECK_FALSE(closure_isomorphic(c3, n3));
  }
}

TEST_CASE("verify_eq1") {
  CHECK(verify_eq1(named("chain:2"), 100, 7).passed);
  CHECK(verify_eq1(named("rightzero:3"), 100, 7).passed);
  auto r = verify_eq1(named("cyclic:3"), 50, 1);
  CHECK(r.passed);
  CHECK(r.trials == 50);
  CHECK_FALSE(r.failure);
  CHECK_THROWS(verify_eq1(named("chain:2"), 0, 1));
}

TEST_CASE("free_check agrees with plain canonical-form enumeration") {
  // Oracle: build every word of each length with compose_all and count
  // distinct canonical keys.
  constexpr std::size_t kLength = 4;
  for (auto const& s : machina::testing::iso_catalog(3)) {
    for (bool dual : {false, true}) {
      auto gens = generators(dual ? dual_cayley(s) : cayley(s));
      std::size_t const g = gens.size();
      Counts              per_length;
      std::set<std::string> all_keys;
      std::size_t         words_seen = 0;
      Word                w;
      for (std::size_t len = 1; len <= kLength; ++len) {
        std::set<std::string> keys;
        w.assign(len, 0);
        while (true) {
          std::vector<PointedTransducer> factors;
          for (auto k : w) {
            factors.push_back(gens[k]);
          }
          keys.insert(canonical_key(compose_all(factors)));
          std::size_t i = len;
          while (i > 0 && w[i - 1] == g - 1) {
            w[--i] = 0;
          }
          if (i == 0) {
            break;
          }
          ++w[i - 1];
        }
        per_length.push_back(keys.size());
        words_seen += keys.size();
        all_keys.insert(keys.begin(), keys.end());
      }
      auto r = free_check(gens, kLength);
      CHECK(r.distinct_counts == per_length);
      CHECK(r.distinct_total == all_keys.size());
      bool free = true;
      for (std::size_t i = 0, p = g; i < kLength; ++i, p *= g) {
        free = free && per_length[i] == p;
      }
      CHECK(r.is_free_up_to_l == free);
      CHECK(r.all_distinct == (free && all_keys.size() == words_seen));
    }
  }
}
