#include <algorithm>
#include <random>

#include "doctest.h"
#include "fdplan/catalog.hpp"
#include "fdplan/core.hpp"
#include "fdplan/error.hpp"
#include "generators.hpp"

using namespace fdplan;

namespace {

// Every tuple over `objects` by odometer, filtered to injective class-respecting ones.
std::vector<std::vector<ObjectRef>> brute_bindings(const ActionSchema& s,
                                                   const std::vector<ObjectRef>& objects) {
  std::vector<std::vector<ObjectRef>> out;
  const std::size_t k = s.parameters.size();
  if (objects.empty() && k > 0) return out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    bool good = true;
    for (std::size_t i = 0; i < k && good; ++i) {
      good = objects[idx[i]].entity_class == s.parameters[i].entity_class;
      for (std::size_t j = 0; j < i && good; ++j) good = idx[i] != idx[j];
    }
    if (good) {
      std::vector<ObjectRef> b;
      for (std::size_t i : idx) b.push_back(objects[i]);
      out.push_back(b);
    }
    std::size_t pos = k;
    while (pos > 0 && ++idx[pos - 1] == objects.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

const ActionSchema& schema(const char* name) {
  static const FunctionCatalog c = built_in_catalog();
  return *c.find(name);
}

const std::vector<ObjectRef> kCoffeeObjects{{"water", EntityClass::material},
                                            {"powder", EntityClass::material},
                                            {"electric", EntityClass::energy}};

}  // namespace

TEST_CASE("entity classes and identifiers") {
  for (EntityClass c : kEntityClasses) CHECK(parse_entity_class(to_string(c)) == c);
  CHECK_FALSE(parse_entity_class("fluid"));
  CHECK(is_identifier("added-energy"));
  CHECK(is_identifier("p_2"));
  CHECK_FALSE(is_identifier("2p"));
  CHECK_FALSE(is_identifier(""));
  CHECK(is_variable("?x"));
  CHECK_FALSE(is_variable("x"));
  CHECK(parse_semantics("consume") == Semantics::consume);
  CHECK_FALSE(parse_semantics("strict"));
}

TEST_CASE("literal rendering") {
  CHECK(pos("stored", "water").str() == "(stored water)");
  CHECK(neg("stored", "water").str() == "(not (stored water))");
}

TEST_CASE("state satisfaction is closed-world") {
  const State s{{"stored", "water"}};
  CHECK(s.satisfies(pos("stored", "water")));
  CHECK(s.satisfies(neg("guided", "water")));
  CHECK_FALSE(s.satisfies(neg("stored", "water")));
  const std::vector<Literal> conj{pos("stored", "water"), pos("guided", "water")};
  CHECK(s.first_unsatisfied(conj) == pos("guided", "water"));
}

TEST_CASE("schema validation") {
  ActionSchema bad{"bad", {{"?x", EntityClass::material}}, {pos("stored", "?y")}, {{"guided", "?x"}}, {}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  ActionSchema dup{"dup", {{"?x", EntityClass::material}, {"?x", EntityClass::energy}}, {}, {{"guided", "?x"}}, {}};
  CHECK_THROWS_AS(dup.validate(), ValidationError);
  ActionSchema overlap{"o", {{"?x", EntityClass::material}}, {}, {{"guided", "?x"}}, {{"guided", "?x"}}};
  CHECK_THROWS_AS(overlap.validate(), ValidationError);
  CHECK_NOTHROW(schema("guide-material").validate());
}

TEST_CASE("ground guide-material over the coffee objects") {
  const auto g = ground(schema("guide-material"), kCoffeeObjects);
  REQUIRE(g.size() == 2);
  CHECK(g[0].label() == "guide-material(water)");
  CHECK(g[1].label() == "guide-material(powder)");
  CHECK(g[0].precondition == std::vector<Literal>{pos("stored", "water")});
  CHECK(g[0].add == std::vector<Atom>{{"guided", "water"}});
}

TEST_CASE("ground add-energy-to-material binds one class each") {
  const auto g = ground(schema("add-energy-to-material"), kCoffeeObjects);
  REQUIRE(g.size() == 2);
  CHECK(g[0].label() == "add-energy-to-material(electric, water)");
  CHECK(g[1].label() == "add-energy-to-material(electric, powder)");
}

TEST_CASE("ground equal links are injective") {
  const auto g = ground(schema("sum-link-equal-material"), kCoffeeObjects);
  REQUIRE(g.size() == 2);
  CHECK(g[0].label() == "sum-link-equal-material(water, powder)");
  CHECK(g[1].label() == "sum-link-equal-material(powder, water)");
}

TEST_CASE("ground matches a brute-force enumeration") {
  const FunctionCatalog c = built_in_catalog();
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    std::vector<ObjectRef> objects;
    const int n = std::uniform_int_distribution<int>(0, 5)(rng);
    for (int i = 0; i < n; ++i) {
      objects.push_back({"o" + std::to_string(i), kEntityClasses[std::uniform_int_distribution<int>(0, 2)(rng)]});
    }
    for (const ActionSchema& s : c.schemas) {
      const auto got = ground(s, objects);
      const auto expected = brute_bindings(s, objects);
      REQUIRE(got.size() == expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].arguments == expected[i]);
    }
  }
}

TEST_CASE("instantiate rejects class and arity mismatches") {
  const std::vector<ObjectRef> one{{"electric", EntityClass::energy}};
  CHECK_THROWS_AS(instantiate(schema("guide-material"), one), ValidationError);
  CHECK_THROWS_AS(instantiate(schema("add-energy-to-material"), one), ValidationError);
}

TEST_CASE("apply under both semantics") {
  const GroundAction guide = ground(schema("guide-material"), kCoffeeObjects)[0];
  const State init{{"stored", "water"}};
  CHECK(applicable(init, guide));
  const State mono = apply(init, guide, Semantics::monotone);
  CHECK(mono == State{{"stored", "water"}, {"guided", "water"}});
  const State cons = apply(init, guide, Semantics::consume);
  CHECK(cons == State{{"guided", "water"}});
  CHECK_THROWS_AS(apply(State{}, guide, Semantics::monotone), NotApplicable);
  CHECK_FALSE(applicable(State{}, guide));
}

TEST_CASE("property: monotone application only grows the state") {
  const FunctionCatalog c = built_in_catalog();
  std::mt19937 rng(11);
  for (int round = 0; round < 100; ++round) {
    const auto w = testing::random_walk_problem(rng, c);
    State s = w.problem.init;
    for (const GroundAction& a : w.walk) {
      const State next = apply(s, a, Semantics::monotone);
      CHECK(std::includes(next.begin(), next.end(), s.begin(), s.end()));
      for (const Atom& x : a.add) CHECK(next.contains(x));
      s = next;
    }
  }
}

TEST_CASE("property: effective deletes never overlap adds") {
  std::mt19937 rng(5);
  for (int round = 0; round < 200; ++round) {
    const FunctionCatalog c = testing::random_catalog(rng);
    const std::vector<ObjectRef> objects{{"m", EntityClass::material},
                                         {"e", EntityClass::energy},
                                         {"i", EntityClass::information},
                                         {"n", EntityClass::material}};
    for (const GroundAction& a : ground_all(c, objects)) {
      for (Semantics sem : {Semantics::monotone, Semantics::consume}) {
        for (const Atom& d : a.deletes(sem)) {
          CHECK(std::find(a.add.begin(), a.add.end(), d) == a.add.end());
        }
      }
      CHECK(a.deletes(Semantics::monotone).empty());
    }
  }
}

TEST_CASE("problem validation") {
  Problem p;
  p.objects = {{"water", EntityClass::material}, {"water", EntityClass::energy}};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.objects = {{"water", EntityClass::material}};
  p.goal = {pos("guided", "milk")};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.goal = {pos("guided", "water")};
  CHECK_NOTHROW(p.validate());
}
