#include "doctest.h"
#include "doctrina/fixtures.hpp"
#include "support.hpp"

using namespace doctrina;
using namespace testing_support;

TEST_CASE("every fixture is a verified doctrine") {
  for (const auto& name : fixture_names()) {
    auto P = fixture(name);
    VerificationReport r;
    verify_doctrine(*P, r);
    CHECK_MESSAGE(r.ok(), name, ": ", r.first_failure());
  }
}

TEST_CASE("sub_finset sizes") {
  auto P = sub_finset(2);
  CHECK(P->base->object_count() == 4);
  CHECK(P->base->morphism_count() == 75);
  CHECK(P->fiber(ob(*P, "[2]")).size() == 4);
  // subsets of [4] of sizes 0, 1, 2, 4
  CHECK(P->fiber(ob(*P, "[4]")).size() == 1 + 4 + 6 + 1);
  CHECK(P->delta_of(ob(*P, "[2]")) == el(*P, "[4]", "{00,11}"));
  CHECK_FALSE(P->covered(ob(*P, "[4]")));
  auto Q = sub_finset(4);
  CHECK(Q->base->morphism_count() == 5 + 10 + 30 + 100 + 354);
  CHECK(Q->fiber(ob(*Q, "[4]")).size() == 16);
  CHECK_THROWS_AS(sub_finset(3), Error);
}

TEST_CASE("thin chain") {
  auto P = thin_base_sub(chain(3));
  CHECK(P->fiber(0).size() == 1);
  CHECK(P->fiber(2).size() == 3);
  for (int a = 0; a < 3; ++a) {
    auto sq = *P->base->product(a, a);
    CHECK(sq.object == a);
    CHECK(P->delta_of(a) == P->top(a));
    CHECK(equivalence_relations(*P, a) == std::vector<int>{P->top(a)});
  }
}

TEST_CASE("weak subobjects") {
  auto C = weak_demo_base();
  auto table = search_weak_pullbacks(*C);
  VerificationReport r;
  verify_weak_pullbacks(*C, table, r);
  auto P = weak_subobjects(C, table);
  verify_doctrine(*P, r);
  CHECK_MESSAGE(r.ok(), r.first_failure());
  // f and g factor through each other, so they name one predicate on A
  CHECK(P->fiber(ob(*P, "A")).size() == 2);
  CHECK(P->fiber(ob(*P, "X")).size() == 1);

  // over a thin base the reflected slice is the downset
  auto L = chain(3);
  auto T = thin_category(L);
  auto W = weak_subobjects(T, search_weak_pullbacks(*T), "weak_thin");
  auto D = thin_base_sub(L);
  for (int a = 0; a < 3; ++a) {
    const auto& F = W->fiber(a);
    const auto& G = D->fiber(a);
    REQUIRE(F.size() == G.size());
    for (int x = 0; x < F.size(); ++x)
      for (int y = 0; y < F.size(); ++y) CHECK(F.leq(x, y) == G.leq(x, y));
  }
  VerificationReport re;
  verify_elementary(*W, re);
  CHECK_MESSAGE(re.ok(), re.first_failure());
}

TEST_CASE("nonextensional fixture identifies nothing in its fibers") {
  auto N = nonextensional();
  CHECK(N->base->morphism_count() == 75);
  for (int a = 0; a < N->base->object_count(); ++a) CHECK(N->fiber(a).size() == 1);
}
