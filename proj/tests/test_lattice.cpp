#include "doctest.h"
#include "doctrina/error.hpp"
#include "doctrina/lattice.hpp"

using namespace doctrina;

namespace {

// Powerset of an n-point set; element i is the subset with bitmask i.
InfSemilattice powerset(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < (1 << n); ++s) {
    names.push_back("s" + std::to_string(s));
    for (int t = 0; t < (1 << n); ++t)
      if ((s & t) == s) pairs.emplace_back(s, t);
  }
  return InfSemilattice::from_order(names, pairs);
}

}  // namespace

TEST_CASE("powerset meets are intersections") {
  auto L = powerset(2);
  CHECK(L.size() == 4);
  CHECK(L.top() == 3);
  CHECK(L.meet(1, 2) == 0);  // {0} and {1}
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(L.meet(a, b) == (a & b));
      CHECK(L.leq(a, b) == ((a & b) == a));
    }
  VerificationReport r;
  verify_semilattice(L, r);
  CHECK(r.ok());
}

TEST_CASE("semilattice axioms on the powerset of three points") {
  auto L = powerset(3);
  for (int a = 0; a < L.size(); ++a)
    for (int b = 0; b < L.size(); ++b) {
      CHECK(L.meet(a, b) == L.meet(b, a));
      CHECK(L.leq(a, b) == (L.meet(a, b) == a));
      for (int c = 0; c < L.size(); ++c)
        CHECK(L.meet(L.meet(a, b), c) == L.meet(a, L.meet(b, c)));
    }
  for (int a = 0; a < L.size(); ++a) CHECK(L.meet(a, a) == a);
}

TEST_CASE("downsets") {
  auto L = powerset(2);
  auto whole = downset(L, L.top());
  CHECK(whole.lattice.size() == 4);
  auto d = downset(L, 1);
  CHECK(d.lattice.size() == 2);
  CHECK(d.to_parent == std::vector<int>{0, 1});
  CHECK(d.lattice.top() == 1);
  CHECK(d.from_parent[2] == -1);
}

TEST_CASE("unknown element is a lookup error") {
  auto L = powerset(1);
  CHECK_THROWS_AS(L.meet(0, 7), Error);
  try {
    L.leq(5, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::lookup);
  }
}

TEST_CASE("from_order rejects cycles and missing meets") {
  CHECK_THROWS_AS(InfSemilattice::from_order({"a", "b"}, {{0, 1}, {1, 0}}), Error);
  // two maximal elements: no top
  CHECK_THROWS_AS(InfSemilattice::from_order({"a", "b"}, {}), Error);
  // a, b below both c, d, and c, d below top e: meet(c, d) does not exist
  CHECK_THROWS_AS(InfSemilattice::from_order(
                      {"a", "b", "c", "d", "e"},
                      {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {3, 4}}),
                  Error);
}

TEST_CASE("a corrupted meet table is reported") {
  auto L = powerset(2);
  std::vector<char> leq;
  std::vector<int> meet;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      leq.push_back(L.leq(a, b));
      meet.push_back(L.meet(a, b));
    }
  meet[1 * 4 + 2] = 1;
  InfSemilattice bad(L.names(), leq, 3, meet);
  VerificationReport r;
  verify_semilattice(bad, r);
  CHECK_FALSE(r.ok());
  CHECK(r.first_failure().find("s1") != std::string::npos);
}

TEST_CASE("meet maps") {
  auto L = std::make_shared<const InfSemilattice>(powerset(2));
  // the map used for downset reindexing: a |-> a & 1 into the downset of {0}
  auto D = std::make_shared<const InfSemilattice>(downset(*L, 1).lattice);
  MeetMap restrict{L, D, {0, 1, 0, 1}};
  VerificationReport ok;
  verify_meet_map(restrict, ok);
  CHECK(ok.ok());

  MeetMap drops_top{L, L, {0, 1, 2, 2}};
  VerificationReport r;
  verify_meet_map(drops_top, r);
  CHECK_FALSE(r.ok());
  auto fails = r.find("meetmap.top");
  REQUIRE(fails.size() == 1);
  CHECK(fails[0]->status == Status::fail);
  CHECK(fails[0]->witnesses.back() == "s3");

  // composites of meet maps stay meet maps
  MeetMap swap{L, L, {0, 2, 1, 3}};
  VerificationReport c;
  verify_meet_map(compose(restrict, swap), c);
  verify_meet_map(compose(swap, swap), c);
  CHECK(c.ok());
  CHECK(compose(swap, swap).map == identity_map(L).map);

  auto inv = find_inverse(swap);
  REQUIRE(inv);
  CHECK(inv->map == swap.map);
  CHECK_FALSE(find_inverse(restrict));
}

TEST_CASE("covers of the powerset") {
  auto L = powerset(2);
  auto cv = L.covers();
  CHECK(cv == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}
