#include <utility>

#include "doctest.h"
#include "doctrina/fixtures.hpp"
#include "doctrina/monads.hpp"
#include "support.hpp"

using namespace doctrina;
using namespace testing_support;

namespace {

constexpr MonadKind single[] = {MonadKind::c, MonadKind::d, MonadKind::q};

bool law_ok(const VerificationReport& r, const std::string& law) {
  auto e = r.find(law);
  return !e.empty() && e.front()->status == Status::pass;
}

}  // namespace

TEST_CASE("monad laws on small fixtures") {
  for (const char* name : {"trivial", "thin_chain3", "sub_finset_small", "nonextensional"})
    for (auto k : single) {
      CAPTURE(name);
      CAPTURE(to_string(k));
      auto r = verify_monad_laws(k, fixture(name));
      CHECK_MESSAGE(r.ok(), r.first_failure());
      CHECK(law_ok(r, "monad.associativity"));
      CHECK(law_ok(r, "monad.left-unit"));
      CHECK(law_ok(r, "monad.right-unit"));
    }
}

TEST_CASE("completions of the trivial doctrine are trivial") {
  auto T = fixture("trivial");
  MonadContext ctx;
  for (auto k : single) CHECK(is_isomorphism(ctx.eta(k, T)));
}

TEST_CASE("a corrupted multiplication is caught") {
  MonadContext ctx;
  auto m = monad_at(ctx, MonadKind::c, sub_finset(2));
  bool done = false;
  for (auto& row : m.mu.fibers)
    for (std::size_t i = 1; !done && i < row.size(); ++i)
      if (row[0] != row[i]) {
        std::swap(row[0], row[i]);
        done = true;
      }
  REQUIRE(done);
  auto r = verify_monad_laws(m);
  CHECK_FALSE(r.ok());
  CHECK(has_witnesses(r));
  CHECK_FALSE(law_ok(r, "monad.left-unit"));
}

TEST_CASE("canonical algebras and the structure they determine") {
  auto P = sub_finset(2);
  MonadContext ctx;
  for (auto k : single) {
    CAPTURE(to_string(k));
    auto a = algebra_from_structure(ctx, k, P);
    CHECK(verify_algebra(ctx, a).ok());
    Doctrine S = structure_from_algebra(ctx, a);
    CHECK(S.comprehension == P->comprehension);
    if (k == MonadKind::q) CHECK(S.quotient == P->quotient);
  }
  auto T = fixture("trivial");
  for (auto k : single) {
    Doctrine S = structure_from_algebra(ctx, algebra_from_structure(ctx, k, T));
    CHECK(same_structure(S, *T));
  }
  CHECK_THROWS_AS(algebra_from_structure(ctx, MonadKind::d, nonextensional()), Error);
  CHECK_THROWS_AS(algebra_from_structure(ctx, MonadKind::c, fixture("weak_demo")), Error);
}

TEST_CASE("faulty actions are rejected") {
  auto P = sub_finset(2);
  MonadContext ctx;
  for (auto k : {MonadKind::c, MonadKind::q})
    for (auto f : {Fault::object, Fault::fiber}) {
      auto bad = inject_fault(algebra_from_structure(ctx, k, P), f);
      auto r = verify_algebra(ctx, bad);
      CHECK_FALSE(r.ok());
      CHECK(has_witnesses(r));
      CHECK_FALSE(law_ok(r, "algebra.unit"));
      try {
        structure_from_algebra(ctx, bad);
        FAIL("expected a precondition error");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::precondition);
      }
    }
}

TEST_CASE("mediating cells are coherent") {
  auto P = sub_finset(2);
  MonadContext ctx;
  const auto& c1 = ctx.completion(CompletionKind::comprehension, P);
  const auto& c2 = ctx.completion(CompletionKind::comprehension, c1.output);
  for (const auto& F : {identity_map(P), swap_conjugation(P)}) {
    auto r = verify_colax_coherence(ctx, MonadKind::c, F, mediating_tau(c1, c1, F));
    CHECK_MESSAGE(r.ok(), r.first_failure());
  }
  auto tau = mediating_tau(c1, c2, c1.unit);
  auto rt = verify_colax_coherence(ctx, MonadKind::c, c1.unit, tau);
  CHECK_MESSAGE(rt.ok(), rt.first_failure());

  const auto& q1 = ctx.completion(CompletionKind::quotient, P);
  const auto& q2 = ctx.completion(CompletionKind::quotient, q1.output);
  auto omega = mediating_omega(q1, q2, q1.unit);
  auto ro = verify_lax_coherence(ctx, MonadKind::q, q1.unit, omega);
  CHECK_MESSAGE(ro.ok(), ro.first_failure());
  CHECK_THROWS_AS(verify_lax_coherence(ctx, MonadKind::c, q1.unit, omega), Error);

  // a cell that is not the identity at a unit object breaks the unit pasting
  auto sw = swap_conjugation(P);
  auto bent = mediating_tau(c1, c1, sw);
  int two = ob(*P, "[2]");
  int at = c1.unit.functor.ob(two);
  auto hom = P->base->hom(two, two);
  for (int m : hom)
    if (!P->base->is_identity(m)) bent.components[static_cast<std::size_t>(at)] = m;
  auto rb = verify_colax_coherence(ctx, MonadKind::c, sw, bent);
  CHECK_FALSE(rb.ok());
}

TEST_CASE("2-cells making a 1-cell a morphism of algebras are unique") {
  auto P = sub_finset(2);
  MonadContext ctx;
  for (auto k : single) {
    CAPTURE(to_string(k));
    CHECK(two_cell_uniqueness(ctx, k, identity_map(P)) == 1);
    CHECK(two_cell_uniqueness(ctx, k, swap_conjugation(P)) == 1);
  }
  const auto& c1 = ctx.completion(CompletionKind::comprehension, P);
  CHECK(two_cell_uniqueness(ctx, MonadKind::c, c1.unit) == 1);
  const auto& q1 = ctx.completion(CompletionKind::quotient, P);
  CHECK(two_cell_uniqueness(ctx, MonadKind::q, q1.unit) == 1);

  UniquenessOptions tiny;
  tiny.max_nodes = 0;
  CHECK_THROWS_AS(two_cell_uniqueness(ctx, MonadKind::c, c1.unit, tiny), Error);
}

TEST_CASE("unit naturality") {
  auto P = sub_finset(2);
  MonadContext ctx;
  for (auto k : single) {
    auto r = verify_unit_naturality(ctx, k, swap_conjugation(P));
    CHECK_MESSAGE(r.ok(), r.first_failure());
    CHECK(r.skips() == 0);
  }
}

TEST_CASE("eta_d is invertible exactly on comprehensive diagonals") {
  MonadContext ctx;
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    auto P = fixture(name);
    VerificationReport r;
    check_comprehensive_diagonals(*P, r);
    CHECK(is_isomorphism(ctx.eta(MonadKind::d, P)) == r.ok());
  }
  CHECK_FALSE(is_isomorphism(ctx.eta(MonadKind::d, nonextensional())));
}

TEST_CASE("distributive law") {
  for (const char* name : {"trivial", "sub_finset_small"}) {
    CAPTURE(name);
    MonadContext ctx;
    auto r = verify_distributive_law(ctx, fixture(name));
    CHECK_MESSAGE(r.ok(), r.first_failure());
    for (auto law : {"distributive.unit-c", "distributive.unit-q", "distributive.mult-c",
                     "distributive.mult-q", "distributive.comprehensions", "distributive.quotients"})
      CHECK(law_ok(r, law));
  }
  MonadContext ctx;
  auto T = fixture("trivial");
  CHECK(is_isomorphism(ctx.delta(T)));
  auto r = verify_monad_laws(MonadKind::qc, T);
  CHECK_MESSAGE(r.ok(), r.first_failure());
}

TEST_CASE("the extensional collapse and the other structures") {
  auto r = no_lift_witness({fixture("trivial"), sub_finset(2), nonextensional()});
  CHECK(r.failures() == 0);
  for (const auto* e : r.find("no-lift")) {
    if (e->anchor.rfind("trivial", 0) == 0 || e->anchor.rfind("sub_finset", 0) == 0)
      CHECK(e->status == Status::skipped);
  }
}
