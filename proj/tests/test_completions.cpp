#include <set>
#include <utility>

#include "doctest.h"
#include "doctrina/completions.hpp"
#include "doctrina/fixtures.hpp"
#include "support.hpp"

using namespace doctrina;
using namespace testing_support;

namespace {

int gob(const Completion& c, const std::string& name) {
  auto o = c.output->base->find_object(name);
  REQUIRE_MESSAGE(o, name);
  return *o;
}

bool checks_out(const DoctrineMap& f) {
  VerificationReport r;
  verify_cell1(f, r);
  if (!r.ok()) MESSAGE(r.first_failure());
  return r.ok();
}

// the trivial doctrine over sub_finset_2 base with the swap conjugation
DoctrineMap swap_on(const DoctrinePtr& N) {
  auto sw = swap_conjugation(sub_finset(2));
  DoctrineMap m;
  m.source = m.target = N;
  m.functor = {N->base, N->base, sw.functor.objects, sw.functor.morphisms};
  for (int a = 0; a < N->base->object_count(); ++a) m.fibers.push_back({0});
  return m;
}

}  // namespace

TEST_CASE("comprehension completion of the trivial doctrine") {
  auto T = fixture("trivial");
  auto c = comp_completion(T);
  CHECK(c.output->base->object_count() == T->base->object_count());
  for (int o = 0; o < c.output->base->object_count(); ++o) CHECK(c.output->fiber(o).size() == 1);
}

TEST_CASE("comprehension completion of subsets") {
  auto P = sub_finset(2);
  auto c = comp_completion(P);
  int o = gob(c, "([2],{0})");
  CHECK(c.output->fiber(o).names() == std::vector<std::string>{"{}", "{0}"});

  // equality on ([2],{0}) against pairs of points
  std::set<std::pair<int, int>> diag, box;
  for (int i = 0; i < 2; ++i) diag.insert({i, i});
  box.insert({0, 0});
  std::string expect = "{";
  for (auto p : diag)
    if (box.count(p)) expect += std::to_string(p.first) + std::to_string(p.second);
  expect += "}";
  int sq = c.output->base->product(o, o)->object;
  CHECK(c.output->fiber(sq).name(c.output->delta[o]) == expect);

  VerificationReport r;
  verify_doctrine(*c.output, r);
  verify_elementary(*c.output, r);
  check_full_comprehensions(*c.output, r);
  verify_cell1(c.unit, r);
  CHECK_MESSAGE(r.ok(), r.first_failure());
}

TEST_CASE("comprehension counit and triangles") {
  auto P = sub_finset(2);
  auto c1 = comp_completion(P);
  auto J = counit(c1);
  CHECK(P->base->object_name(J.functor.ob(gob(c1, "([2],{0})"))) == "[1]");
  int two = ob(*P, "[2]");
  int top = c1.object_of(two, P->top(two));
  CHECK(J.functor.ob(top) == two);
  CHECK(checks_out(J));
  CHECK(preserves_comprehensions(J));
  CHECK(compose(J, c1.unit) == identity_map(P));
  auto c2 = comp_completion(c1.output);
  CHECK(compose(counit(c2), lift1(c1, c2, c1.unit)) == identity_map(c1.output));

  CHECK_THROWS_AS(counit(comp_completion(fixture("weak_demo"))), Error);
}

TEST_CASE("comprehension lifts") {
  auto P = sub_finset(2);
  auto c1 = comp_completion(P);
  CHECK(lift1(c1, c1, identity_map(P)) == identity_map(c1.output));
  auto c2 = comp_completion(c1.output);
  auto up = lift1(c1, c2, c1.unit);
  CHECK(checks_out(up));
  CHECK(preserves_comprehensions(up));
  auto sw = swap_conjugation(P);
  auto lsw = lift1(c1, c1, sw);
  CHECK(checks_out(lsw));
  CHECK(lift1(c1, c1, compose(sw, sw)) == compose(lsw, lsw));
  auto id2 = lift2(c1, c1, identity_cell(sw));
  CHECK(is_identity_cell(id2));
  VerificationReport r;
  verify_cell2(id2, r);
  CHECK(r.ok());
}

TEST_CASE("extensional collapse") {
  auto T = fixture("trivial");
  auto x = ext_collapse(T);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(x.output->base->hom(a, b).size() <= 1);

  auto P = sub_finset(2);
  auto xp = ext_collapse(P);
  CHECK(xp.output->base->morphism_count() == P->base->morphism_count());
  CHECK(is_isomorphism(counit(xp)));
  CHECK(checks_out(counit(xp)));

  auto N = nonextensional();
  auto xn = ext_collapse(N);
  // every hom-set into an object with equality collapses to a point
  for (int f = 0; f < N->base->morphism_count(); ++f)
    for (int g : N->base->hom(N->base->src(f), N->base->dst(f)))
      CHECK((xn.morphism_of(f, -1, -1) == xn.morphism_of(g, -1, -1)) == extensionally_equal(*N, f, g));
  CHECK(xn.output->base->morphism_count() < N->base->morphism_count());
  CHECK_THROWS_AS(counit(xn), Error);
  VerificationReport r;
  check_comprehensive_diagonals(*xn.output, r);
  verify_cell1(xn.unit, r);
  CHECK_MESSAGE(r.ok(), r.first_failure());
}

TEST_CASE("extensional lifts are well defined") {
  auto N = nonextensional();
  auto xn = ext_collapse(N);
  auto F = swap_on(N);
  REQUIRE(checks_out(F));
  const auto& C = *N->base;
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int g : C.hom(C.src(f), C.dst(f)))
      if (extensionally_equal(*N, f, g))
        CHECK(extensionally_equal(*N, F.functor.mor(f), F.functor.mor(g)));
  auto L = lift1(xn, xn, F);
  CHECK(checks_out(L));
  CHECK(lift1(xn, xn, identity_map(N)) == identity_map(xn.output));

  auto T = fixture("trivial");
  auto k = identity_map(T);
  DoctrineCell theta{k, k, {}};
  for (int a = 0; a < 3; ++a) theta.components.push_back(T->base->identity(a));
  auto xt = ext_collapse(T);
  VerificationReport r;
  verify_cell2(lift2(xt, xt, theta), r);
  CHECK(r.ok());
}

TEST_CASE("quotient completion") {
  auto T = fixture("trivial");
  auto qt = quot_completion(T);
  CHECK(qt.output->base->object_count() == 3);
  for (int o = 0; o < 3; ++o) CHECK(qt.output->fiber(o).size() == 1);

  auto P = sub_finset(2);
  auto q = quot_completion(P);
  int two = ob(*P, "[2]");
  int rel_top = P->top(ob(*P, "[4]"));
  int o_top = q.object_of(two, rel_top);
  int o_eq = q.object_of(two, P->delta_of(two));
  CHECK(q.output->fiber(o_top).names() == std::vector<std::string>{"{}", "{0,1}"});
  CHECK(q.object_of(ob(*P, "[4]"), formal_equality) >= 0);

  // the quotient of the top relation on ([2], =) is the identity of [2]
  int sq = q.output->base->product(o_eq, o_eq)->object;
  int tau = q.element_of(sq, rel_top);
  int k = q.output->quotient[o_eq][tau];
  CHECK(q.base_morphism(k) == P->base->identity(two));
  CHECK(q.output->base->dst(k) == o_top);

  VerificationReport r;
  verify_doctrine(*q.output, r);
  verify_elementary(*q.output, r);
  check_quotient_properties(*q.output, r);
  verify_cell1(q.unit, r);
  CHECK_MESSAGE(r.ok(), r.first_failure());
}

TEST_CASE("quotient counit and lifts") {
  auto P = sub_finset(2);
  auto q = quot_completion(P);
  auto V = counit(q);
  int two = ob(*P, "[2]");
  CHECK(V.functor.ob(q.object_of(two, P->delta_of(two))) == two);
  CHECK(P->base->object_name(V.functor.ob(q.object_of(two, P->top(ob(*P, "[4]"))))) == "[1]");
  CHECK(checks_out(V));
  CHECK(preserves_quotients(V));
  CHECK(compose(V, q.unit) == identity_map(P));

  auto sw = swap_conjugation(P);
  auto L = lift1(q, q, sw);
  CHECK(checks_out(L));
  CHECK(preserves_quotients(L));
  int e = q.object_of(two, P->delta_of(two));
  CHECK(L.functor.ob(e) == e);
  CHECK(lift1(q, q, identity_map(P)) == identity_map(q.output));
  auto q2 = quot_completion(q.output);
  CHECK(compose(counit(q2), lift1(q, q2, q.unit)) == identity_map(q.output));
}

TEST_CASE("mediating cells") {
  auto P = sub_finset(2);
  auto c1 = comp_completion(P);
  auto c2 = comp_completion(c1.output);
  for (const auto& F : {identity_map(P), swap_conjugation(P)}) {
    auto tau = mediating_tau(c1, c1, F);
    CHECK(is_identity_cell(tau));
  }
  // the unit does not preserve comprehensions, so tau is a genuine cell
  auto tau = mediating_tau(c1, c2, c1.unit);
  VerificationReport r;
  verify_cell2(tau, r);
  CHECK_MESSAGE(r.ok(), r.first_failure());
  for (int a = 0; a < P->base->object_count(); ++a) {
    int o = c1.object_of(a, P->top(a));
    CHECK(c1.output->base->is_identity(tau.components[o]));
  }
  CHECK_FALSE(is_identity_cell(tau));

  auto q1 = quot_completion(P);
  auto q2 = quot_completion(q1.output);
  CHECK(is_identity_cell(mediating_omega(q1, q1, swap_conjugation(P))));
  auto omega = mediating_omega(q1, q2, q1.unit);
  VerificationReport ro;
  verify_cell2(omega, ro);
  CHECK_MESSAGE(ro.ok(), ro.first_failure());
  for (int a = 0; a < P->base->object_count(); ++a)
    CHECK(q1.output->base->is_identity(omega.components[q1.unit.functor.ob(a)]));
}

TEST_CASE("size guards") {
  CompletionOptions o;
  o.max_objects = 5;
  try {
    comp_completion(sub_finset(2), o);
    FAIL("expected a resource error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::resource);
  }
  o = {};
  o.max_fiber_elements = 10;
  CHECK_THROWS_AS(quot_completion(sub_finset(2), o), Error);
  Doctrine bad = *sub_finset(2);
  bad.delta[ob(bad, "[2]")] = bad.top(ob(bad, "[4]"));
  CHECK_THROWS_AS(comp_completion(std::make_shared<const Doctrine>(bad)), Error);
}
