#include "doctrina/monads.hpp"

namespace doctrina {

namespace {

void equal_maps(VerificationReport& r, const std::string& law, const std::string& anchor,
                const DoctrineMap& a, const DoctrineMap& b) {
  std::string d = describe_difference(a, b);
  if (d.empty())
    r.pass(law, anchor, 1);
  else
    r.fail(law, anchor, {d}, "1-cells differ");
}

// Structure check that reports a missing choice as a failure.
template <class Check>
void structure(VerificationReport& r, const std::string& law, const Doctrine& D, Check check) {
  try {
    VerificationReport inner;
    check(D, inner);
    if (inner.ok())
      r.pass(law, D.name, 1);
    else
      r.fail(law, D.name, {inner.first_failure()});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::structure_missing) throw;
    r.fail(law, D.name, {e.what()});
  }
}

}  // namespace

VerificationReport verify_distributive_law(MonadContext& ctx, const DoctrinePtr& P) {
  using K = MonadKind;
  VerificationReport r;
  const DoctrineMap d = ctx.delta(P);
  {
    VerificationReport cells;
    verify_cell1(d, cells);
    r.merge_summed(cells);
  }
  DoctrinePtr cP = ctx.T(K::c, P), qP = ctx.T(K::q, P);

  equal_maps(r, "distributive.unit-c", "delta eta^c T_q = T_q eta^c", compose(d, ctx.eta(K::c, qP)),
             ctx.T(K::q, ctx.eta(K::c, P)));
  equal_maps(r, "distributive.unit-q", "delta T_c eta^q = eta^q T_c", compose(d, ctx.T(K::c, ctx.eta(K::q, P))),
             ctx.eta(K::q, cP));
  equal_maps(r, "distributive.mult-c", "delta mu^c T_q = T_q mu^c . delta T_c . T_c delta",
             compose(d, ctx.mu(K::c, qP)),
             compose(ctx.T(K::q, ctx.mu(K::c, P)), compose(ctx.delta(cP), ctx.T(K::c, d))));
  equal_maps(r, "distributive.mult-q", "delta T_c mu^q = mu^q T_c . T_q delta . delta T_q",
             compose(d, ctx.T(K::c, ctx.mu(K::q, P))),
             compose(ctx.mu(K::q, cP), compose(ctx.T(K::q, d), ctx.delta(qP))));

  DoctrinePtr qcP = ctx.T(K::qc, P);
  structure(r, "distributive.comprehensions", *qcP, check_full_comprehensions);
  structure(r, "distributive.quotients", *qcP, check_quotient_properties);
  return r;
}

VerificationReport no_lift_witness(const std::vector<DoctrinePtr>& candidates, const CompletionOptions& opt) {
  VerificationReport r;
  for (const auto& P : candidates) {
    VerificationReport has;
    bool comps = false, quots = false;
    try {
      check_full_comprehensions(*P, has);
      comps = has.ok();
    } catch (const Error&) {
    }
    try {
      VerificationReport hq;
      check_quotient_properties(*P, hq);
      quots = hq.ok();
    } catch (const Error&) {
    }
    if (!comps && !quots) {
      r.skip("no-lift", P->name, "no full comprehensions or quotients to lose");
      continue;
    }
    auto X = ext_collapse(P, opt);
    auto lost = [&](const std::string& law, const Doctrine& D, auto check) {
      VerificationReport inner;
      std::string why;
      try {
        check(D, inner);
        if (!inner.ok()) why = inner.first_failure();
      } catch (const Error& e) {
        why = e.what();
      }
      if (why.empty())
        r.skip(law, P->name, "the collapse keeps the structure");
      else
        r.pass(law, P->name + ": " + why, 1);
    };
    if (comps) lost("no-lift.comprehensions", choose_comprehensions(*X.output), check_full_comprehensions);
    if (quots) lost("no-lift.quotients", choose_quotients(*X.output), check_quotient_properties);
  }
  return r;
}

}  // namespace doctrina
