#include "doctrina/monads.hpp"

namespace doctrina {

std::string_view to_string(MonadKind k) {
  switch (k) {
    case MonadKind::c: return "c";
    case MonadKind::d: return "d";
    case MonadKind::q: return "q";
    case MonadKind::qc: return "qc";
  }
  return "?";
}

std::optional<MonadKind> parse_monad_kind(std::string_view s) {
  for (auto k : {MonadKind::c, MonadKind::d, MonadKind::q, MonadKind::qc})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

CompletionKind completion_kind(MonadKind k) {
  switch (k) {
    case MonadKind::c: return CompletionKind::comprehension;
    case MonadKind::d: return CompletionKind::extensional;
    case MonadKind::q: return CompletionKind::quotient;
    case MonadKind::qc: break;
  }
  fail(ErrorCode::precondition, "the composite monad is not a single completion");
}

const Completion& MonadContext::completion(CompletionKind k, const DoctrinePtr& P) {
  auto key = std::make_pair(k, P.get());
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, complete(k, P, opt_)).first;
  return it->second;
}

DoctrinePtr MonadContext::T(MonadKind k, const DoctrinePtr& P) {
  if (k == MonadKind::qc) return T(MonadKind::q, T(MonadKind::c, P));
  return completion(completion_kind(k), P).output;
}

DoctrineMap MonadContext::T(MonadKind k, const DoctrineMap& F) {
  if (k == MonadKind::qc) return T(MonadKind::q, T(MonadKind::c, F));
  CompletionKind ck = completion_kind(k);
  const Completion& from = completion(ck, F.source);
  const Completion& to = completion(ck, F.target);
  return lift1(from, to, F);
}

DoctrineCell MonadContext::T(MonadKind k, const DoctrineCell& theta) {
  if (k == MonadKind::qc) return T(MonadKind::q, T(MonadKind::c, theta));
  CompletionKind ck = completion_kind(k);
  const Completion& from = completion(ck, theta.from.source);
  const Completion& to = completion(ck, theta.from.target);
  return lift2(from, to, theta);
}

DoctrineMap MonadContext::eta(MonadKind k, const DoctrinePtr& P) {
  if (k == MonadKind::qc) return compose(eta(MonadKind::q, T(MonadKind::c, P)), eta(MonadKind::c, P));
  return completion(completion_kind(k), P).unit;
}

DoctrineMap MonadContext::epsilon(MonadKind k, const DoctrinePtr& P) {
  if (k == MonadKind::qc)
    return compose(epsilon(MonadKind::q, P), T(MonadKind::q, epsilon(MonadKind::c, P)));
  return counit(completion(completion_kind(k), P));
}

DoctrineMap MonadContext::mu(MonadKind k, const DoctrinePtr& P) {
  if (k != MonadKind::qc) return epsilon(k, T(k, P));
  // T_q mu^c . mu^q T_c T_c . T_q delta T_c
  DoctrinePtr cP = T(MonadKind::c, P);
  DoctrineMap swap = T(MonadKind::q, delta(cP));
  DoctrineMap flat = mu(MonadKind::q, T(MonadKind::c, cP));
  DoctrineMap inner = T(MonadKind::q, mu(MonadKind::c, P));
  return compose(inner, compose(flat, swap));
}

DoctrineMap MonadContext::delta(const DoctrinePtr& P) {
  DoctrinePtr qcP = T(MonadKind::q, T(MonadKind::c, P));
  DoctrineMap up = T(MonadKind::c, T(MonadKind::q, eta(MonadKind::c, P)));
  return compose(epsilon(MonadKind::c, qcP), up);
}

MonadAtDoctrine monad_at(MonadContext& ctx, MonadKind k, const DoctrinePtr& P) {
  MonadAtDoctrine m;
  m.kind = k;
  m.P = P;
  m.TP = ctx.T(k, P);
  m.T2P = ctx.T(k, m.TP);
  m.T3P = ctx.T(k, m.T2P);
  m.eta = ctx.eta(k, P);
  m.eta_T = ctx.eta(k, m.TP);
  m.T_eta = ctx.T(k, m.eta);
  m.mu = ctx.mu(k, P);
  m.mu_T = ctx.mu(k, m.TP);
  m.T_mu = ctx.T(k, m.mu);
  return m;
}

namespace {

void equal_maps(VerificationReport& r, const std::string& law, const std::string& anchor,
                const DoctrineMap& a, const DoctrineMap& b) {
  std::string diff = describe_difference(a, b);
  if (diff.empty())
    r.pass(law, anchor, 1);
  else
    r.fail(law, anchor, {diff}, "1-cells differ");
}

}  // namespace

VerificationReport verify_monad_laws(const MonadAtDoctrine& m) {
  VerificationReport r;
  const std::string k(to_string(m.kind));
  {
    VerificationReport cells;
    verify_cell1(m.eta, cells);
    verify_cell1(m.mu, cells);
    r.merge_summed(cells);
  }
  equal_maps(r, "monad.associativity", "mu T(mu) = mu mu_T for T_" + k, compose(m.mu, m.T_mu),
             compose(m.mu, m.mu_T));
  equal_maps(r, "monad.left-unit", "mu eta_T = id for T_" + k, compose(m.mu, m.eta_T),
             identity_map(m.TP));
  equal_maps(r, "monad.right-unit", "mu T(eta) = id for T_" + k, compose(m.mu, m.T_eta),
             identity_map(m.TP));
  return r;
}

VerificationReport verify_monad_laws(MonadKind k, const DoctrinePtr& P, const CompletionOptions& opt) {
  MonadContext ctx(opt);
  return verify_monad_laws(monad_at(ctx, k, P));
}

bool same_components(const DoctrineMap& a, const DoctrineMap& b) {
  return a.functor.objects == b.functor.objects && a.functor.morphisms == b.functor.morphisms &&
         a.fibers == b.fibers;
}

AlgebraAtDoctrine algebra_from_structure(MonadContext& ctx, MonadKind k, const DoctrinePtr& P) {
  if (k == MonadKind::qc)
    fail(ErrorCode::precondition, "algebras are built for T_c, T_d and T_q");
  AlgebraAtDoctrine a{k, P, ctx.epsilon(k, P)};
  auto r = verify_algebra(ctx, a);
  if (!r.ok()) fail(ErrorCode::validation, "counit of '" + P->name + "' is not an algebra: " + r.first_failure());
  return a;
}

VerificationReport verify_algebra(MonadContext& ctx, const AlgebraAtDoctrine& a) {
  VerificationReport r;
  const std::string k(to_string(a.kind));
  {
    VerificationReport cells;
    verify_cell1(a.action, cells);
    r.merge_summed(cells);
  }
  equal_maps(r, "algebra.unit", "a eta = id for T_" + k, compose(a.action, ctx.eta(a.kind, a.carrier)),
             identity_map(a.carrier));
  DoctrineMap Ta;
  try {
    Ta = ctx.T(a.kind, a.action);
  } catch (const Error& e) {
    r.fail("algebra.associativity", "a mu = a T(a) for T_" + k, {e.what()}, "T(a) is undefined");
    return r;
  }
  equal_maps(r, "algebra.associativity", "a mu = a T(a) for T_" + k,
             compose(a.action, ctx.mu(a.kind, a.carrier)), compose(a.action, Ta));
  return r;
}

Doctrine structure_from_algebra(MonadContext& ctx, const AlgebraAtDoctrine& a) {
  auto r = verify_algebra(ctx, a);
  if (!r.ok()) fail(ErrorCode::precondition, "not an algebra: " + r.first_failure());
  const Doctrine& P = *a.carrier;
  const auto& C = *P.base;
  Doctrine Q = P;
  const auto ck = completion_kind(a.kind);
  const Completion& T = ctx.completion(ck, a.carrier);
  switch (a.kind) {
    case MonadKind::c:
      Q.comprehension.assign(static_cast<std::size_t>(C.object_count()), {});
      for (int A = 0; A < C.object_count(); ++A) {
        int top = T.object_of(A, P.top(A));
        for (int x = 0; x < P.fiber(A).size(); ++x)
          Q.comprehension[static_cast<std::size_t>(A)].push_back(
              a.action.functor.mor(T.morphism_of(C.identity(A), T.object_of(A, x), top)));
      }
      break;
    case MonadKind::d: {
      VerificationReport d;
      check_comprehensive_diagonals(P, d);
      if (!d.ok()) fail(ErrorCode::precondition, "diagonals are not comprehensive: " + d.first_failure());
      break;
    }
    case MonadKind::q:
      Q.quotient.assign(static_cast<std::size_t>(C.object_count()), {});
      for (int A = 0; A < C.object_count(); ++A) {
        if (!P.covered(A)) continue;
        auto& row = Q.quotient[static_cast<std::size_t>(A)];
        row.assign(static_cast<std::size_t>(P.fiber(C.product(A, A)->object).size()), -1);
        int eq = T.object_of(A, P.delta_of(A));
        for (int rho : equivalence_relations(P, A))
          row[static_cast<std::size_t>(rho)] =
              a.action.functor.mor(T.morphism_of(C.identity(A), eq, T.object_of(A, rho)));
      }
      break;
    case MonadKind::qc: fail(ErrorCode::precondition, "algebras are read for T_c, T_d and T_q");
  }
  auto Qp = std::make_shared<const Doctrine>(Q);
  CompletionOptions opt = ctx.options();
  opt.check_input = false;
  auto eps = counit(complete(ck, Qp, opt));
  if (!same_components(eps, a.action))
    fail(ErrorCode::validation, "the action is not the counit of the recovered structure");
  return Q;
}

AlgebraAtDoctrine inject_fault(const AlgebraAtDoctrine& a, Fault f) {
  AlgebraAtDoctrine out = a;
  const auto& S = *a.action.source;
  const auto& P = *a.carrier;
  const int n = P.base->object_count();
  // corrupt at the image of a unit so both axioms see it
  for (int o = 0; o < S.base->object_count(); ++o) {
    const int img = a.action.functor.ob(o);
    if (f == Fault::object && n > 1) {
      out.action.functor.objects[static_cast<std::size_t>(o)] = (img + 1) % n;
      return out;
    }
    if (f == Fault::fiber && P.fiber(img).size() > 1 && S.fiber(o).size() > 0) {
      auto& v = out.action.fibers[static_cast<std::size_t>(o)][0];
      v = (v + 1) % P.fiber(img).size();
      return out;
    }
  }
  fail(ErrorCode::precondition, "no component to corrupt in '" + P.name + "'");
}

}  // namespace doctrina
