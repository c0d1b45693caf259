#include "completion_util.hpp"

namespace doctrina {

namespace {

std::optional<int> try_pairing(const FragmentCategory& C, int f, int g) {
  try {
    return C.pairing(f, g);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::fragment_incomplete) return std::nullopt;
    throw;
  }
}

}  // namespace

bool extensionally_equal(const Doctrine& P, int f, int g) {
  const auto& C = *P.base;
  if (f == g) return true;
  const int a = C.src(f), b = C.dst(f);
  if (C.src(g) != a || C.dst(g) != b) return false;
  if (P.covered(b)) {
    if (auto p = try_pairing(C, f, g)) return P.re(*p, P.delta_of(b)) == P.top(a);
    // <f, g> is outside the fragment: compare through f x g instead
    if (P.covered(a)) {
      auto sa = C.product(a, a);
      auto u = try_pairing(C, C.compose(f, sa->pr1), C.compose(g, sa->pr2));
      if (u) return P.fiber(sa->object).leq(P.delta_of(a), P.re(*u, P.delta_of(b)));
    }
    return false;
  }
  // no equality on B: f and g must agree on predicates and under every
  // observation into an object that has one
  if (P.reindex[static_cast<std::size_t>(f)] != P.reindex[static_cast<std::size_t>(g)]) return false;
  bool observed = false;
  for (int m : C.outgoing(b)) {
    if (!P.covered(C.dst(m))) continue;
    int mf = C.try_compose(m, f), mg = C.try_compose(m, g);
    if (mf < 0 || mg < 0) continue;
    observed = true;
    if (!extensionally_equal(P, mf, mg)) return false;
  }
  return observed;
}

Completion ext_collapse(const DoctrinePtr& Pp, const CompletionOptions& opt) {
  const Doctrine& P = *Pp;
  const auto& C = *P.base;
  detail::require_elementary(P, opt);
  detail::Assembly as(CompletionKind::extensional, Pp, opt);
  for (int a = 0; a < C.object_count(); ++a) as.add_object(a, -1, C.object_name(a));
  as.guard_fibers(P.total_fiber_elements());

  // classes inside each hom-set; the representative is the smallest member
  std::vector<int> rep(static_cast<std::size_t>(C.morphism_count()), -1);
  for (int a = 0; a < C.object_count(); ++a)
    for (int b = 0; b < C.object_count(); ++b) {
      const auto& H = C.hom(a, b);
      std::vector<int> reps;
      for (int f : H) {
        for (int r : reps)
          if (extensionally_equal(P, r, f)) {
            rep[static_cast<std::size_t>(f)] = r;
            break;
          }
        if (rep[static_cast<std::size_t>(f)] < 0) {
          rep[static_cast<std::size_t>(f)] = f;
          reps.push_back(f);
        }
      }
      for (int f : H)
        for (int g : H)
          if (extensionally_equal(P, f, g) != (rep[static_cast<std::size_t>(f)] == rep[static_cast<std::size_t>(g)]))
            fail(ErrorCode::integrity, "extensional equality is not an equivalence at " +
                                           C.morphism_name(f) + ", " + C.morphism_name(g));
    }
  auto& cls = as.index().class_of;
  cls.assign(rep.size(), -1);
  for (int f = 0; f < C.morphism_count(); ++f)
    if (rep[static_cast<std::size_t>(f)] == f) cls[static_cast<std::size_t>(f)] = as.add_morphism(f, C.src(f), C.dst(f));
  for (int f = 0; f < C.morphism_count(); ++f)
    cls[static_cast<std::size_t>(f)] = cls[static_cast<std::size_t>(rep[static_cast<std::size_t>(f)])];

  for (int f = 0; f < C.morphism_count(); ++f) {
    const int r = rep[static_cast<std::size_t>(f)];
    if (r == f) continue;
    if (P.reindex[static_cast<std::size_t>(f)] != P.reindex[static_cast<std::size_t>(r)])
      fail(ErrorCode::integrity, "extensionally equal " + C.morphism_name(r) + " and " +
                                     C.morphism_name(f) + " reindex differently");
    auto same = [&](int x, int y) {
      return x < 0 || y < 0 || cls[static_cast<std::size_t>(x)] == cls[static_cast<std::size_t>(y)];
    };
    for (int g : C.outgoing(C.dst(f)))
      if (!same(C.try_compose(g, f), C.try_compose(g, r)))
        fail(ErrorCode::integrity, "extensional equality is not compatible with composition at " +
                                       C.morphism_name(g) + " after " + C.morphism_name(f));
    for (int h : C.incoming(C.src(f)))
      if (!same(C.try_compose(f, h), C.try_compose(r, h)))
        fail(ErrorCode::integrity, "extensional equality is not compatible with composition at " +
                                       C.morphism_name(f) + " after " + C.morphism_name(h));
  }

  for (const auto& d : C.products())
    as.declare_product(d.left, d.right,
                       {d.product.object, cls[static_cast<std::size_t>(d.product.pr1)],
                        cls[static_cast<std::size_t>(d.product.pr2)]});
  if (auto t = C.terminal()) as.set_terminal(*t);
  CategoryPtr X = as.build_base();

  auto D = std::make_shared<Doctrine>();
  D->name = "ext(" + P.name + ")";
  D->base = X;
  D->generated_by = "ext_collapse";
  D->metadata = {{"completion", "extensional"}, {"input", P.name}};
  D->fibers = P.fibers;
  for (int m = 0; m < X->morphism_count(); ++m)
    D->reindex.push_back(P.reindex[static_cast<std::size_t>(as.index().morphism_base[static_cast<std::size_t>(m)])]);
  D->delta = P.delta;
  if (P.has_comprehensions()) {
    D->comprehension = P.comprehension;
    for (auto& row : D->comprehension)
      for (int& c : row)
        if (c >= 0) c = cls[static_cast<std::size_t>(c)];
  }

  DoctrineMap unit;
  unit.source = Pp;
  unit.target = D;
  unit.functor.source = P.base;
  unit.functor.target = X;
  for (int a = 0; a < C.object_count(); ++a) {
    unit.functor.objects.push_back(a);
    std::vector<int> id(static_cast<std::size_t>(P.fiber(a).size()));
    for (int x = 0; x < P.fiber(a).size(); ++x) id[static_cast<std::size_t>(x)] = x;
    unit.fibers.push_back(std::move(id));
  }
  unit.functor.morphisms = cls;
  return as.finish(D, std::move(unit));
}

}  // namespace doctrina
