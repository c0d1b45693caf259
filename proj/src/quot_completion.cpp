#include "completion_util.hpp"

namespace doctrina {

Completion quot_completion(const DoctrinePtr& Pp, const CompletionOptions& opt) {
  const Doctrine& P = *Pp;
  const auto& C = *P.base;
  detail::require_elementary(P, opt);
  detail::Assembly as(CompletionKind::quotient, Pp, opt);
  auto& idx = as.index();

  // (A, rho) for each equivalence relation on a covered A; (A, =) otherwise
  std::vector<LatticePtr> fibers;
  std::size_t total = 0;
  for (int a = 0; a < C.object_count(); ++a) {
    const std::string& an = C.object_name(a);
    if (!P.covered(a)) {
      as.add_object(a, formal_equality, detail::pair_name(an, "="));
      fibers.push_back(P.fibers[static_cast<std::size_t>(a)]);
      std::vector<int> id(static_cast<std::size_t>(P.fiber(a).size()));
      for (std::size_t x = 0; x < id.size(); ++x) id[x] = static_cast<int>(x);
      idx.element_base.push_back(id);
      idx.element_index.push_back(id);
      total += id.size();
      continue;
    }
    const auto& R = P.fiber(C.product(a, a)->object);
    for (int rho : equivalence_relations(P, a)) {
      as.add_object(a, rho, detail::pair_name(an, R.name(rho)));
      auto D = descent_data(P, a, rho);
      total += D.to_parent.size();
      fibers.push_back(std::make_shared<const InfSemilattice>(std::move(D.lattice)));
      idx.element_base.push_back(std::move(D.to_parent));
      idx.element_index.push_back(std::move(D.from_parent));
    }
  }
  as.guard_fibers(total);

  std::vector<std::vector<int>> over(static_cast<std::size_t>(C.object_count()));
  for (int o = 0; o < as.object_count(); ++o)
    over[static_cast<std::size_t>(idx.object_base[static_cast<std::size_t>(o)])].push_back(o);
  auto tag = [&](int o) { return idx.object_tag[static_cast<std::size_t>(o)]; };

  // f carries rho into sigma
  auto carries = [&](int f, int s, int t) {
    if (tag(s) == formal_equality) return true;
    if (tag(t) == formal_equality) return coequalizes(P, tag(s), f);
    int sq = C.product(C.src(f), C.src(f))->object;
    return P.fiber(sq).leq(tag(s), P.re(C.cross(f, f), tag(t)));
  };
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int s : over[static_cast<std::size_t>(C.src(f))])
      for (int t : over[static_cast<std::size_t>(C.dst(f))])
        if (carries(f, s, t)) as.add_morphism(f, s, t);

  auto discrete = [&](int o) {
    int a = idx.object_base[static_cast<std::size_t>(o)];
    return tag(o) == formal_equality || tag(o) == P.delta_of(a);
  };
  auto discrete_over = [&](int c) {
    return P.covered(c) ? as.object_of(c, P.delta_of(c)) : as.object_of(c, formal_equality);
  };
  for (const auto& d : C.products()) {
    const int c = d.product.object;
    for (int s : over[static_cast<std::size_t>(d.left)])
      for (int t : over[static_cast<std::size_t>(d.right)]) {
        int o = -1;
        if (P.covered(c) && tag(s) != formal_equality && tag(t) != formal_equality) {
          const auto& Q = P.fiber(C.product(c, c)->object);
          int rel = Q.meet(P.re(C.cross(d.product.pr1, d.product.pr1), tag(s)),
                           P.re(C.cross(d.product.pr2, d.product.pr2), tag(t)));
          o = as.object_of(c, rel);
        } else if (discrete(s) && discrete(t)) {
          o = discrete_over(c);
        }
        if (o < 0) continue;
        int p1 = as.morphism_of(d.product.pr1, o, s), p2 = as.morphism_of(d.product.pr2, o, t);
        if (p1 >= 0 && p2 >= 0) as.declare_product(s, t, {o, p1, p2});
      }
  }
  if (auto t = C.terminal()) as.set_terminal(discrete_over(*t));
  CategoryPtr Rq = as.build_base();

  auto D = std::make_shared<Doctrine>();
  D->name = "quot(" + P.name + ")";
  D->base = Rq;
  D->generated_by = "quot_completion";
  D->metadata = {{"completion", "quotient"}, {"input", P.name}};
  D->fibers = fibers;
  D->reindex.resize(static_cast<std::size_t>(Rq->morphism_count()));
  for (int m = 0; m < Rq->morphism_count(); ++m) {
    const int f = idx.morphism_base[static_cast<std::size_t>(m)];
    const auto& into = idx.element_index[static_cast<std::size_t>(Rq->src(m))];
    const auto& from = idx.element_base[static_cast<std::size_t>(Rq->dst(m))];
    auto& row = D->reindex[static_cast<std::size_t>(m)];
    row.resize(from.size());
    for (std::size_t z = 0; z < from.size(); ++z) {
      row[z] = into[static_cast<std::size_t>(P.re(f, from[z]))];
      if (row[z] < 0)
        fail(ErrorCode::integrity, "reindexing along " + Rq->morphism_name(m) +
                                       " leaves the descent data");
    }
  }

  const int n = Rq->object_count();
  D->delta.assign(static_cast<std::size_t>(n), -1);
  D->quotient.resize(static_cast<std::size_t>(n));
  for (int o = 0; o < n; ++o) {
    auto sq = Rq->product(o, o);
    if (!sq) continue;
    const auto& from = idx.element_base[static_cast<std::size_t>(sq->object)];
    auto& row = D->quotient[static_cast<std::size_t>(o)];
    row.assign(from.size(), -1);
    if (tag(o) == formal_equality) continue;
    const int a = idx.object_base[static_cast<std::size_t>(o)];
    const auto& into = idx.element_index[static_cast<std::size_t>(sq->object)];
    D->delta[static_cast<std::size_t>(o)] = into[static_cast<std::size_t>(tag(o))];
    // the quotient of tau on (A, rho) is id_A : (A, rho) -> (A, tau)
    const auto& Q = P.fiber(C.product(a, a)->object);
    for (std::size_t r = 0; r < from.size(); ++r) {
      if (!Q.leq(tag(o), from[r])) continue;
      int t = as.object_of(a, from[r]);
      if (t >= 0) row[r] = as.morphism_of(C.identity(a), o, t);
    }
  }

  if (P.has_comprehensions()) {
    // {alpha} over (A, rho) is {alpha} : (X, rho restricted) -> (A, rho)
    D->comprehension.resize(static_cast<std::size_t>(n));
    for (int o = 0; o < n; ++o) {
      const int a = idx.object_base[static_cast<std::size_t>(o)];
      const auto& from = idx.element_base[static_cast<std::size_t>(o)];
      auto& row = D->comprehension[static_cast<std::size_t>(o)];
      row.assign(from.size(), -1);
      for (std::size_t x = 0; x < from.size(); ++x) {
        int c = P.comprehension[static_cast<std::size_t>(a)][static_cast<std::size_t>(from[x])];
        if (c < 0) continue;
        const int xo = C.src(c);
        int s = -1;
        if (!P.covered(xo))
          s = as.object_of(xo, formal_equality);
        else if (tag(o) == formal_equality)
          s = as.object_of(xo, P.delta_of(xo));
        else
          s = as.object_of(xo, P.re(C.cross(c, c), tag(o)));
        if (s >= 0) row[x] = as.morphism_of(c, s, o);
      }
    }
  }

  DoctrineMap unit;
  unit.source = Pp;
  unit.target = D;
  unit.functor.source = P.base;
  unit.functor.target = Rq;
  for (int a = 0; a < C.object_count(); ++a) {
    int o = discrete_over(a);
    unit.functor.objects.push_back(o);
    unit.fibers.push_back(idx.element_index[static_cast<std::size_t>(o)]);
  }
  for (int f = 0; f < C.morphism_count(); ++f)
    unit.functor.morphisms.push_back(as.morphism_of(f, unit.functor.ob(C.src(f)),
                                                    unit.functor.ob(C.dst(f))));
  return as.finish(D, std::move(unit));
}

}  // namespace doctrina
