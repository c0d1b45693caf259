#include "completion_util.hpp"

namespace doctrina {

namespace {

int unique(const std::vector<int>& v, const std::string& what) {
  if (v.size() != 1)
    fail(ErrorCode::internal, what + ": " + std::to_string(v.size()) + " candidates");
  return v[0];
}

// The chosen quotient of the relation carried by a quotient-completion object.
int chosen_quotient(const Doctrine& P, int a, int tag) {
  if (tag == formal_equality) return P.base->identity(a);
  int q = P.quotient.empty() ? -1 : P.quotient.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(tag));
  if (q < 0)
    fail(ErrorCode::structure_missing, "no chosen quotient over " + P.base->object_name(a) +
                                           " in '" + P.name + "'");
  return q;
}

DoctrineMap map_shell(const DoctrinePtr& s, const DoctrinePtr& t) {
  DoctrineMap m;
  m.source = s;
  m.target = t;
  m.functor.source = s->base;
  m.functor.target = t->base;
  return m;
}

DoctrineMap counit_comprehension(const Completion& c) {
  const Doctrine& P = *c.input;
  const Doctrine& G = *c.output;
  const auto& C = *P.base;
  if (!P.has_comprehensions())
    fail(ErrorCode::structure_missing, "'" + P.name + "' has no chosen comprehensions");
  auto J = map_shell(c.output, c.input);
  std::vector<int> comp(static_cast<std::size_t>(G.base->object_count()));
  for (int o = 0; o < G.base->object_count(); ++o) {
    const int a = c.base_object(o);
    int k = P.comprehension.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(c.tag(o)));
    if (k < 0)
      fail(ErrorCode::structure_missing, "no chosen comprehension of " +
                                             P.fiber(a).name(c.tag(o)) + " over " + C.object_name(a));
    comp[static_cast<std::size_t>(o)] = k;
    J.functor.objects.push_back(C.src(k));
    std::vector<int> row;
    for (int z : c.index->element_base[static_cast<std::size_t>(o)]) row.push_back(P.re(k, z));
    J.fibers.push_back(std::move(row));
  }
  for (int m = 0; m < G.base->morphism_count(); ++m) {
    int ks = comp[static_cast<std::size_t>(G.base->src(m))];
    int kt = comp[static_cast<std::size_t>(G.base->dst(m))];
    J.functor.morphisms.push_back(unique(
        factor_through(C, C.compose(c.base_morphism(m), ks), kt), "counit at " + G.base->morphism_name(m)));
  }
  return J;
}

DoctrineMap counit_extensional(const Completion& c) {
  const Doctrine& P = *c.input;
  const auto& C = *P.base;
  for (int f = 0; f < C.morphism_count(); ++f)
    if (c.base_morphism(c.index->class_of[static_cast<std::size_t>(f)]) != f)
      fail(ErrorCode::structure_missing,
           "'" + P.name + "' identifies " + C.morphism_name(f) + " with " +
               C.morphism_name(c.base_morphism(c.index->class_of[static_cast<std::size_t>(f)])) +
               ": diagonals are not comprehensive");
  auto T = map_shell(c.output, c.input);
  T.functor.objects = c.index->object_base;
  T.functor.morphisms = c.index->morphism_base;
  for (int a = 0; a < C.object_count(); ++a) {
    std::vector<int> id(static_cast<std::size_t>(P.fiber(a).size()));
    for (std::size_t x = 0; x < id.size(); ++x) id[x] = static_cast<int>(x);
    T.fibers.push_back(std::move(id));
  }
  return T;
}

DoctrineMap counit_quotient(const Completion& c) {
  const Doctrine& P = *c.input;
  const Doctrine& R = *c.output;
  const auto& C = *P.base;
  if (!P.has_quotients())
    fail(ErrorCode::structure_missing, "'" + P.name + "' has no chosen quotients");
  auto V = map_shell(c.output, c.input);
  std::vector<int> q(static_cast<std::size_t>(R.base->object_count()));
  for (int o = 0; o < R.base->object_count(); ++o) {
    const int a = c.base_object(o);
    const int k = chosen_quotient(P, a, c.tag(o));
    q[static_cast<std::size_t>(o)] = k;
    const int b = C.dst(k);
    V.functor.objects.push_back(b);
    // (P_q)^-1 on descent data
    std::vector<int> row(static_cast<std::size_t>(R.fiber(o).size()), -1);
    for (int x = 0; x < P.fiber(b).size(); ++x) {
      int d = c.element_of(o, P.re(k, x));
      if (d < 0 || row[static_cast<std::size_t>(d)] >= 0)
        fail(ErrorCode::structure_missing, "quotient " + C.morphism_name(k) + " is not of effective descent");
      row[static_cast<std::size_t>(d)] = x;
    }
    for (int v : row)
      if (v < 0)
        fail(ErrorCode::structure_missing, "quotient " + C.morphism_name(k) + " is not of effective descent");
    V.fibers.push_back(std::move(row));
  }
  for (int m = 0; m < R.base->morphism_count(); ++m) {
    int qs = q[static_cast<std::size_t>(R.base->src(m))];
    int qt = q[static_cast<std::size_t>(R.base->dst(m))];
    V.functor.morphisms.push_back(unique(cofactor_through(C, C.compose(qt, c.base_morphism(m)), qs),
                                         "counit at " + R.base->morphism_name(m)));
  }
  return V;
}

void check_ends(const Completion& from, const Completion& to, const DoctrineMap& F) {
  if (from.kind != to.kind)
    fail(ErrorCode::domain_mismatch, "lift between completions of different kinds");
  if (F.source != from.input || F.target != to.input)
    fail(ErrorCode::domain_mismatch, "1-cell does not run between the completed doctrines");
}

int lift_object(const Completion& from, const Completion& to, const DoctrineMap& F, int o,
                std::unordered_map<int, int>& comparison) {
  const int a = from.base_object(o);
  const int fa = F.functor.ob(a);
  switch (from.kind) {
    case CompletionKind::comprehension: return to.object_of(fa, F.b(a, from.tag(o)));
    case CompletionKind::extensional: return fa;
    case CompletionKind::quotient: break;
  }
  const Doctrine& R = *to.input;
  if (from.tag(o) == formal_equality) return to.unit.functor.ob(fa);
  if (!R.covered(fa)) {
    if (from.tag(o) == from.input->delta_of(a)) return to.object_of(fa, formal_equality);
    fail(ErrorCode::precondition, "no equality on " + R.base->object_name(fa) +
                                      " to carry the image of a relation");
  }
  auto it = comparison.find(a);
  if (it == comparison.end()) {
    auto inv = product_comparison_inverse(F.functor, a, a);
    if (!inv) fail(ErrorCode::internal, "product comparison is not invertible");
    it = comparison.emplace(a, *inv).first;
  }
  int sq = from.input->base->product(a, a)->object;
  return to.object_of(fa, R.re(it->second, F.b(sq, from.tag(o))));
}

}  // namespace

DoctrineMap counit(const Completion& c) {
  switch (c.kind) {
    case CompletionKind::comprehension: return counit_comprehension(c);
    case CompletionKind::extensional: return counit_extensional(c);
    case CompletionKind::quotient: return counit_quotient(c);
  }
  fail(ErrorCode::internal, "unknown completion kind");
}

DoctrineMap lift1(const Completion& from, const Completion& to, const DoctrineMap& F) {
  check_ends(from, to, F);
  const auto& S = *from.output->base;
  auto L = map_shell(from.output, to.output);
  std::unordered_map<int, int> comparison;
  for (int o = 0; o < S.object_count(); ++o) {
    int t = lift_object(from, to, F, o, comparison);
    if (t < 0) fail(ErrorCode::internal, "lift has no image for " + S.object_name(o));
    L.functor.objects.push_back(t);
    const int a = from.base_object(o);
    std::vector<int> row;
    for (int x = 0; x < from.output->fiber(o).size(); ++x) {
      int y = to.element_of(t, F.b(a, from.base_element(o, x)));
      if (y < 0) fail(ErrorCode::internal, "lifted fiber map leaves the fiber over " + to.output->base->object_name(t));
      row.push_back(y);
    }
    L.fibers.push_back(std::move(row));
  }
  for (int m = 0; m < S.morphism_count(); ++m) {
    int g = to.morphism_of(F.functor.mor(from.base_morphism(m)), L.functor.ob(S.src(m)),
                           L.functor.ob(S.dst(m)));
    if (g < 0) fail(ErrorCode::internal, "lift has no image for " + S.morphism_name(m));
    L.functor.morphisms.push_back(g);
  }
  return L;
}

DoctrineCell lift2(const Completion& from, const Completion& to, const DoctrineCell& theta) {
  DoctrineCell out;
  out.from = lift1(from, to, theta.from);
  out.to = lift1(from, to, theta.to);
  const auto& S = *from.output->base;
  for (int o = 0; o < S.object_count(); ++o) {
    int c = to.morphism_of(theta.components.at(static_cast<std::size_t>(from.base_object(o))),
                           out.from.functor.ob(o), out.to.functor.ob(o));
    if (c < 0) fail(ErrorCode::internal, "lifted 2-cell has no component at " + S.object_name(o));
    out.components.push_back(c);
  }
  return out;
}

DoctrineCell mediating_tau(const Completion& cp, const Completion& cr, const DoctrineMap& F) {
  if (cp.kind != CompletionKind::comprehension)
    fail(ErrorCode::precondition, "tau is defined for the comprehension completion");
  DoctrineCell tau;
  tau.from = compose(F, counit(cp));
  tau.to = compose(counit(cr), lift1(cp, cr, F));
  const Doctrine& P = *cp.input;
  const Doctrine& R = *cr.input;
  const auto& B = *R.base;
  for (int o = 0; o < cp.output->base->object_count(); ++o) {
    const int a = cp.base_object(o), alpha = cp.tag(o);
    int k = P.comprehension[static_cast<std::size_t>(a)][static_cast<std::size_t>(alpha)];
    int kr = R.comprehension.at(static_cast<std::size_t>(F.functor.ob(a)))
                 .at(static_cast<std::size_t>(F.b(a, alpha)));
    tau.components.push_back(unique(factor_through(B, F.functor.mor(k), kr),
                                    "tau at " + cp.output->base->object_name(o)));
  }
  return tau;
}

DoctrineCell mediating_omega(const Completion& cp, const Completion& cr, const DoctrineMap& F) {
  if (cp.kind != CompletionKind::quotient)
    fail(ErrorCode::precondition, "omega is defined for the quotient completion");
  DoctrineCell omega;
  auto lifted = lift1(cp, cr, F);
  omega.from = compose(counit(cr), lifted);
  omega.to = compose(F, counit(cp));
  const Doctrine& P = *cp.input;
  const Doctrine& R = *cr.input;
  for (int o = 0; o < cp.output->base->object_count(); ++o) {
    int q = chosen_quotient(P, cp.base_object(o), cp.tag(o));
    int t = lifted.functor.ob(o);
    int qr = chosen_quotient(R, cr.base_object(t), cr.tag(t));
    omega.components.push_back(unique(cofactor_through(*R.base, F.functor.mor(q), qr),
                                      "omega at " + cp.output->base->object_name(o)));
  }
  return omega;
}

}  // namespace doctrina
